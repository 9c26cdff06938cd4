#pragma once

// Pipelines behind the sdpkit command line.

#include "sdpkit/catalog.hpp"
#include "sdpkit/design.hpp"
#include "sdpkit/group.hpp"
#include "sdpkit/iso.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sdpkit {

/// Every homomorphism H -> Aut(N), the development of the product set in each
/// N x|_phi H, and the classification of those developments.
struct TableResult {
    std::vector<HomomorphismToAut> homs;
    std::vector<BitMatrix> designs;  // designs[i] comes from homs[i]
    ClassificationReport classification;
    Report report;
};

/// dn lives in N, dh in H.
TableResult run_table(const DifferenceSet& dn, const DifferenceSet& dh, const ClassifyOptions& options = {});

/// Builds the report rows for a classification of labelled designs.
Report classification_report(const ClassificationReport& classification, const std::vector<BitMatrix>& designs,
                             const std::vector<std::string>& labels, std::string title);

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kFeasibility = 3;
inline constexpr int kInternal = 4;
}  // namespace exit_code

/// The command line without the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdpkit
