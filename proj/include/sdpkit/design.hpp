#pragma once

// Difference sets, their developments, and the symmetric difference property.

#include "sdpkit/bits.hpp"
#include "sdpkit/group.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdpkit {

struct DesignParams {
    std::size_t v = 0;
    std::size_t k = 0;
    std::size_t lambda = 0;

    friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

std::string to_string(const DesignParams& p);

/// A verified difference set. Only verify_difference_set creates one.
class DifferenceSet {
public:
    const GroupPtr& group() const { return group_; }
    const std::vector<Element>& members() const { return members_; }
    const DesignParams& params() const { return params_; }
    bool contains(Element a) const { return membership_[a] != 0; }

    friend bool operator==(const DifferenceSet& a, const DifferenceSet& b) {
        return a.group_->spec() == b.group_->spec() && a.members_ == b.members_;
    }

private:
    friend DifferenceSet verify_difference_set(const GroupPtr& g, std::vector<Element> members);

    GroupPtr group_;
    std::vector<Element> members_;
    std::vector<char> membership_;
    DesignParams params_;
};

/// Counts d1*d2^-1 over ordered pairs of distinct members. Throws
/// NotADifferenceSetError (with two unequal counts) if the non-identity counts
/// differ, DimensionError for out-of-range members, ParameterError if empty or
/// duplicated.
DifferenceSet verify_difference_set(const GroupPtr& g, std::vector<Element> members);

/// Coefficients of a group ring element indexed by group element.
struct SignedGroupRingElement {
    GroupPtr group;
    std::vector<std::int64_t> coeffs;

    /// |G| at the identity and zero elsewhere.
    bool is_scalar(std::int64_t value) const;
};

/// D D^(-1) for the +-1 encoding D = sum (-1)^[g in D] g.
SignedGroupRingElement signed_autocorrelation(const GroupPtr& g, const std::vector<Element>& members);
inline SignedGroupRingElement signed_autocorrelation(const DifferenceSet& d) {
    return signed_autocorrelation(d.group(), d.members());
}

/// Blocks are the left translates gD; row g has ones at the columns in gD.
/// Rows and columns follow the group's element order.
struct Development {
    DifferenceSet ds;
    BitMatrix matrix;
};

Development develop(const DifferenceSet& d);
BitMatrix development_matrix(const FiniteGroup& g, const std::vector<Element>& members);

BitMatrix complement_design(const Development& dev);

struct SdpWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    BitVector sum;  // row i + row j + row k
};

struct SdpReport {
    enum class Method { TripleScan, RankScreen };

    bool holds = false;
    std::optional<SdpWitness> witness;
    Method method = Method::TripleScan;
};

/// Scans all unordered triples of distinct rows in lexicographic order and
/// reports the first whose sum is neither a row nor a row complement.
SdpReport has_sdp(const BitMatrix& m);
inline SdpReport has_sdp(const Development& dev) { return has_sdp(dev.matrix); }

std::size_t two_rank(const Development& dev);

/// Fast necessary-condition filter: rank equals 2n+2 on 2^(2n) points. Never a
/// verdict on its own; method is RankScreen and no witness is produced.
SdpReport sdp_rank_screen(const BitMatrix& m);

/// -1/2 ((J4 - 2 I4)^(x)n - J) with J the all-ones matrix of size 4^n.
BitMatrix symplectic_matrix(std::size_t n);

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// All k-subsets that are difference sets, in lexicographic member order.
/// Throws FeasibilityError when C(v, k) exceeds kEnumerationLimit.
std::vector<DifferenceSet> enumerate_difference_sets(const GroupPtr& g, std::size_t k);

/// Parameters of a difference set in a group of order v = 4^n:
/// k = 2^(2n-1) - 2^(n-1), lambda = 2^(2n-2) - 2^(n-1).
DesignParams menon_params(std::size_t v);

/// n with v = 4^n, or nullopt.
std::optional<std::size_t> half_log2(std::size_t v);

}  // namespace sdpkit
