#pragma once

// Seed difference sets, the .ds line format, and report rendering.
//
// A .ds file holds one difference set per line:
//
//   C8xC2 | 1, x, x^2, x^5, y, x^6*y
//
// Element words use the group's primary generator names, '*' for products and
// '^' for powers. '#' starts a comment; blank lines are skipped.

#include "sdpkit/design.hpp"
#include "sdpkit/iso.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sdpkit {

enum class Provenance { Paper, Derived, User };

std::string to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

struct CatalogEntry {
    std::string name;
    std::string group_spec;
    std::vector<std::string> members;  // element words
    Provenance provenance = Provenance::User;
    bool sdp = false;  // from the load-time triple scan, never from stored text
    DifferenceSet ds;
};

/// The seed sets, each re-verified (difference set + SDP scan) on every call.
/// A failed check raises CatalogCorruptionError.
std::vector<CatalogEntry> builtin_catalog();

/// Looks up a builtin entry by name.
std::optional<CatalogEntry> find_builtin(std::string_view name);

/// Catalog text: one `name [provenance] : <ds line>` per entry. A trailing
/// `sdp=yes|no` before the colon is accepted and ignored, so stored statuses can
/// never override the live check.
std::string serialize_catalog(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> parse_catalog(std::string_view text);

/// Parses and verifies every set in a .ds text. Throws ParseError (with line and
/// column) on grammar errors, UnknownGeneratorError for stray symbols and
/// NotADifferenceSetError when a line fails verification.
std::vector<DifferenceSet> parse_ds_file(std::string_view text);
DifferenceSet parse_ds_line(std::string_view line, std::size_t line_number = 1);

/// `<group spec> | <word>, <word>, ...` for one set, without a newline.
std::string serialize_ds(const DifferenceSet& d);

// --- reports ---------------------------------------------------------------------

enum class ReportFormat { Text, Csv };

/// One isomorphism class of a classification run.
struct ReportRow {
    std::size_t class_id = 0;
    std::size_t size = 0;
    std::size_t two_rank = 0;
    bool sdp = false;
    std::string representative_hom_spec;
    /// Distinct phi images per generator of H over the class members, in the
    /// φ_x(z) = ... notation. Rendered in text only; not part of the CSV.
    std::vector<std::vector<std::string>> images;

    /// Compares the CSV columns.
    friend bool operator==(const ReportRow& a, const ReportRow& b) {
        return a.class_id == b.class_id && a.size == b.size && a.two_rank == b.two_rank && a.sdp == b.sdp &&
               a.representative_hom_spec == b.representative_hom_spec;
    }
};

struct Report {
    std::string title;
    std::vector<ReportRow> rows;
};

inline constexpr std::string_view kReportCsvHeader = "class_id,size,two_rank,sdp,representative_hom_spec";

std::string emit_report(const Report& report, ReportFormat format);
/// Reads back the CSV rendering; the title and images are not recovered.
std::vector<ReportRow> parse_report_csv(std::string_view csv);

/// One block per class member: `class c member m`, then `rows: ...` and
/// `cols: ...` as 0-based index lists carrying the member onto the
/// representative.
std::string emit_witnesses(const ClassificationReport& report, const std::vector<std::string>& labels);

/// One line per pair of classes naming the first invariant field that tells
/// their representatives apart, e.g. `Design 3 / Design 6: point_sections`.
/// Pairs told apart only by search read `search`.
std::string emit_separations(const ClassificationReport& report);

}  // namespace sdpkit
