#pragma once

// Design fingerprints, isomorphism search with explicit witnesses, and
// classification of design collections.

#include "sdpkit/bits.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdpkit {

/// (value, multiplicity) pairs in increasing value order.
using Histogram = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
/// ((section size, section rank), multiplicity) pairs.
using SectionHistogram = std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>>;

inline constexpr std::size_t kTripleSpectrumPointLimit = 512;
inline constexpr std::size_t kSectionSpectrumPointLimit = 256;

/// Permutation-invariant fingerprint of an incidence matrix. Fields that were
/// too expensive to compute are left empty; an empty field never separates two
/// designs.
struct DesignInvariant {
    std::size_t points = 0;
    std::size_t blocks = 0;
    std::size_t two_rank = 0;
    /// Weights of the GF(2) row space; empty when the rank passes kRowSpanRankLimit.
    std::optional<Histogram> weight_enumerator;
    /// |B_i + B_j + B_k| over every unordered triple of distinct blocks.
    std::optional<Histogram> triple_spectrum;
    /// For each pair of blocks, the blocks meeting B_i n B_j in the fewest points
    /// form a section; recorded as (section size, GF(2) rank of the section).
    std::optional<SectionHistogram> block_sections;
    /// The same over pairs of points, from the transposed matrix.
    std::optional<SectionHistogram> point_sections;

    friend bool operator==(const DesignInvariant&, const DesignInvariant&) = default;
};

DesignInvariant invariants(const BitMatrix& m);

/// Name of the first field in which two fingerprints provably differ, or empty.
std::string separating_field(const DesignInvariant& a, const DesignInvariant& b);

/// a[i][j] == b[row_perm[i]][col_perm[j]] for every i, j.
struct IsoWitness {
    std::vector<std::uint32_t> row_perm;
    std::vector<std::uint32_t> col_perm;

    static IsoWitness identity(std::size_t rows, std::size_t cols);
    friend bool operator==(const IsoWitness&, const IsoWitness&) = default;
};

/// The matrix M with M[i][j] = b[row_perm[i]][col_perm[j]].
BitMatrix apply_witness(const IsoWitness& w, const BitMatrix& b);
/// True when w carries b exactly onto a.
bool verify_witness(const BitMatrix& a, const BitMatrix& b, const IsoWitness& w);

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct IsoResult {
    enum class Verdict { Isomorphic, NotIsomorphic, Indeterminate };

    Verdict verdict = Verdict::Indeterminate;
    std::optional<IsoWitness> witness;  // verified, Isomorphic only
    std::string separated_by;           // invariant field, or "search" after exhaustion
    std::uint64_t nodes = 0;            // backtrack nodes visited
};

std::string to_string(IsoResult::Verdict v);

/// Invariant filter, then individualization-refinement backtracking over the
/// bipartite point/block incidence graph. Exhausting the search proves
/// non-isomorphism; running past `budget` nodes gives Indeterminate.
/// Throws DimensionError if the shapes differ.
IsoResult are_isomorphic(const BitMatrix& a, const BitMatrix& b, std::uint64_t budget = kDefaultSearchBudget);
IsoResult are_isomorphic(const BitMatrix& a, const DesignInvariant& ia, const BitMatrix& b, const DesignInvariant& ib,
                         std::uint64_t budget = kDefaultSearchBudget);

/// Search only, skipping the invariant filter.
IsoResult search_isomorphism(const BitMatrix& a, const BitMatrix& b, std::uint64_t budget = kDefaultSearchBudget);

/// Lifts factor witnesses to the product developments: w1 relates the G1-factor
/// designs, w2 the G2-factor designs, and the products use the b*|G1| + a
/// ordering. The result is checked against `a_product` and `b_product`; a
/// mismatch is an InternalFault.
IsoWitness product_iso_witness(const IsoWitness& w1, const IsoWitness& w2, const BitMatrix& a_product,
                               const BitMatrix& b_product);

struct DesignClass {
    std::size_t representative = 0;
    std::vector<std::size_t> members;  // includes the representative, input order
    /// witnesses[i] carries members[i] onto the representative.
    std::vector<IsoWitness> witnesses;
    DesignInvariant invariant;
    /// Some comparison touching this class ran out of budget.
    bool unresolved = false;
};

struct ClassificationReport {
    std::vector<DesignClass> classes;
    std::vector<std::size_t> class_of;  // per input design
    std::uint64_t search_nodes = 0;
    bool resolved() const;
};

struct ClassifyOptions {
    std::uint64_t budget = kDefaultSearchBudget;
    /// Threads for the invariant pass; 0 uses the hardware concurrency. The
    /// merge is sequential, so the report does not depend on this value.
    std::size_t jobs = 0;
};

/// Incremental classification in input order: each design is compared with the
/// existing representatives, invariants first and witness search second.
/// Throws DimensionError if the shapes differ.
ClassificationReport classify(const std::vector<BitMatrix>& designs, const ClassifyOptions& options = {});

}  // namespace sdpkit
