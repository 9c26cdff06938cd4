#pragma once

// Finite groups as explicit multiplication tables.
//
// Elements are indices 0..order-1 with 0 the identity. Every group built here
// carries a generator list and a normal form: each element is a product
// g_1^e_1 * g_2^e_2 * ... of its generators in list order, with 0 <= e_i <
// order(g_i). Product groups store the pair (a, b) at index b*|G1| + a, so
// consecutive index blocks are the cosets G1 x {g}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdpkit {

using Element = std::uint32_t;

class FiniteGroup;
class HomomorphismToAut;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Positional generator names. Standalone groups, H factors and difference-set
/// files use the primary names; the alias names are accepted for N when
/// writing automorphisms (the z, w of "z->z^5,w->w").
std::span<const std::string> primary_generator_names();
std::span<const std::string> alias_generator_names();

struct FactorStructure {
    enum class Kind { Direct, Semidirect };
    Kind kind = Kind::Direct;
    GroupPtr left;   // G1, or N for a semidirect product
    GroupPtr right;  // G2, or H
    std::shared_ptr<const HomomorphismToAut> phi;  // semidirect only
};

class FiniteGroup {
public:
    /// Builds a group from a table and normal-form data. Verifies the group axioms
    /// (see validate()) and throws InternalFault if they fail.
    FiniteGroup(std::vector<Element> table, std::vector<Element> generators,
                std::vector<std::vector<std::uint32_t>> exponents, std::string spec,
                std::optional<FactorStructure> factors = std::nullopt);

    std::size_t order() const { return order_; }
    static constexpr Element identity() { return 0; }

    Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    Element inverse(Element a) const { return inverse_[a]; }
    Element power(Element a, std::uint64_t k) const;
    std::span<const Element> table_row(Element a) const {
        return {table_.data() + static_cast<std::size_t>(a) * order_, order_};
    }

    const std::vector<Element>& generators() const { return generators_; }
    const std::vector<std::uint32_t>& generator_orders() const { return generator_orders_; }
    std::span<const std::uint32_t> exponents(Element a) const { return exponents_[a]; }
    /// Evaluates the normal-form product; exponents are reduced mod the generator orders.
    Element from_exponents(std::span<const std::int64_t> exps) const;

    std::size_t element_order(Element a) const;
    std::size_t exponent() const;
    bool is_two_group() const;
    bool is_abelian() const;

    /// The group grammar string this group was built from.
    const std::string& spec() const { return spec_; }
    const std::optional<FactorStructure>& factors() const { return factors_; }

    /// Normal-form word, e.g. "x^6*y" or "1".
    std::string word(Element a, std::span<const std::string> names) const;
    std::string word(Element a) const { return word(a, primary_generator_names()); }

    /// Latin square, identity law, associativity (every triple when order <= 64,
    /// 10^5 seeded random triples above), and normal-form consistency.
    void validate() const;

private:
    std::size_t order_;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    std::vector<Element> generators_;
    std::vector<std::uint32_t> generator_orders_;
    std::vector<std::vector<std::uint32_t>> exponents_;
    std::string spec_;
    std::optional<FactorStructure> factors_;
};

GroupPtr cyclic(std::size_t n);
GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);
/// N x| H with (n1,h1)(n2,h2) = (n1 phi(h1)(n2), h1 h2) on the same ordered set as N x H.
GroupPtr semidirect_product(const GroupPtr& n, const GroupPtr& h, const HomomorphismToAut& phi);

std::size_t element_order(const FiniteGroup& g, Element a);

/// A permutation of the elements that respects multiplication.
struct Automorphism {
    std::vector<Element> perm;

    Element operator()(Element a) const { return perm[a]; }
    static Automorphism identity(std::size_t order);
    bool is_identity() const;
    /// (f.after(g))(a) = f(g(a)).
    Automorphism after(const Automorphism& g) const;
    Automorphism inverse() const;
    std::size_t order() const;

    friend bool operator==(const Automorphism&, const Automorphism&) = default;
    friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

bool is_automorphism(const FiniteGroup& g, const Automorphism& a);

inline constexpr std::size_t kAutomorphismOrderLimit = 64;
inline constexpr std::size_t kAutomorphismNodeLimit = 50'000'000;

/// Every automorphism, sorted lexicographically by permutation image; the identity
/// comes first. Brute force over generator images of matching order, pruned on
/// generator prefixes. Throws FeasibilityError above kAutomorphismOrderLimit or
/// when the search exceeds kAutomorphismNodeLimit candidate extensions.
std::vector<Automorphism> automorphisms(const FiniteGroup& g);

/// The automorphism sending each generator of g to the given image, if one exists.
std::optional<Automorphism> extend_to_automorphism(const FiniteGroup& g, std::span<const Element> generator_images);

class HomomorphismToAut {
public:
    /// Extends the generator images over the normal form and checks the
    /// homomorphism law; throws HomomorphismError if it fails.
    static HomomorphismToAut from_generator_images(GroupPtr source, GroupPtr target,
                                                   std::vector<Automorphism> generator_images);
    static HomomorphismToAut trivial(GroupPtr source, GroupPtr target);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    const std::vector<Automorphism>& generator_images() const { return generator_images_; }
    const Automorphism& operator()(Element h) const { return full_map_[h]; }
    const std::vector<Automorphism>& full_map() const { return full_map_; }
    bool is_trivial() const;

    /// "z->z^5,w->w" blocks for each generator of H, joined by '/'.
    /// N's generators are written with `target_names`.
    std::string spec(std::span<const std::string> target_names = alias_generator_names()) const;

    friend bool operator==(const HomomorphismToAut& a, const HomomorphismToAut& b) {
        return a.generator_images_ == b.generator_images_;
    }

private:
    HomomorphismToAut() = default;

    GroupPtr source_;
    GroupPtr target_;
    std::vector<Automorphism> generator_images_;
    std::vector<Automorphism> full_map_;
};

inline constexpr std::size_t kHomSourceOrderLimit = 256;
inline constexpr std::size_t kHomTargetOrderLimit = 64;

/// All homomorphisms h -> Aut(n), ordered lexicographically by generator images.
std::vector<HomomorphismToAut> homomorphisms_to_aut(const GroupPtr& h, const GroupPtr& n);

// --- group grammar --------------------------------------------------------------
//
//   group := term { "x" term }
//   term  := "C" n [ "^" k ] | "SD(" group ";" group ";" phi ")" | "(" group ")"
//   phi   := block { "/" block }            one block per generator of H, in order
//   block := gen "->" word { "," gen "->" word } | ""
//
// Generators missing from a block map to themselves; missing blocks are the
// identity automorphism. Whitespace is insignificant.

GroupPtr parse_group(std::string_view spec);

/// Parses a product of generator powers ("x^6*y", "1") in `g`. Exponents may be
/// negative. Symbols are resolved against `names`. `line` and `column` locate
/// the word in a larger input for error messages.
Element parse_word(const FiniteGroup& g, std::string_view word,
                   std::span<const std::string> names = primary_generator_names(), std::size_t line = 0,
                   std::size_t column = 1);

/// Parses a phi spec for source h and target n.
HomomorphismToAut parse_phi(const GroupPtr& h, const GroupPtr& n, std::string_view spec);

/// φ_x(z) = z^5, φ_x(w) = w; one line per generator of H.
std::vector<std::string> describe_homomorphism(const HomomorphismToAut& phi);

}  // namespace sdpkit
