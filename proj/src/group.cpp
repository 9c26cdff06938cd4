#include "sdpkit/group.hpp"

#include "sdpkit/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace sdpkit {

namespace {

const std::array<std::string, 16> kPrimaryNames = {"x", "y", "z", "w", "u", "v", "s", "t",
                                                   "p", "q", "r", "a", "b", "c", "d", "e"};
const std::array<std::string, 16> kAliasNames = {"z", "w", "u", "v", "s", "t", "p", "q",
                                                 "r", "a", "b", "c", "d", "e", "f", "g"};

}  // namespace

std::span<const std::string> primary_generator_names() { return kPrimaryNames; }
std::span<const std::string> alias_generator_names() { return kAliasNames; }

// --- FiniteGroup ----------------------------------------------------------------

FiniteGroup::FiniteGroup(std::vector<Element> table, std::vector<Element> generators,
                         std::vector<std::vector<std::uint32_t>> exponents, std::string spec,
                         std::optional<FactorStructure> factors)
    : order_(exponents.size()),
      table_(std::move(table)),
      generators_(std::move(generators)),
      exponents_(std::move(exponents)),
      spec_(std::move(spec)),
      factors_(std::move(factors)) {
    if (order_ == 0 || table_.size() != order_ * order_) {
        throw InternalFault("FiniteGroup: table size does not match element count");
    }
    inverse_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a) {
        const auto row = table_row(a);
        const auto it = std::find(row.begin(), row.end(), identity());
        if (it == row.end()) throw InternalFault("FiniteGroup '" + spec_ + "': element without inverse");
        inverse_[a] = static_cast<Element>(it - row.begin());
    }
    for (Element gen : generators_) generator_orders_.push_back(static_cast<std::uint32_t>(element_order(gen)));
    validate();
}

Element FiniteGroup::power(Element a, std::uint64_t k) const {
    Element result = identity();
    Element base = a;
    while (k != 0) {
        if (k & 1U) result = mul(result, base);
        base = mul(base, base);
        k >>= 1U;
    }
    return result;
}

Element FiniteGroup::from_exponents(std::span<const std::int64_t> exps) const {
    if (exps.size() != generators_.size()) throw DimensionError("from_exponents: wrong number of exponents");
    Element result = identity();
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto ord = static_cast<std::int64_t>(generator_orders_[i]);
        const auto e = ((exps[i] % ord) + ord) % ord;
        result = mul(result, power(generators_[i], static_cast<std::uint64_t>(e)));
    }
    return result;
}

std::size_t FiniteGroup::element_order(Element a) const {
    std::size_t k = 1;
    Element x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::size_t FiniteGroup::exponent() const {
    std::size_t e = 1;
    for (Element a = 0; a < order_; ++a) e = std::lcm(e, element_order(a));
    return e;
}

bool FiniteGroup::is_two_group() const { return (order_ & (order_ - 1)) == 0; }

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order_; ++a) {
        for (Element b = a + 1; b < order_; ++b) {
            if (mul(a, b) != mul(b, a)) return false;
        }
    }
    return true;
}

std::string FiniteGroup::word(Element a, std::span<const std::string> names) const {
    const auto exps = exponents(a);
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += i < names.size() ? names[i] : "g" + std::to_string(i);
        if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
    }
    return out.empty() ? "1" : out;
}

void FiniteGroup::validate() const {
    const std::string where = "group '" + spec_ + "': ";
    std::vector<char> seen(order_);
    for (Element a = 0; a < order_; ++a) {
        if (mul(identity(), a) != a || mul(a, identity()) != a) throw InternalFault(where + "identity law fails");
        std::fill(seen.begin(), seen.end(), 0);
        for (Element b = 0; b < order_; ++b) {
            const Element p = mul(a, b);
            if (p >= order_ || seen[p]) throw InternalFault(where + "table row is not a permutation");
            seen[p] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (Element b = 0; b < order_; ++b) {
            const Element p = mul(b, a);
            if (seen[p]) throw InternalFault(where + "table column is not a permutation");
            seen[p] = 1;
        }
        if (mul(a, inverse(a)) != identity() || mul(inverse(a), a) != identity()) {
            throw InternalFault(where + "inverse law fails");
        }
    }

    auto assoc = [&](Element a, Element b, Element c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw InternalFault(where + "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                "," + std::to_string(c) + ")");
        }
    };
    if (order_ <= 64) {
        for (Element a = 0; a < order_; ++a)
            for (Element b = 0; b < order_; ++b)
                for (Element c = 0; c < order_; ++c) assoc(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
        for (int i = 0; i < 100'000; ++i) assoc(pick(rng), pick(rng), pick(rng));
    }

    std::vector<std::int64_t> exps(generators_.size());
    for (Element a = 0; a < order_; ++a) {
        if (exponents_[a].size() != generators_.size()) throw InternalFault(where + "normal form has wrong length");
        std::copy(exponents_[a].begin(), exponents_[a].end(), exps.begin());
        if (from_exponents(exps) != a) throw InternalFault(where + "normal form does not evaluate to its element");
    }
}

std::size_t element_order(const FiniteGroup& g, Element a) {
    if (a >= g.order()) throw DimensionError("element_order: element out of range");
    return g.element_order(a);
}

// --- constructions ----------------------------------------------------------------

GroupPtr cyclic(std::size_t n) {
    if (n == 0) throw ParameterError("cyclic: order must be at least 1");
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
    std::vector<std::vector<std::uint32_t>> exps(n);
    std::vector<Element> gens;
    if (n > 1) {
        gens.push_back(1);
        for (std::size_t a = 0; a < n; ++a) exps[a] = {static_cast<std::uint32_t>(a)};
    }
    return std::make_shared<const FiniteGroup>(std::move(table), std::move(gens), std::move(exps),
                                               "C" + std::to_string(n));
}

namespace {

// Shared layout of direct and semidirect products: index(a, b) = b*|G1| + a,
// generators of G1 then generators of G2, normal form concatenated.
struct ProductLayout {
    std::vector<Element> generators;
    std::vector<std::vector<std::uint32_t>> exponents;
};

ProductLayout product_layout(const FiniteGroup& g1, const FiniteGroup& g2) {
    const std::size_t v1 = g1.order();
    ProductLayout layout;
    for (Element g : g1.generators()) layout.generators.push_back(g);
    for (Element g : g2.generators()) layout.generators.push_back(static_cast<Element>(g * v1));
    layout.exponents.resize(v1 * g2.order());
    for (Element b = 0; b < g2.order(); ++b) {
        for (Element a = 0; a < v1; ++a) {
            auto& e = layout.exponents[b * v1 + a];
            const auto ea = g1.exponents(a);
            const auto eb = g2.exponents(b);
            e.assign(ea.begin(), ea.end());
            e.insert(e.end(), eb.begin(), eb.end());
        }
    }
    return layout;
}

}  // namespace

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2) {
    const std::size_t v1 = g1->order();
    const std::size_t v2 = g2->order();
    const std::size_t v = v1 * v2;
    std::vector<Element> table(v * v);
    for (Element b1 = 0; b1 < v2; ++b1)
        for (Element a1 = 0; a1 < v1; ++a1)
            for (Element b2 = 0; b2 < v2; ++b2)
                for (Element a2 = 0; a2 < v1; ++a2) {
                    table[(b1 * v1 + a1) * v + b2 * v1 + a2] = g2->mul(b1, b2) * static_cast<Element>(v1) + g1->mul(a1, a2);
                }
    auto layout = product_layout(*g1, *g2);
    FactorStructure fs{FactorStructure::Kind::Direct, g1, g2, nullptr};
    return std::make_shared<const FiniteGroup>(std::move(table), std::move(layout.generators),
                                               std::move(layout.exponents), g1->spec() + "x" + g2->spec(), fs);
}

GroupPtr semidirect_product(const GroupPtr& n, const GroupPtr& h, const HomomorphismToAut& phi) {
    if (phi.source().get() != h.get() && phi.source()->spec() != h->spec()) {
        throw HomomorphismError("semidirect_product: phi is defined on " + phi.source()->spec() + ", not " + h->spec());
    }
    if (phi.target().get() != n.get() && phi.target()->spec() != n->spec()) {
        throw HomomorphismError("semidirect_product: phi acts on " + phi.target()->spec() + ", not " + n->spec());
    }
    const std::size_t vn = n->order();
    const std::size_t vh = h->order();
    const std::size_t v = vn * vh;
    std::vector<Element> table(v * v);
    for (Element h1 = 0; h1 < vh; ++h1) {
        const Automorphism& act = phi(h1);
        for (Element n1 = 0; n1 < vn; ++n1)
            for (Element h2 = 0; h2 < vh; ++h2)
                for (Element n2 = 0; n2 < vn; ++n2) {
                    table[(h1 * vn + n1) * v + h2 * vn + n2] =
                        h->mul(h1, h2) * static_cast<Element>(vn) + n->mul(n1, act(n2));
                }
    }
    auto layout = product_layout(*n, *h);
    auto phi_copy = std::make_shared<const HomomorphismToAut>(phi);
    FactorStructure fs{FactorStructure::Kind::Semidirect, n, h, phi_copy};
    const std::string spec = "SD(" + n->spec() + ";" + h->spec() + ";" + phi.spec() + ")";
    return std::make_shared<const FiniteGroup>(std::move(table), std::move(layout.generators),
                                               std::move(layout.exponents), spec, fs);
}

// --- automorphisms ------------------------------------------------------------------

Automorphism Automorphism::identity(std::size_t order) {
    Automorphism a;
    a.perm.resize(order);
    std::iota(a.perm.begin(), a.perm.end(), Element{0});
    return a;
}

bool Automorphism::is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != i) return false;
    }
    return true;
}

Automorphism Automorphism::after(const Automorphism& g) const {
    Automorphism r;
    r.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[g.perm[i]];
    return r;
}

Automorphism Automorphism::inverse() const {
    Automorphism r;
    r.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) r.perm[perm[i]] = static_cast<Element>(i);
    return r;
}

std::size_t Automorphism::order() const {
    std::size_t k = 1;
    Automorphism x = *this;
    while (!x.is_identity()) {
        x = x.after(*this);
        ++k;
    }
    return k;
}

bool is_automorphism(const FiniteGroup& g, const Automorphism& a) {
    const std::size_t v = g.order();
    if (a.perm.size() != v || a.perm[0] != 0) return false;
    std::vector<char> seen(v, 0);
    for (Element x : a.perm) {
        if (x >= v || seen[x]) return false;
        seen[x] = 1;
    }
    for (Element x = 0; x < v; ++x)
        for (Element y = 0; y < v; ++y) {
            if (a(g.mul(x, y)) != g.mul(a(x), a(y))) return false;
        }
    return true;
}

namespace {

// Image of every element under the normal-form extension of the generator images.
std::vector<Element> normal_form_images(const FiniteGroup& g, std::span<const Element> images) {
    std::vector<Element> out(g.order());
    for (Element a = 0; a < g.order(); ++a) {
        const auto exps = g.exponents(a);
        Element r = FiniteGroup::identity();
        for (std::size_t i = 0; i < exps.size(); ++i) r = g.mul(r, g.power(images[i], exps[i]));
        out[a] = r;
    }
    return out;
}

class AutomorphismSearch {
public:
    explicit AutomorphismSearch(const FiniteGroup& g) : g_(g), k_(g.generators().size()) {
        for (std::size_t i = 0; i < k_; ++i) {
            std::vector<Element> cand;
            for (Element a = 0; a < g.order(); ++a) {
                if (g.element_order(a) == g.generator_orders()[i]) cand.push_back(a);
            }
            candidates_.push_back(std::move(cand));
        }
        // prefix_[i]: elements whose normal form only uses generators 0..i
        prefix_.resize(k_);
        for (Element a = 0; a < g.order(); ++a) {
            const auto exps = g.exponents(a);
            std::size_t last = 0;
            bool any = false;
            for (std::size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] != 0) {
                    last = i;
                    any = true;
                }
            }
            for (std::size_t i = any ? last : 0; i < k_; ++i) prefix_[i].push_back(a);
        }
        images_.assign(k_, 0);
    }

    std::vector<Automorphism> run() {
        if (k_ == 0) return {Automorphism::identity(g_.order())};
        assign(0);
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

private:
    void assign(std::size_t level) {
        for (Element c : candidates_[level]) {
            if (++nodes_ > kAutomorphismNodeLimit) {
                throw FeasibilityError("automorphisms: search exceeded " + std::to_string(kAutomorphismNodeLimit) +
                                       " nodes for " + g_.spec());
            }
            images_[level] = c;
            if (!prefix_consistent(level)) continue;
            if (level + 1 == k_) {
                Automorphism a{normal_form_images(g_, images_)};
                if (is_automorphism(g_, a)) found_.push_back(std::move(a));
            } else {
                assign(level + 1);
            }
        }
    }

    // The partial map on <g_0..g_level> must be injective and respect right
    // multiplication by the assigned generators wherever the product stays inside.
    bool prefix_consistent(std::size_t level) {
        const auto& dom = prefix_[level];
        image_of_.assign(g_.order(), kUnset);
        std::vector<char> used(g_.order(), 0);
        for (Element a : dom) {
            const auto exps = g_.exponents(a);
            Element r = FiniteGroup::identity();
            for (std::size_t i = 0; i <= level; ++i) r = g_.mul(r, g_.power(images_[i], exps[i]));
            if (used[r]) return false;
            used[r] = 1;
            image_of_[a] = r;
        }
        for (Element a : dom) {
            for (std::size_t j = 0; j <= level; ++j) {
                const Element p = g_.mul(a, g_.generators()[j]);
                if (image_of_[p] == kUnset) continue;
                if (image_of_[p] != g_.mul(image_of_[a], images_[j])) return false;
            }
        }
        return true;
    }

    static constexpr Element kUnset = ~Element{0};

    const FiniteGroup& g_;
    std::size_t k_;
    std::vector<std::vector<Element>> candidates_;
    std::vector<std::vector<Element>> prefix_;
    std::vector<Element> images_;
    std::vector<Element> image_of_;
    std::vector<Automorphism> found_;
    std::size_t nodes_ = 0;
};

}  // namespace

std::vector<Automorphism> automorphisms(const FiniteGroup& g) {
    if (g.order() > kAutomorphismOrderLimit) {
        throw FeasibilityError("automorphisms: order " + std::to_string(g.order()) + " exceeds the brute-force limit " +
                               std::to_string(kAutomorphismOrderLimit));
    }
    return AutomorphismSearch(g).run();
}

std::optional<Automorphism> extend_to_automorphism(const FiniteGroup& g, std::span<const Element> generator_images) {
    if (generator_images.size() != g.generators().size()) {
        throw DimensionError("extend_to_automorphism: expected " + std::to_string(g.generators().size()) + " images");
    }
    for (Element e : generator_images) {
        if (e >= g.order()) throw DimensionError("extend_to_automorphism: image out of range");
    }
    Automorphism a{normal_form_images(g, generator_images)};
    if (!is_automorphism(g, a)) return std::nullopt;
    return a;
}

// --- homomorphisms into Aut(N) --------------------------------------------------------

namespace {

// Builds the normal-form extension; returns false if the homomorphism law fails.
bool extend_homomorphism(const FiniteGroup& h, const std::vector<Automorphism>& gen_images, std::size_t n_order,
                         std::vector<Automorphism>& full) {
    full.assign(h.order(), Automorphism{});
    for (Element a = 0; a < h.order(); ++a) {
        const auto exps = h.exponents(a);
        Automorphism f = Automorphism::identity(n_order);
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (std::uint32_t e = 0; e < exps[i]; ++e) f = f.after(gen_images[i]);
        full[a] = std::move(f);
    }
    // phi(a g) = phi(a) o phi(g) for every a and generator g implies the law for all pairs.
    for (Element a = 0; a < h.order(); ++a) {
        for (std::size_t j = 0; j < gen_images.size(); ++j) {
            const Element p = h.mul(a, h.generators()[j]);
            const auto& lhs = full[p];
            const auto& fa = full[a];
            const auto& fg = gen_images[j];
            for (std::size_t x = 0; x < n_order; ++x) {
                if (lhs.perm[x] != fa.perm[fg.perm[x]]) return false;
            }
        }
    }
    return true;
}

}  // namespace

HomomorphismToAut HomomorphismToAut::from_generator_images(GroupPtr source, GroupPtr target,
                                                           std::vector<Automorphism> generator_images) {
    if (generator_images.size() != source->generators().size()) {
        throw HomomorphismError("homomorphism: " + source->spec() + " has " +
                                std::to_string(source->generators().size()) + " generators, got " +
                                std::to_string(generator_images.size()) + " images");
    }
    for (const auto& a : generator_images) {
        if (!is_automorphism(*target, a)) {
            throw HomomorphismError("homomorphism: generator image is not an automorphism of " + target->spec());
        }
    }
    HomomorphismToAut phi;
    if (!extend_homomorphism(*source, generator_images, target->order(), phi.full_map_)) {
        throw HomomorphismError("homomorphism: generator images of " + source->spec() +
                                " violate its relations in Aut(" + target->spec() + ")");
    }
    phi.source_ = std::move(source);
    phi.target_ = std::move(target);
    phi.generator_images_ = std::move(generator_images);
    return phi;
}

HomomorphismToAut HomomorphismToAut::trivial(GroupPtr source, GroupPtr target) {
    std::vector<Automorphism> images(source->generators().size(), Automorphism::identity(target->order()));
    return from_generator_images(std::move(source), std::move(target), std::move(images));
}

bool HomomorphismToAut::is_trivial() const {
    return std::all_of(generator_images_.begin(), generator_images_.end(),
                       [](const Automorphism& a) { return a.is_identity(); });
}

std::string HomomorphismToAut::spec(std::span<const std::string> target_names) const {
    std::string out;
    for (std::size_t i = 0; i < generator_images_.size(); ++i) {
        if (i != 0) out += '/';
        const auto& img = generator_images_[i];
        for (std::size_t j = 0; j < target_->generators().size(); ++j) {
            if (j != 0) out += ',';
            out += target_names[j] + "->" + target_->word(img(target_->generators()[j]), target_names);
        }
    }
    return out;
}

std::vector<HomomorphismToAut> homomorphisms_to_aut(const GroupPtr& h, const GroupPtr& n) {
    if (h->order() > kHomSourceOrderLimit || n->order() > kHomTargetOrderLimit) {
        throw FeasibilityError("homomorphisms_to_aut: guard exceeded (|H| <= " + std::to_string(kHomSourceOrderLimit) +
                               ", |N| <= " + std::to_string(kHomTargetOrderLimit) + ")");
    }
    const auto auts = automorphisms(*n);
    const std::size_t k = h->generators().size();
    std::vector<std::vector<const Automorphism*>> candidates(k);
    std::vector<std::size_t> aut_order(auts.size());
    for (std::size_t a = 0; a < auts.size(); ++a) aut_order[a] = auts[a].order();
    double combos = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a = 0; a < auts.size(); ++a) {
            if (h->generator_orders()[i] % aut_order[a] == 0) candidates[i].push_back(&auts[a]);
        }
        combos *= static_cast<double>(candidates[i].size());
    }
    if (combos > 1e7) {
        throw FeasibilityError("homomorphisms_to_aut: " + std::to_string(static_cast<long long>(combos)) +
                               " generator assignments exceed the 10^7 guard");
    }

    std::vector<HomomorphismToAut> out;
    std::vector<std::size_t> pick(k, 0);
    std::vector<Automorphism> images(k);
    std::vector<Automorphism> full;
    while (true) {
        for (std::size_t i = 0; i < k; ++i) images[i] = *candidates[i][pick[i]];
        if (extend_homomorphism(*h, images, n->order(), full)) {
            out.push_back(HomomorphismToAut::from_generator_images(h, n, images));
        }
        // odometer, last generator fastest
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++pick[i] < candidates[i].size()) break;
            pick[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

}  // namespace sdpkit
