#include "sdpkit/product.hpp"

#include "sdpkit/errors.hpp"

#include <algorithm>
#include <map>

namespace sdpkit {

ProductSpec make_product_spec(const DifferenceSet& d1, const DifferenceSet& d2, std::optional<HomomorphismToAut> phi) {
    GroupPtr group;
    if (phi) {
        group = semidirect_product(d1.group(), d2.group(), *phi);
    } else {
        group = direct_product(d1.group(), d2.group());
    }
    return ProductSpec{d1, d2, std::move(phi), std::move(group)};
}

std::vector<Element> product_members(const DifferenceSet& d1, const DifferenceSet& d2) {
    const std::size_t v1 = d1.group()->order();
    const std::size_t v2 = d2.group()->order();
    std::vector<Element> members;
    for (Element b = 0; b < v2; ++b) {
        for (Element a = 0; a < v1; ++a) {
            if (d1.contains(a) != d2.contains(b)) members.push_back(static_cast<Element>(b * v1 + a));
        }
    }
    return members;
}

DifferenceSet product_ds(const ProductSpec& spec) {
    try {
        return verify_difference_set(spec.result_group, product_members(spec.d1, spec.d2));
    } catch (const NotADifferenceSetError& e) {
        throw InternalFault(std::string("product construction failed verification: ") + e.what());
    }
}

namespace {

bool maps_onto_itself(const Automorphism& a, const DifferenceSet& d) {
    return std::all_of(d.members().begin(), d.members().end(), [&](Element m) { return d.contains(a(m)); });
}

void require_target(const HomomorphismToAut& phi, const DifferenceSet& d1) {
    if (phi.target()->spec() != d1.group()->spec()) {
        throw HomomorphismError("fixes_ds: phi acts on " + phi.target()->spec() + ", the set lives in " +
                                d1.group()->spec());
    }
}

}  // namespace

bool fixes_ds(const HomomorphismToAut& phi, const DifferenceSet& d1) {
    require_target(phi, d1);
    return std::all_of(phi.generator_images().begin(), phi.generator_images().end(),
                       [&](const Automorphism& a) { return maps_onto_itself(a, d1); });
}

bool fixes_ds_everywhere(const HomomorphismToAut& phi, const DifferenceSet& d1) {
    require_target(phi, d1);
    return std::all_of(phi.full_map().begin(), phi.full_map().end(),
                       [&](const Automorphism& a) { return maps_onto_itself(a, d1); });
}

bool developments_equal(const ProductSpec& twisted, const ProductSpec& direct) {
    if (!(twisted.d1 == direct.d1) || !(twisted.d2 == direct.d2)) {
        throw InternalFault("developments_equal: specs are built from different factor sets");
    }
    if (twisted.result_group->order() != direct.result_group->order()) {
        throw InternalFault("developments_equal: product groups differ in order");
    }
    const auto members_t = product_members(twisted.d1, twisted.d2);
    const auto members_d = product_members(direct.d1, direct.d2);
    if (members_t != members_d) throw InternalFault("developments_equal: member sets differ");
    return development_matrix(*twisted.result_group, members_t) == development_matrix(*direct.result_group, members_d);
}

// --- groupings ------------------------------------------------------------------

namespace {

constexpr const char* kBasis = "catalog lookup + product closure";

std::string normalized(const std::string& spec) { return parse_group(spec)->spec(); }

struct FactorTable {
    std::vector<GroupingFactor> factors;  // first-appearance order

    explicit FactorTable(const std::vector<CatalogSet>& catalog) {
        std::map<std::string, std::size_t> index;
        for (const auto& entry : catalog) {
            const auto& spec = entry.ds.group()->spec();
            auto [it, inserted] = index.emplace(spec, factors.size());
            if (inserted) factors.push_back(GroupingFactor{spec, entry.ds.group()->order(), false, true});
            factors[it->second].has_sdp_set = factors[it->second].has_sdp_set || entry.sdp;
        }
    }

    GroupingFactor lookup(const std::string& spec) const {
        for (const auto& f : factors) {
            if (f.group_spec == spec) return f;
        }
        return GroupingFactor{spec, parse_group(spec)->order(), false, false};
    }
};

Grouping finish(std::vector<GroupingFactor> factors) {
    Grouping g;
    g.produces_sdp = std::all_of(factors.begin(), factors.end(), [](const GroupingFactor& f) { return f.has_sdp_set; });
    g.factors = std::move(factors);
    g.basis = kBasis;
    return g;
}

void extend_groupings(std::size_t remaining, const FactorTable& table, std::vector<GroupingFactor>& prefix,
                      std::vector<Grouping>& out) {
    if (remaining == 1) {
        if (!prefix.empty()) out.push_back(finish(prefix));
        return;
    }
    if (out.size() > 100'000) throw FeasibilityError("grouping_report: more than 10^5 groupings");
    for (const auto& f : table.factors) {
        if (f.order < 2 || remaining % f.order != 0) continue;
        prefix.push_back(f);
        extend_groupings(remaining / f.order, table, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

GroupingReport grouping_report(std::size_t v, const std::vector<CatalogSet>& catalog) {
    if (!half_log2(v)) throw ParameterError("grouping_report: " + std::to_string(v) + " is not an even power of two");
    const FactorTable table(catalog);
    GroupingReport report;
    report.v = v;
    std::vector<GroupingFactor> prefix;
    extend_groupings(v, table, prefix, report.groupings);
    return report;
}

Grouping evaluate_grouping(const std::vector<std::string>& factor_specs, const std::vector<CatalogSet>& catalog) {
    const FactorTable table(catalog);
    std::vector<GroupingFactor> factors;
    for (const auto& spec : factor_specs) factors.push_back(table.lookup(normalized(spec)));
    return finish(std::move(factors));
}

}  // namespace sdpkit
