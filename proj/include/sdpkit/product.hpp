#pragma once

// Product construction D = (D1 x (G2 - D2)) u ((G1 - D1) x D2) over direct and
// semidirect products, and the generator fixing condition.

#include "sdpkit/design.hpp"
#include "sdpkit/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdpkit {

struct ProductSpec {
    DifferenceSet d1;  // in G1 (N when twisted)
    DifferenceSet d2;  // in G2 (H when twisted)
    std::optional<HomomorphismToAut> phi;  // G2 -> Aut(G1)
    GroupPtr result_group;
};

/// Builds the product group: direct when phi is absent, G1 x|_phi G2 otherwise.
ProductSpec make_product_spec(const DifferenceSet& d1, const DifferenceSet& d2,
                              std::optional<HomomorphismToAut> phi = std::nullopt);

/// Member indices of the product set in the shared b*|G1| + a ordering. Pure set
/// arithmetic, so the result does not depend on phi.
std::vector<Element> product_members(const DifferenceSet& d1, const DifferenceSet& d2);

/// The product set, verified in spec.result_group. A verification failure is an
/// InternalFault.
DifferenceSet product_ds(const ProductSpec& spec);

/// Every generator image of phi maps the members of d1 onto themselves.
bool fixes_ds(const HomomorphismToAut& phi, const DifferenceSet& d1);
/// The same condition checked for phi(h) at every element h of the source.
bool fixes_ds_everywhere(const HomomorphismToAut& phi, const DifferenceSet& d1);

/// Bit-identical incidence matrices for the twisted and direct products.
bool developments_equal(const ProductSpec& twisted, const ProductSpec& direct);

// --- groupings ------------------------------------------------------------------

struct GroupingFactor {
    std::string group_spec;
    std::size_t order = 0;
    bool has_sdp_set = false;  // some cataloged difference set in this group has the SDP
    bool cataloged = false;
};

struct Grouping {
    std::vector<GroupingFactor> factors;
    /// Every factor carries a cataloged SDP set. Otherwise the product closure
    /// rules out product-constructed SDP sets from this grouping.
    bool produces_sdp = false;
    std::string basis;
};

struct GroupingReport {
    std::size_t v = 0;
    std::vector<Grouping> groupings;
};

struct CatalogSet {
    DifferenceSet ds;
    bool sdp = false;
};

/// Ordered sequences of catalog groups whose orders multiply to v.
GroupingReport grouping_report(std::size_t v, const std::vector<CatalogSet>& catalog);

/// Verdict for one explicit grouping, e.g. {"C8xC8", "C4"}. Factors absent from
/// the catalog count as carrying no SDP set.
Grouping evaluate_grouping(const std::vector<std::string>& factor_specs, const std::vector<CatalogSet>& catalog);

}  // namespace sdpkit
