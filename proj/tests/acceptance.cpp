// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria, so ctest fails if any line does.

#include "oracles.hpp"
#include "sdpkit/catalog.hpp"
#include "sdpkit/errors.hpp"
#include "sdpkit/iso.hpp"
#include "sdpkit/product.hpp"
#include "sdpkit/survey.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace sdpkit;

namespace {

using Clock = std::chrono::steady_clock;

// Runtime ceilings in seconds.
constexpr double kFastLimit = 1.0;
constexpr double kTableLimit = 600.0;
constexpr double kOracleSuiteLimit = 300.0;

constexpr const char* kWorkedSet = "C8xC2 | 1, x, x^2, x^5, y, x^6*y";

struct Outcome {
    bool pass = false;
    std::string detail;
};

// SDP-passing developments met along the way; criterion 8 checks their rows.
std::vector<std::pair<std::string, BitMatrix>> g_sdp_designs;

void remember_sdp(std::string label, const BitMatrix& m) { g_sdp_designs.emplace_back(std::move(label), m); }

DifferenceSet builtin(const char* name) {
    auto e = find_builtin(name);
    if (!e) throw InternalFault(std::string("missing catalog entry ") + name);
    return e->ds;
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

Outcome criterion1() {
    std::ostringstream out;
    std::ostringstream err;
    const int verify_code = run_cli({"verify", kWorkedSet}, out, err);
    const std::string verify_text = out.str();
    out.str("");
    const int sdp_code = run_cli({"sdp", kWorkedSet}, out, err);
    const std::string sdp_text = out.str();

    const auto d = parse_ds_line(kWorkedSet);
    const auto dev = develop(d);
    std::vector<int> members(d.members().begin(), d.members().end());
    const oracle::Abelian ref{{8, 2}};
    const long lambda = oracle::lambda_of(16, members, [&](int a, int b) { return ref.mul(a, b); },
                                          [&](int a) { return ref.inv(a); });
    const auto plain = oracle::to_plain(dev.matrix);
    const std::size_t oracle_rank = oracle::rank(plain);
    const bool sdp = has_sdp(dev).holds;
    if (sdp) remember_sdp("worked set", dev.matrix);

    const bool pass = verify_code == 0 && sdp_code == 0 && contains(verify_text, "parameters: (16,6,2)") &&
                      contains(verify_text, "D D^(-1) = 16*1: yes") && contains(sdp_text, "two_rank: 6") &&
                      contains(sdp_text, "SDP: holds") && lambda == 2 && oracle_rank == 6 && sdp &&
                      oracle::sdp(plain) && signed_autocorrelation(d).is_scalar(16);
    return {pass, "(16,6,2), brute-force lambda " + std::to_string(lambda) + ", rank " + std::to_string(oracle_rank)};
}

Outcome criterion2() {
    const auto d1 = builtin("C8xC2-seed");
    const auto d2 = builtin("C4-trivial");
    const auto phi = parse_phi(d2.group(), d1.group(), "z->z^5,w->w");
    const auto twisted = make_product_spec(d1, d2, phi);
    const auto direct = make_product_spec(d1, d2);
    const bool fixes = fixes_ds(phi, d1);
    const bool equal = developments_equal(twisted, direct);
    const auto a = develop(product_ds(twisted)).matrix;
    const auto b = develop(product_ds(direct)).matrix;
    const bool identical = a == b && a.rows() == 64;
    if (has_sdp(a).holds) remember_sdp("twisted worked product", a);
    return {fixes && equal && identical, std::string("fixes_ds ") + (fixes ? "true" : "false") +
                                             ", developments_equal " + (equal ? "true" : "false")};
}

Outcome criterion3() {
    const auto d = builtin("C8xC2-seed");
    const auto result = run_table(d, d);
    const auto& cls = result.classification;

    std::multiset<std::pair<std::size_t, std::size_t>> got;
    std::multiset<std::size_t> sdp_ranks;
    std::size_t sdp_classes = 0;
    for (const auto& c : cls.classes) {
        got.insert({c.members.size(), c.invariant.two_rank});
        const auto& rep = result.designs[c.representative];
        const bool holds = has_sdp(rep).holds;
        if (holds) {
            ++sdp_classes;
            sdp_ranks.insert(c.invariant.two_rank);
            for (auto m : c.members) remember_sdp("table design " + std::to_string(m), result.designs[m]);
        }
        // Every member shares the representative's verdict.
        for (auto m : c.members)
            if (has_sdp(result.designs[m]).holds != holds) return {false, "SDP verdict differs inside a class"};
    }
    const std::multiset<std::pair<std::size_t, std::size_t>> want{{16, 10}, {8, 10}, {24, 11}, {40, 12},
                                                                  {24, 12}, {8, 11},  {8, 11}};
    const bool pass = result.homs.size() == 128 && cls.resolved() && cls.classes.size() == 7 && got == want &&
                      sdp_classes == 2 && sdp_ranks == std::multiset<std::size_t>{10, 10};
    // Which fingerprint field tells apart the classes that share a rank.
    std::set<std::string> separators;
    for (std::size_t a = 0; a < cls.classes.size(); ++a)
        for (std::size_t b = a + 1; b < cls.classes.size(); ++b)
            if (cls.classes[a].invariant.two_rank == cls.classes[b].invariant.two_rank) {
                const auto f = separating_field(cls.classes[a].invariant, cls.classes[b].invariant);
                separators.insert(f.empty() ? "search" : f);
            }
    std::string sizes;
    for (const auto& [size, rank] : got) sizes += " " + std::to_string(size) + "@" + std::to_string(rank);
    std::string fields;
    for (const auto& f : separators) fields += (fields.empty() ? "" : " ") + f;
    return {pass, std::to_string(result.homs.size()) + " homs, " + std::to_string(cls.classes.size()) +
                      " classes (size@rank:" + sizes + "), " + std::to_string(sdp_classes) + " with SDP, " +
                      "equal-rank classes separated by {" + fields + "}, " + std::to_string(cls.search_nodes) +
                      " search nodes"};
}

Outcome criterion4() {
    const std::vector<DifferenceSet> trivials{builtin("C4-trivial"), builtin("C2^2-trivial")};
    std::size_t checked = 0;
    std::size_t exceptions = 0;
    std::size_t factor_sdp = 0;
    for (const auto& [spec, orders] : std::vector<std::pair<const char*, std::vector<int>>>{
             {"C2xC2xC2xC2", {2, 2, 2, 2}}, {"C4xC4", {4, 4}}, {"C8xC2", {8, 2}}}) {
        const auto g = parse_group(spec);
        const auto sets = enumerate_difference_sets(g, 6);
        if (sets.size() != oracle::difference_sets(oracle::Abelian{orders}, 6).size())
            return {false, std::string("enumeration disagrees with the bitmask scan in ") + spec};
        for (const auto& d : sets) {
            const bool factor = oracle::sdp(oracle::to_plain(develop(d).matrix));
            factor_sdp += factor ? 1 : 0;
            for (const auto& t : trivials) {
                const auto m = develop(product_ds(make_product_spec(d, t))).matrix;
                if (has_sdp(m).holds != factor) ++exceptions;
                ++checked;
            }
        }
    }
    return {exceptions == 0 && checked == 2 * (448 + 192 + 192),
            std::to_string(checked) + " products, " + std::to_string(factor_sdp) + " SDP factors, " +
                std::to_string(exceptions) + " exceptions"};
}

Outcome criterion5() {
    bool pass = symplectic_matrix(1) == BitMatrix::identity(4);
    std::string detail = "ranks";
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto m = symplectic_matrix(n);
        const bool sdp = has_sdp(m).holds;
        const auto r = rank2(m);
        pass = pass && sdp && r == 2 * n + 2 && oracle::to_plain(m) == oracle::symplectic(static_cast<int>(n));
        if (sdp) remember_sdp("symplectic " + std::to_string(n), m);
        detail += " " + std::to_string(r);
    }
    const auto trivial = builtin("C2^2-trivial");
    DifferenceSet acc = trivial;
    for (std::size_t n = 2; n <= 3; ++n) {
        acc = product_ds(make_product_spec(acc, trivial));
        const auto m = develop(acc).matrix;
        const auto sym = symplectic_matrix(n);
        const auto r = are_isomorphic(m, sym);
        const bool ok = r.verdict == IsoResult::Verdict::Isomorphic && r.witness &&
                        oracle::witness_holds(oracle::to_plain(m), oracle::to_plain(sym), r.witness->row_perm,
                                              r.witness->col_perm);
        pass = pass && ok;
        if (has_sdp(m).holds) remember_sdp("iterated trivial product " + std::to_string(n), m);
        detail += std::string(", n=") + std::to_string(n) + " iterated product " + (ok ? "isomorphic" : "NOT isomorphic");
    }
    return {pass, detail};
}

Outcome criterion6() {
    struct Pair {
        DifferenceSet a;
        DifferenceSet b;
    };
    const Pair first{builtin("C2^4-product"), builtin("C4xC4-product")};
    const Pair second{builtin("C4-trivial"), builtin("C2^2-trivial")};
    const auto w1 = are_isomorphic(develop(first.a).matrix, develop(first.b).matrix).witness;
    const auto w2 = are_isomorphic(develop(second.a).matrix, develop(second.b).matrix).witness;
    if (!w1 || !w2) return {false, "factor witness missing"};

    std::size_t verified = 0;
    // Both factor orders: G1 of order 16 with G2 of order 4, and the reverse.
    {
        const auto pa = develop(product_ds(make_product_spec(first.a, second.a))).matrix;
        const auto pb = develop(product_ds(make_product_spec(first.b, second.b))).matrix;
        const auto w = product_iso_witness(*w1, *w2, pa, pb);
        verified += oracle::witness_holds(oracle::to_plain(pa), oracle::to_plain(pb), w.row_perm, w.col_perm);
    }
    {
        const auto pa = develop(product_ds(make_product_spec(second.a, first.a))).matrix;
        const auto pb = develop(product_ds(make_product_spec(second.b, first.b))).matrix;
        const auto w = product_iso_witness(*w2, *w1, pa, pb);
        verified += oracle::witness_holds(oracle::to_plain(pa), oracle::to_plain(pb), w.row_perm, w.col_perm);
    }
    return {verified == 2, std::to_string(verified) + "/2 lifted witnesses verified entrywise"};
}

Outcome criterion7() {
    const auto sym = symplectic_matrix(3);
    std::vector<BitMatrix> products;
    std::vector<IsoWitness> to_sym;
    for (const auto& big : builtin_catalog()) {
        if (big.ds.group()->order() != 16 || !big.sdp) continue;
        for (const char* small : {"C4-trivial", "C2^2-trivial"}) {
            const auto t = builtin(small);
            for (bool big_first : {true, false}) {
                const auto spec = big_first ? make_product_spec(big.ds, t) : make_product_spec(t, big.ds);
                const auto m = develop(product_ds(spec)).matrix;
                const auto r = are_isomorphic(m, sym);
                if (r.verdict != IsoResult::Verdict::Isomorphic || !verify_witness(m, sym, *r.witness))
                    return {false, big.name + " x " + small + " is not isomorphic to the symplectic design"};
                products.push_back(m);
                to_sym.push_back(*r.witness);
            }
        }
    }
    // Mutual witnesses by composing through the symplectic design: a -> sym <- b.
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < products.size(); ++i) {
        for (std::size_t j = 0; j < products.size(); ++j) {
            if (i == j) continue;
            const auto inverse = [](const std::vector<std::uint32_t>& p) {
                std::vector<std::uint32_t> q(p.size());
                for (std::size_t k = 0; k < p.size(); ++k) q[p[k]] = static_cast<std::uint32_t>(k);
                return q;
            };
            const auto rb = inverse(to_sym[j].row_perm);
            const auto cb = inverse(to_sym[j].col_perm);
            IsoWitness w;
            for (auto r : to_sym[i].row_perm) w.row_perm.push_back(rb[r]);
            for (auto c : to_sym[i].col_perm) w.col_perm.push_back(cb[c]);
            if (!verify_witness(products[i], products[j], w)) return {false, "composed witness fails"};
            ++pairs;
        }
    }
    return {products.size() >= 8, std::to_string(products.size()) + " products isomorphic to symplectic(3), " +
                                       std::to_string(pairs) + " ordered pairs verified"};
}

Outcome criterion8() {
    const std::vector<std::string> displayed{"0000000011111111", "0000111100001111", "0011001100110011",
                                             "0101010101010101", "1111111111111111"};
    const auto basis = rm1_basis(4);
    bool rows_match = basis.rows() == displayed.size();
    for (std::size_t i = 0; rows_match && i < displayed.size(); ++i)
        rows_match = basis.row(i).to_string() == displayed[i];

    std::size_t rows = 0;
    std::size_t bent = 0;
    std::string first_failure;
    for (const auto& [label, m] : g_sdp_designs) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ++rows;
            if (is_bent(m.row(i))) {
                ++bent;
            } else if (first_failure.empty()) {
                first_failure = label + " row " + std::to_string(i);
            }
        }
    }
    std::string detail = std::string("RM(1,4) rows ") + (rows_match ? "match" : "differ") + ", " +
                         std::to_string(bent) + "/" + std::to_string(rows) + " rows bent over " +
                         std::to_string(g_sdp_designs.size()) + " SDP developments";
    if (!first_failure.empty()) detail += ", first non-bent: " + first_failure;
    return {rows_match && rows > 0 && bent == rows, detail};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::function<Outcome()> run;
        double limit;  // seconds; 0 means no ceiling
    };
    const std::vector<Criterion> criteria{
        {1, criterion1, kFastLimit},       {2, criterion2, kFastLimit}, {3, criterion3, kTableLimit},
        {4, criterion4, kOracleSuiteLimit}, {5, criterion5, 0},          {6, criterion6, 0},
        {7, criterion7, 0},                {8, criterion8, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        bool pass = o.pass;
        if (c.limit > 0 && secs > c.limit) {
            pass = false;
            o.detail += ", over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << o.detail << " [" << timing << "]"
                  << std::endl;
        failures += pass ? 0 : 1;
    }
    return failures;
}
