#include "sdpkit/design.hpp"

#include "sdpkit/errors.hpp"

#include <algorithm>
#include <bit>

namespace sdpkit {

std::string to_string(const DesignParams& p) {
    return "(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," + std::to_string(p.lambda) + ")";
}

DifferenceSet verify_difference_set(const GroupPtr& g, std::vector<Element> members) {
    if (members.empty()) throw ParameterError("difference set: member list is empty");
    const std::size_t v = g->order();
    for (Element m : members) {
        if (m >= v) throw DimensionError("difference set: element " + std::to_string(m) + " outside " + g->spec());
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw ParameterError("difference set: repeated member");
    }

    std::vector<std::size_t> counts(v, 0);
    for (Element a : members) {
        for (Element b : members) {
            if (a != b) ++counts[g->mul(a, g->inverse(b))];
        }
    }
    std::size_t lambda = v > 1 ? counts[1] : 0;
    for (Element e = 2; e < v; ++e) {
        if (counts[e] != lambda) {
            throw NotADifferenceSetError("not a difference set in " + g->spec() + ": " + g->word(1) + " occurs " +
                                             std::to_string(lambda) + " times but " + g->word(e) + " occurs " +
                                             std::to_string(counts[e]) + " times",
                                         1, lambda, e, counts[e]);
        }
    }

    DifferenceSet d;
    d.group_ = g;
    d.members_ = std::move(members);
    d.membership_.assign(v, 0);
    for (Element m : d.members_) d.membership_[m] = 1;
    d.params_ = DesignParams{v, d.members_.size(), lambda};
    return d;
}

bool SignedGroupRingElement::is_scalar(std::int64_t value) const {
    if (coeffs.empty() || coeffs[0] != value) return false;
    return std::all_of(coeffs.begin() + 1, coeffs.end(), [](std::int64_t c) { return c == 0; });
}

SignedGroupRingElement signed_autocorrelation(const GroupPtr& g, const std::vector<Element>& members) {
    const std::size_t v = g->order();
    std::vector<std::int64_t> sign(v, 1);
    for (Element m : members) sign.at(m) = -1;
    SignedGroupRingElement r{g, std::vector<std::int64_t>(v, 0)};
    // (sum_a s_a a)(sum_b s_b b^-1): coefficient of c collects s_a s_b over a b^-1 = c.
    for (Element a = 0; a < v; ++a) {
        for (Element b = 0; b < v; ++b) r.coeffs[g->mul(a, g->inverse(b))] += sign[a] * sign[b];
    }
    return r;
}

BitMatrix development_matrix(const FiniteGroup& g, const std::vector<Element>& members) {
    const std::size_t v = g.order();
    BitMatrix m(v, v);
    for (Element row = 0; row < v; ++row) {
        for (Element d : members) m.set(row, g.mul(row, d));
    }
    return m;
}

Development develop(const DifferenceSet& d) { return Development{d, development_matrix(*d.group(), d.members())}; }

BitMatrix complement_design(const Development& dev) { return dev.matrix.complemented(); }

SdpReport has_sdp(const BitMatrix& m) {
    SdpReport report;
    report.method = SdpReport::Method::TripleScan;
    const std::size_t v = m.rows();
    if (v == 0) {
        report.holds = true;
        return report;
    }
    const RowLookup lookup(m, true);
    const std::size_t words = m.row(0).words().size();
    std::vector<BitVector::Word> pair(words);
    std::vector<BitVector::Word> triple(words);
    for (std::size_t i = 0; i < v; ++i) {
        const auto ri = m.row(i).words();
        for (std::size_t j = i + 1; j < v; ++j) {
            const auto rj = m.row(j).words();
            for (std::size_t w = 0; w < words; ++w) pair[w] = ri[w] ^ rj[w];
            for (std::size_t k = j + 1; k < v; ++k) {
                const auto rk = m.row(k).words();
                for (std::size_t w = 0; w < words; ++w) triple[w] = pair[w] ^ rk[w];
                if (!lookup.find(triple)) {
                    BitVector sum = bit_xor(bit_xor(m.row(i), m.row(j)), m.row(k));
                    report.holds = false;
                    report.witness = SdpWitness{i, j, k, std::move(sum)};
                    return report;
                }
            }
        }
    }
    report.holds = true;
    return report;
}

std::size_t two_rank(const Development& dev) { return rank2(dev.matrix); }

std::optional<std::size_t> half_log2(std::size_t v) {
    if (v == 0 || !std::has_single_bit(v)) return std::nullopt;
    const auto e = static_cast<std::size_t>(std::countr_zero(v));
    if (e % 2 != 0) return std::nullopt;
    return e / 2;
}

SdpReport sdp_rank_screen(const BitMatrix& m) {
    SdpReport r;
    r.method = SdpReport::Method::RankScreen;
    const auto n = half_log2(m.rows());
    r.holds = n.has_value() && m.rows() == m.cols() && rank2(m) == 2 * *n + 2;
    return r;
}

BitMatrix symplectic_matrix(std::size_t n) {
    if (n < 1 || n > 5) throw ParameterError("symplectic_matrix: n must be in 1..5");
    // J4 - 2 I4 has -1 on the diagonal and +1 elsewhere.
    std::vector<int> k = {1};
    std::size_t size = 1;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t next = size * 4;
        std::vector<int> out(next * next);
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = 0; b < size; ++b)
                for (std::size_t c = 0; c < 4; ++c)
                    for (std::size_t d = 0; d < 4; ++d) {
                        out[(a * 4 + c) * next + b * 4 + d] = k[a * size + b] * (c == d ? -1 : 1);
                    }
        k = std::move(out);
        size = next;
    }
    BitMatrix a(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const int entry = -(k[r * size + c] - 1);
            if (entry != 0 && entry != 2) throw InternalFault("symplectic_matrix: entry outside {0,1}");
            if (entry == 2) a.set(r, c);
        }
    }
    return a;
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

class DifferenceSetSearch {
public:
    DifferenceSetSearch(const GroupPtr& g, std::size_t k, std::size_t lambda)
        : g_(g), k_(k), lambda_(lambda), counts_(g->order(), 0) {}

    std::vector<DifferenceSet> run() {
        extend(0);
        return std::move(found_);
    }

private:
    void extend(Element start) {
        if (chosen_.size() == k_) {
            found_.push_back(verify_difference_set(g_, chosen_));
            return;
        }
        const auto v = static_cast<Element>(g_->order());
        for (Element c = start; c + (k_ - chosen_.size()) <= v; ++c) {
            if (add(c)) extend(c + 1);
            remove(c);
        }
    }

    // Records the new quotients; false once any count passes lambda.
    bool add(Element c) {
        bool ok = true;
        const Element ci = g_->inverse(c);
        for (Element s : chosen_) {
            if (++counts_[g_->mul(c, g_->inverse(s))] > lambda_) ok = false;
            if (++counts_[g_->mul(s, ci)] > lambda_) ok = false;
        }
        chosen_.push_back(c);
        return ok;
    }

    void remove(Element c) {
        chosen_.pop_back();
        const Element ci = g_->inverse(c);
        for (Element s : chosen_) {
            --counts_[g_->mul(c, g_->inverse(s))];
            --counts_[g_->mul(s, ci)];
        }
    }

    GroupPtr g_;
    std::size_t k_;
    std::size_t lambda_;
    std::vector<std::size_t> counts_;
    std::vector<Element> chosen_;
    std::vector<DifferenceSet> found_;
};

}  // namespace

std::vector<DifferenceSet> enumerate_difference_sets(const GroupPtr& g, std::size_t k) {
    const std::size_t v = g->order();
    if (binomial_capped(v, k, kEnumerationLimit) > kEnumerationLimit) {
        throw FeasibilityError("enumerate_difference_sets: C(" + std::to_string(v) + "," + std::to_string(k) +
                               ") exceeds " + std::to_string(kEnumerationLimit));
    }
    if (k == 0 || k > v) return {};
    std::size_t lambda = 0;
    if (v > 1) {
        if ((k * (k - 1)) % (v - 1) != 0) return {};
        lambda = k * (k - 1) / (v - 1);
    }
    return DifferenceSetSearch(g, k, lambda).run();
}

DesignParams menon_params(std::size_t v) {
    const auto n = half_log2(v);
    if (!n || *n == 0) throw ParameterError("menon_params: " + std::to_string(v) + " is not 4^n with n >= 1");
    const std::size_t half = std::size_t{1} << (*n - 1);
    return DesignParams{v, v / 2 - half, v / 4 - half};
}

}  // namespace sdpkit
