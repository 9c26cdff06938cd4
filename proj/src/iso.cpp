#include "sdpkit/iso.hpp"

#include "sdpkit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <bit>
#include <map>
#include <numeric>

namespace sdpkit {

namespace {

using Word = BitVector::Word;

template <typename Key>
std::vector<std::pair<Key, std::uint64_t>> to_histogram(const std::map<Key, std::uint64_t>& counts) {
    return {counts.begin(), counts.end()};
}

std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return w;
}

// GF(2) rank of a handful of rows given as word spans; the rank stays small for
// the designs of interest so each reduction is cheap.
class IncrementalRank {
public:
    explicit IncrementalRank(std::size_t words) : words_(words) {}

    void reset() {
        basis_.clear();
        pivots_.clear();
    }

    void add(std::span<const Word> row) {
        scratch_.assign(row.begin(), row.end());
        for (std::size_t b = 0; b < pivots_.size(); ++b) {
            const std::size_t p = pivots_[b];
            if ((scratch_[p / 64] >> (p % 64)) & 1U) {
                const Word* base = basis_.data() + b * words_;
                for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= base[w];
            }
        }
        for (std::size_t w = 0; w < words_; ++w) {
            if (scratch_[w] != 0) {
                pivots_.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(scratch_[w])));
                basis_.insert(basis_.end(), scratch_.begin(), scratch_.end());
                return;
            }
        }
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    std::size_t words_;
    std::vector<Word> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<Word> scratch_;
};

SectionHistogram section_spectrum(const BitMatrix& m) {
    const std::size_t v = m.rows();
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
    if (v < 3) return {};
    const std::size_t words = m.row(0).words().size();
    std::vector<Word> inter(words);
    std::vector<std::size_t> meet(v);
    IncrementalRank rank(words);
    for (std::size_t i = 0; i < v; ++i) {
        const auto ri = m.row(i).words();
        for (std::size_t j = i + 1; j < v; ++j) {
            const auto rj = m.row(j).words();
            for (std::size_t w = 0; w < words; ++w) inter[w] = ri[w] & rj[w];
            std::size_t least = ~std::size_t{0};
            for (std::size_t k = 0; k < v; ++k) {
                if (k == i || k == j) continue;
                meet[k] = popcount_and(inter, m.row(k).words());
                least = std::min(least, meet[k]);
            }
            rank.reset();
            std::uint64_t size = 0;
            for (std::size_t k = 0; k < v; ++k) {
                if (k == i || k == j || meet[k] != least) continue;
                ++size;
                rank.add(m.row(k).words());
            }
            ++counts[{size, rank.rank()}];
        }
    }
    return to_histogram(counts);
}

Histogram triple_spectrum(const BitMatrix& m) {
    const std::size_t v = m.rows();
    std::vector<std::uint64_t> counts(m.cols() + 1, 0);
    if (v >= 3) {
        const std::size_t words = m.row(0).words().size();
        std::vector<Word> pair(words);
        for (std::size_t i = 0; i < v; ++i) {
            const auto ri = m.row(i).words();
            for (std::size_t j = i + 1; j < v; ++j) {
                const auto rj = m.row(j).words();
                for (std::size_t w = 0; w < words; ++w) pair[w] = ri[w] ^ rj[w];
                for (std::size_t k = j + 1; k < v; ++k) {
                    const auto rk = m.row(k).words();
                    std::size_t weight = 0;
                    for (std::size_t w = 0; w < words; ++w) weight += static_cast<std::size_t>(std::popcount(pair[w] ^ rk[w]));
                    ++counts[weight];
                }
            }
        }
    }
    Histogram h;
    for (std::size_t w = 0; w < counts.size(); ++w) {
        if (counts[w] != 0) h.emplace_back(w, counts[w]);
    }
    return h;
}

}  // namespace

DesignInvariant invariants(const BitMatrix& m) {
    DesignInvariant inv;
    inv.points = m.cols();
    inv.blocks = m.rows();
    inv.two_rank = rank2(m);
    if (inv.two_rank <= kRowSpanRankLimit) {
        const auto dist = weight_distribution(m);
        Histogram h;
        for (std::size_t w = 0; w < dist.size(); ++w) {
            if (dist[w] != 0) h.emplace_back(w, dist[w]);
        }
        inv.weight_enumerator = std::move(h);
    }
    if (m.rows() <= kTripleSpectrumPointLimit) inv.triple_spectrum = triple_spectrum(m);
    if (m.rows() <= kSectionSpectrumPointLimit && m.cols() <= kSectionSpectrumPointLimit) {
        inv.block_sections = section_spectrum(m);
        inv.point_sections = section_spectrum(m.transposed());
    }
    return inv;
}

std::string separating_field(const DesignInvariant& a, const DesignInvariant& b) {
    if (a.points != b.points || a.blocks != b.blocks) return "shape";
    if (a.two_rank != b.two_rank) return "two_rank";
    auto differs = [](const auto& x, const auto& y) { return x && y && *x != *y; };
    if (differs(a.weight_enumerator, b.weight_enumerator)) return "weight_enumerator";
    if (differs(a.triple_spectrum, b.triple_spectrum)) return "triple_spectrum";
    if (differs(a.block_sections, b.block_sections)) return "block_sections";
    if (differs(a.point_sections, b.point_sections)) return "point_sections";
    return {};
}

IsoWitness IsoWitness::identity(std::size_t rows, std::size_t cols) {
    IsoWitness w;
    w.row_perm.resize(rows);
    w.col_perm.resize(cols);
    std::iota(w.row_perm.begin(), w.row_perm.end(), 0U);
    std::iota(w.col_perm.begin(), w.col_perm.end(), 0U);
    return w;
}

BitMatrix apply_witness(const IsoWitness& w, const BitMatrix& b) {
    if (w.row_perm.size() != b.rows() || w.col_perm.size() != b.cols()) {
        throw DimensionError("apply_witness: witness does not match the matrix shape");
    }
    BitMatrix out(b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        const auto& src = b.row(w.row_perm[i]);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (src.test(w.col_perm[j])) out.set(i, j);
        }
    }
    return out;
}

namespace {

bool is_permutation_of_size(const std::vector<std::uint32_t>& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<char> seen(n, 0);
    for (auto x : p) {
        if (x >= n || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

}  // namespace

bool verify_witness(const BitMatrix& a, const BitMatrix& b, const IsoWitness& w) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (!is_permutation_of_size(w.row_perm, b.rows()) || !is_permutation_of_size(w.col_perm, b.cols())) return false;
    return apply_witness(w, b) == a;
}

std::string to_string(IsoResult::Verdict v) {
    switch (v) {
        case IsoResult::Verdict::Isomorphic:
            return "isomorphic";
        case IsoResult::Verdict::NotIsomorphic:
            return "not isomorphic";
        case IsoResult::Verdict::Indeterminate:
            return "indeterminate";
    }
    return "?";
}

// --- search -----------------------------------------------------------------------

namespace {

struct BudgetExceeded {};

std::uint64_t fmix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) { return fmix(h ^ fmix(x + 0x9e3779b97f4a7c15ULL)); }

// One incidence structure seen as a bipartite graph: vertices 0..rows-1 are
// blocks, rows..rows+cols-1 are points.
struct Side {
    const BitMatrix* matrix = nullptr;
    BitMatrix transposed;
};

// Refinement keys are hashes of isomorphism-invariant data, so a collision can
// only weaken a split, never make it unsound; leaves are verified exactly.
class IsoSearch {
public:
    IsoSearch(const BitMatrix& a, const BitMatrix& b, std::uint64_t budget)
        : rows_(a.rows()), cols_(a.cols()), budget_(budget) {
        a_.matrix = &a;
        b_.matrix = &b;
        a_.transposed = a.transposed();
        b_.transposed = b.transposed();
    }

    std::optional<IsoWitness> run() {
        if (rows_ == 0 || cols_ == 0) return IsoWitness::identity(rows_, cols_);
        std::vector<std::uint32_t> start(rows_ + cols_, 0);
        for (std::size_t j = 0; j < cols_; ++j) start[rows_ + j] = 1;
        return descend(start, start);
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    std::size_t vertex_count() const { return rows_ + cols_; }

    // Replaces colors by canonical ids of (color, key) over both sides. Returns
    // the new color count, or 0 when the two sides no longer match.
    std::size_t split(std::vector<std::uint32_t>& ca, std::vector<std::uint32_t>& cb) {
        const std::size_t nv = vertex_count();
        order_.resize(2 * nv);
        std::iota(order_.begin(), order_.end(), 0U);
        auto key = [&](std::uint32_t id) {
            return id < nv ? std::pair{ca[id], keys_a_[id]} : std::pair{cb[id - nv], keys_b_[id - nv]};
        };
        std::sort(order_.begin(), order_.end(), [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });

        std::uint32_t next = 0;
        std::ptrdiff_t balance = 0;
        auto prev = key(order_[0]);
        for (std::size_t p = 0; p < order_.size(); ++p) {
            const std::uint32_t id = order_[p];
            const auto k = key(id);
            if (k != prev) {
                if (balance != 0) return 0;
                ++next;
                prev = k;
            }
            if (id < nv) {
                ++balance;
                new_a_[id] = next;
            } else {
                --balance;
                new_b_[id - nv] = next;
            }
        }
        if (balance != 0) return 0;
        ca = new_a_;
        cb = new_b_;
        return next + 1;
    }

    // Order-independent hash of the color counts over the set bits of `words`;
    // `color` holds the colors of the opposite side of the bipartition.
    std::uint64_t profile(std::span<const Word> words, const std::uint32_t* color) {
        touched_.clear();
        for (std::size_t w = 0; w < words.size(); ++w) {
            for (Word bits = words[w]; bits != 0; bits &= bits - 1) {
                const auto c = color[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
                if (counts_[c]++ == 0) touched_.push_back(c);
            }
        }
        std::uint64_t h = 0;
        for (auto c : touched_) {
            h += fmix((static_cast<std::uint64_t>(c) << 32) ^ counts_[c]);
            counts_[c] = 0;
        }
        return h;
    }

    void degree_keys(const Side& s, const std::vector<std::uint32_t>& color, std::vector<std::uint64_t>& keys) {
        keys.resize(vertex_count());
        for (std::size_t i = 0; i < rows_; ++i) keys[i] = profile(s.matrix->row(i).words(), color.data() + rows_);
        for (std::size_t j = 0; j < cols_; ++j) keys[rows_ + j] = profile(s.transposed.row(j).words(), color.data());
    }

    // For each vertex x, the multiset over same-side vertices y of
    // (color(y), color profile of N(x) n N(y)).
    void triple_keys(const Side& s, const std::vector<std::uint32_t>& color, std::vector<std::uint64_t>& keys) {
        keys.resize(vertex_count());
        auto pass = [&](const BitMatrix& m, std::size_t offset, const std::uint32_t* other) {
            const std::size_t n = m.rows();
            if (n == 0) return;
            const std::size_t words = m.row(0).words().size();
            std::vector<Word> inter(words);
            seen_.resize(n);
            for (auto& v : seen_) v.clear();
            for (std::size_t x = 0; x < n; ++x) {
                const auto rx = m.row(x).words();
                for (std::size_t y = x + 1; y < n; ++y) {
                    const auto ry = m.row(y).words();
                    for (std::size_t w = 0; w < words; ++w) inter[w] = rx[w] & ry[w];
                    const std::uint64_t p = profile(inter, other);
                    seen_[x].push_back(mix(color[offset + y], p));
                    seen_[y].push_back(mix(color[offset + x], p));
                }
            }
            for (std::size_t x = 0; x < n; ++x) {
                std::sort(seen_[x].begin(), seen_[x].end());
                std::uint64_t h = 0x51ed;
                for (auto t : seen_[x]) h = mix(h, t);
                keys[offset + x] = h;
            }
        };
        pass(*s.matrix, 0, color.data() + rows_);
        pass(s.transposed, rows_, color.data());
    }

    std::size_t refine(std::vector<std::uint32_t>& ca, std::vector<std::uint32_t>& cb) {
        const std::size_t nv = vertex_count();
        new_a_.resize(nv);
        new_b_.resize(nv);
        counts_.assign(nv + 1, 0);
        std::size_t colors = 1 + *std::max_element(ca.begin(), ca.end());
        while (true) {
            while (true) {
                degree_keys(a_, ca, keys_a_);
                degree_keys(b_, cb, keys_b_);
                const std::size_t refined = split(ca, cb);
                if (refined == 0) return 0;
                if (refined == colors) break;
                colors = refined;
            }
            if (colors == nv) return colors;
            triple_keys(a_, ca, keys_a_);
            triple_keys(b_, cb, keys_b_);
            const std::size_t refined = split(ca, cb);
            if (refined == 0) return 0;
            if (refined == colors) return colors;
            colors = refined;
        }
    }

    std::optional<IsoWitness> descend(std::vector<std::uint32_t> ca, std::vector<std::uint32_t> cb) {
        if (++nodes_ > budget_) throw BudgetExceeded{};
        const std::size_t colors = refine(ca, cb);
        if (colors == 0) return std::nullopt;
        const std::size_t nv = vertex_count();

        if (colors == nv) {
            std::vector<std::uint32_t> a_of(nv);
            std::vector<std::uint32_t> b_of(nv);
            for (std::uint32_t x = 0; x < nv; ++x) {
                a_of[ca[x]] = x;
                b_of[cb[x]] = x;
            }
            IsoWitness w;
            w.row_perm.resize(rows_);
            w.col_perm.resize(cols_);
            for (std::size_t c = 0; c < nv; ++c) {
                const auto x = a_of[c];
                const auto y = b_of[c];
                if (x < rows_) {
                    w.row_perm[x] = y;
                } else {
                    w.col_perm[x - rows_] = static_cast<std::uint32_t>(y - rows_);
                }
            }
            if (verify_witness(*a_.matrix, *b_.matrix, w)) return w;
            return std::nullopt;
        }

        // Smallest non-singleton block cell, lowest color id on ties; point cells
        // only once the blocks are discrete. Two individualized blocks split the
        // points four ways and the other blocks by triple intersections, while a
        // block and one of its points barely split anything.
        std::vector<std::uint32_t> size(colors, 0);
        std::vector<char> block_cell(colors, 0);
        for (auto c : ca) ++size[c];
        for (std::size_t i = 0; i < rows_; ++i) block_cell[ca[i]] = 1;
        const bool blocks_open = std::any_of(ca.begin(), ca.begin() + static_cast<std::ptrdiff_t>(rows_),
                                             [&](std::uint32_t c) { return size[c] > 1; });
        std::uint32_t target = 0;
        std::uint32_t best = ~0U;
        for (std::uint32_t c = 0; c < colors; ++c) {
            if (blocks_open && !block_cell[c]) continue;
            if (size[c] > 1 && size[c] < best) {
                best = size[c];
                target = c;
            }
        }
        std::uint32_t u = 0;
        while (ca[u] != target) ++u;
        const auto fresh = static_cast<std::uint32_t>(colors);
        for (std::uint32_t w = 0; w < nv; ++w) {
            if (cb[w] != target) continue;
            auto na = ca;
            auto nb = cb;
            na[u] = fresh;
            nb[w] = fresh;
            if (auto found = descend(std::move(na), std::move(nb))) return found;
        }
        return std::nullopt;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    Side a_;
    Side b_;
    std::vector<std::uint64_t> keys_a_;
    std::vector<std::uint64_t> keys_b_;
    std::vector<std::uint32_t> new_a_;
    std::vector<std::uint32_t> new_b_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::vector<std::uint64_t>> seen_;
};

void require_same_shape(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("isomorphism: shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " differ");
    }
}

}  // namespace

IsoResult search_isomorphism(const BitMatrix& a, const BitMatrix& b, std::uint64_t budget) {
    require_same_shape(a, b);
    IsoResult result;
    IsoSearch search(a, b, budget);
    try {
        auto w = search.run();
        result.nodes = search.nodes();
        if (w) {
            if (!verify_witness(a, b, *w)) throw InternalFault("isomorphism search returned an invalid witness");
            result.verdict = IsoResult::Verdict::Isomorphic;
            result.witness = std::move(w);
        } else {
            result.verdict = IsoResult::Verdict::NotIsomorphic;
            result.separated_by = "search";
        }
    } catch (const BudgetExceeded&) {
        result.verdict = IsoResult::Verdict::Indeterminate;
        result.nodes = search.nodes();
    }
    return result;
}

IsoResult are_isomorphic(const BitMatrix& a, const DesignInvariant& ia, const BitMatrix& b, const DesignInvariant& ib,
                         std::uint64_t budget) {
    require_same_shape(a, b);
    if (auto field = separating_field(ia, ib); !field.empty()) {
        IsoResult r;
        r.verdict = IsoResult::Verdict::NotIsomorphic;
        r.separated_by = std::move(field);
        return r;
    }
    return search_isomorphism(a, b, budget);
}

IsoResult are_isomorphic(const BitMatrix& a, const BitMatrix& b, std::uint64_t budget) {
    require_same_shape(a, b);
    if (a == b) {
        IsoResult r;
        r.verdict = IsoResult::Verdict::Isomorphic;
        r.witness = IsoWitness::identity(a.rows(), a.cols());
        return r;
    }
    return are_isomorphic(a, invariants(a), b, invariants(b), budget);
}

IsoWitness product_iso_witness(const IsoWitness& w1, const IsoWitness& w2, const BitMatrix& a_product,
                               const BitMatrix& b_product) {
    const std::size_t v1 = w1.row_perm.size();
    const std::size_t v2 = w2.row_perm.size();
    if (w1.col_perm.size() != v1 || w2.col_perm.size() != v2) {
        throw DimensionError("product_iso_witness: factor witnesses must be square");
    }
    const std::size_t v = v1 * v2;
    if (a_product.rows() != v || a_product.cols() != v || b_product.rows() != v || b_product.cols() != v) {
        throw DimensionError("product_iso_witness: product matrices are not " + std::to_string(v) + "x" +
                             std::to_string(v));
    }

    // Block-diagonal lift of the first factor's witness, then the block lift of the
    // second factor's (identity blocks of size v1), composed.
    auto lift_diagonal = [&](const std::vector<std::uint32_t>& p) {
        std::vector<std::uint32_t> out(v);
        for (std::size_t blk = 0; blk < v2; ++blk)
            for (std::size_t i = 0; i < v1; ++i) out[blk * v1 + i] = static_cast<std::uint32_t>(blk * v1 + p[i]);
        return out;
    };
    auto lift_blocks = [&](const std::vector<std::uint32_t>& p) {
        std::vector<std::uint32_t> out(v);
        for (std::size_t blk = 0; blk < v2; ++blk)
            for (std::size_t i = 0; i < v1; ++i) out[blk * v1 + i] = static_cast<std::uint32_t>(p[blk] * v1 + i);
        return out;
    };
    auto compose = [&](const std::vector<std::uint32_t>& outer, const std::vector<std::uint32_t>& inner) {
        std::vector<std::uint32_t> out(v);
        for (std::size_t x = 0; x < v; ++x) out[x] = outer[inner[x]];
        return out;
    };
    // w.row_perm[r] = lift2(lift1(r)) since b_product[lift(r)] is read through both.
    IsoWitness w;
    w.row_perm = compose(lift_blocks(w2.row_perm), lift_diagonal(w1.row_perm));
    w.col_perm = compose(lift_blocks(w2.col_perm), lift_diagonal(w1.col_perm));
    if (!verify_witness(a_product, b_product, w)) {
        throw InternalFault("product_iso_witness: lifted witness does not carry the product designs onto each other");
    }
    return w;
}

// --- classification --------------------------------------------------------------

bool ClassificationReport::resolved() const {
    return std::none_of(classes.begin(), classes.end(), [](const DesignClass& c) { return c.unresolved; });
}

ClassificationReport classify(const std::vector<BitMatrix>& designs, const ClassifyOptions& options) {
    ClassificationReport report;
    if (designs.empty()) return report;
    for (const auto& d : designs) require_same_shape(designs.front(), d);

    std::vector<DesignInvariant> fingerprints(designs.size());
    std::size_t jobs = options.jobs != 0 ? options.jobs : std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, designs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < designs.size(); ++i) fingerprints[i] = invariants(designs[i]);
    } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        for (std::size_t t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < designs.size(); i = next++) {
                    try {
                        fingerprints[i] = invariants(designs[i]);
                    } catch (...) {
                        const std::lock_guard lock(failure_lock);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& w : workers) w.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (std::size_t idx = 0; idx < designs.size(); ++idx) {
        const auto& design = designs[idx];
        DesignInvariant& inv = fingerprints[idx];
        bool placed = false;
        bool unsure = false;
        for (std::size_t c = 0; c < report.classes.size() && !placed; ++c) {
            auto& cls = report.classes[c];
            if (!separating_field(cls.invariant, inv).empty()) continue;
            const auto& rep = designs[cls.representative];
            IsoResult r = rep == design ? IsoResult{IsoResult::Verdict::Isomorphic,
                                                    IsoWitness::identity(design.rows(), design.cols()), {}, 0}
                                        : search_isomorphism(design, rep, options.budget);
            report.search_nodes += r.nodes;
            if (r.verdict == IsoResult::Verdict::Isomorphic) {
                cls.members.push_back(idx);
                cls.witnesses.push_back(std::move(*r.witness));
                report.class_of.push_back(c);
                placed = true;
            } else if (r.verdict == IsoResult::Verdict::Indeterminate) {
                cls.unresolved = true;
                unsure = true;
            }
        }
        if (!placed) {
            DesignClass cls;
            cls.representative = idx;
            cls.members.push_back(idx);
            cls.witnesses.push_back(IsoWitness::identity(design.rows(), design.cols()));
            cls.invariant = std::move(inv);
            cls.unresolved = unsure;
            report.class_of.push_back(report.classes.size());
            report.classes.push_back(std::move(cls));
        }
    }
    return report;
}

}  // namespace sdpkit
