#include "sdpkit/bits.hpp"

#include "sdpkit/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace sdpkit {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits; }

void require_same_length(const BitVector& a, const BitVector& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
}

// log2 of n if n is a power of two, else -1.
int exact_log2(std::size_t n) {
    if (n == 0 || !std::has_single_bit(n)) return -1;
    return std::countr_zero(n);
}

}  // namespace

BitVector::BitVector(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw ParseError(std::string("bit string contains '") + bits[i] + "'", 0, 0);
        }
    }
    return v;
}

BitVector BitVector::ones(std::size_t length) {
    BitVector v(length);
    std::fill(v.words_.begin(), v.words_.end(), ~Word{0});
    v.clear_tail();
    return v;
}

void BitVector::set(std::size_t i, bool value) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

bool BitVector::none() const {
    return std::all_of(words_.begin(), words_.end(), [](Word x) { return x == 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_length(*this, other, "xor");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    require_same_length(*this, other, "and");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    require_same_length(*this, other, "or");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

BitVector BitVector::complemented() const {
    BitVector v(*this);
    for (Word& x : v.words_) x = ~x;
    v.clear_tail();
    return v;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if (test(i)) s[i] = '1';
    }
    return s;
}

void BitVector::clear_tail() {
    const std::size_t used = length_ % kWordBits;
    if (used != 0 && !words_.empty()) words_.back() &= (Word{1} << used) - 1;
}

BitVector bit_xor(const BitVector& a, const BitVector& b) {
    BitVector r(a);
    r ^= b;
    return r;
}

BitVector complement(const BitVector& v) { return v.complemented(); }

std::size_t and_weight(const BitVector& a, const BitVector& b) {
    require_same_length(a, b, "and_weight");
    std::size_t w = 0;
    auto wa = a.words();
    auto wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) w += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
    return w;
}

std::uint64_t hash_words(std::span<const BitVector::Word> words) noexcept {
    // splitmix-style mixing per word
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words) {
        std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return h;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
    return static_cast<std::size_t>(hash_words(v.words()) ^ v.size());
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_string(); }

// --- BitMatrix -------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix::BitMatrix(std::vector<BitVector> rows) : cols_(rows.empty() ? 0 : rows.front().size()), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
        if (r.size() != cols_) throw DimensionError("BitMatrix: rows of unequal length");
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::all_ones(std::size_t rows, std::size_t cols) {
    return BitMatrix(std::vector<BitVector>(rows, BitVector::ones(cols)));
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    std::vector<BitVector> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(BitVector::from_string(r));
    return BitMatrix(std::move(v));
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (test(r, c)) t.set(c, r);
        }
    }
    return t;
}

BitMatrix BitMatrix::complemented() const {
    std::vector<BitVector> v;
    v.reserve(rows());
    for (const auto& r : rows_) v.push_back(r.complemented());
    BitMatrix m(std::move(v));
    m.cols_ = cols_;
    return m;
}

BitMatrix BitMatrix::select_rows(std::span<const std::uint32_t> which) const {
    BitMatrix m(0, cols_);
    m.rows_.reserve(which.size());
    for (auto r : which) m.rows_.push_back(rows_.at(r));
    return m;
}

BitMatrix BitMatrix::select_cols(std::span<const std::uint32_t> which) const {
    BitMatrix m(rows(), which.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < which.size(); ++c) {
            if (test(r, which[c])) m.set(r, c);
        }
    }
    return m;
}

std::vector<std::size_t> BitMatrix::row_sums() const {
    std::vector<std::size_t> s;
    s.reserve(rows());
    for (const auto& r : rows_) s.push_back(r.weight());
    return s;
}

std::vector<std::size_t> BitMatrix::col_sums() const {
    std::vector<std::size_t> s(cols_, 0);
    for (const auto& r : rows_) {
        for (std::size_t c = 0; c < cols_; ++c) s[c] += r.test(c);
    }
    return s;
}

// --- elimination -------------------------------------------------------------

std::vector<BitVector> row_basis(const BitMatrix& m) {
    std::vector<BitVector> rows = m.row_vectors();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].test(c)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r].test(c)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

std::size_t rank2(const BitMatrix& m) {
    // Forward elimination only; cheaper than row_basis when only the count matters.
    std::vector<BitVector> rows = m.row_vectors();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].test(c)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r].test(c)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<BitVector> guarded_basis(const BitMatrix& m) {
    auto basis = row_basis(m);
    if (basis.size() > kRowSpanRankLimit) {
        throw FeasibilityError("row span has rank " + std::to_string(basis.size()) + " > " +
                               std::to_string(kRowSpanRankLimit));
    }
    return basis;
}

}  // namespace

std::vector<BitVector> row_span(const BitMatrix& m) {
    const auto basis = guarded_basis(m);
    const std::size_t count = std::size_t{1} << basis.size();
    std::vector<BitVector> span;
    span.reserve(count);
    BitVector cur(m.cols());
    span.push_back(cur);
    for (std::size_t i = 1; i < count; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        span.push_back(cur);
    }
    return span;
}

std::vector<std::uint64_t> weight_distribution(const BitMatrix& m) {
    const auto basis = guarded_basis(m);
    std::vector<std::uint64_t> dist(m.cols() + 1, 0);
    const std::size_t count = std::size_t{1} << basis.size();
    BitVector cur(m.cols());
    dist[0] = 1;
    for (std::size_t i = 1; i < count; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        ++dist[cur.weight()];
    }
    return dist;
}

BitMatrix rm1_basis(std::size_t m) {
    if (m < 1) throw ParameterError("rm1_basis: m must be at least 1");
    if (m >= 32) throw FeasibilityError("rm1_basis: length 2^m too large");
    const std::size_t n = std::size_t{1} << m;
    BitMatrix basis(m + 1, n);
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t run = std::size_t{1} << (m - i);
        for (std::size_t p = 0; p < n; ++p) {
            if ((p / run) % 2 == 1) basis.set(i - 1, p);
        }
    }
    basis.row(m) = BitVector::ones(n);
    return basis;
}

// --- Walsh ----------------------------------------------------------------------

std::int64_t WalshSpectrum::sum_of_squares() const {
    std::int64_t s = 0;
    for (auto c : coefficients) s += c * c;
    return s;
}

WalshSpectrum walsh_spectrum(const BitVector& f) {
    if (exact_log2(f.size()) < 0) {
        throw DimensionError("walsh_spectrum: length " + std::to_string(f.size()) + " is not a power of two");
    }
    const std::size_t n = f.size();
    std::vector<std::int64_t> a(n);
    for (std::size_t x = 0; x < n; ++x) a[x] = f.test(x) ? -1 : 1;
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const auto u = a[j];
                const auto v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
        }
    }
    return WalshSpectrum{std::move(a)};
}

bool is_bent(const BitVector& f) {
    const int m = exact_log2(f.size());
    if (m < 0 || m % 2 != 0) {
        throw DimensionError("is_bent: length " + std::to_string(f.size()) + " is not 2^(2n)");
    }
    const std::int64_t target = std::int64_t{1} << (m / 2);
    const auto spectrum = walsh_spectrum(f);
    return std::all_of(spectrum.coefficients.begin(), spectrum.coefficients.end(),
                       [&](std::int64_t c) { return std::llabs(c) == target; });
}

// --- text -----------------------------------------------------------------------

std::string to_text(const BitMatrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols() << '\n';
    for (const auto& r : m.row_vectors()) os << r.to_string() << '\n';
    return os.str();
}

BitMatrix bit_matrix_from_text(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("matrix: empty input", 1, 1);

    std::istringstream header(lines[0]);
    long long rows = -1;
    long long cols = -1;
    std::string extra;
    if (!(header >> rows >> cols) || (header >> extra) || rows < 0 || cols < 0) {
        throw ParseError("matrix: expected \"rows cols\" header", 1, 1);
    }
    if (lines.size() != static_cast<std::size_t>(rows) + 1) {
        throw ParseError("matrix: header declares " + std::to_string(rows) + " rows, found " +
                             std::to_string(lines.size() - 1),
                         lines.size(), 1);
    }
    BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) {
        const auto& line = lines[r + 1];
        if (line.size() != static_cast<std::size_t>(cols)) {
            throw ParseError("matrix: row has " + std::to_string(line.size()) + " entries, expected " +
                                 std::to_string(cols),
                             r + 2, 1);
        }
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (line[c] == '1') {
                m.set(r, c);
            } else if (line[c] != '0') {
                throw ParseError(std::string("matrix: unexpected character '") + line[c] + "'", r + 2, c + 1);
            }
        }
    }
    return m;
}

// --- RowLookup ------------------------------------------------------------------

RowLookup::RowLookup(const BitMatrix& m, bool with_complements)
    : words_per_row_((m.cols() + BitVector::kWordBits - 1) / BitVector::kWordBits) {
    const std::size_t entries = m.rows() * (with_complements ? 2 : 1);
    std::size_t capacity = 16;
    while (capacity < entries * 2) capacity <<= 1;
    mask_ = capacity - 1;
    slots_.assign(capacity, -1);
    keys_.reserve(entries * words_per_row_);

    auto insert = [&](const BitVector& v, std::uint32_t row, bool comp) {
        std::size_t slot = hash_words(v.words()) & mask_;
        while (slots_[slot] >= 0) {
            const auto e = static_cast<std::size_t>(slots_[slot]);
            if (std::equal(v.words().begin(), v.words().end(), keys_.begin() + e * words_per_row_)) return;
            slot = (slot + 1) & mask_;
        }
        slots_[slot] = static_cast<std::int64_t>(entry_row_.size());
        keys_.insert(keys_.end(), v.words().begin(), v.words().end());
        entry_row_.push_back(row);
        entry_complement_.push_back(comp);
    };

    for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r), static_cast<std::uint32_t>(r), false);
    if (with_complements) {
        for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r).complemented(), static_cast<std::uint32_t>(r), true);
    }
}

RowLookup::Hit RowLookup::find(std::span<const BitVector::Word> v) const {
    std::size_t slot = hash_words(v) & mask_;
    while (slots_[slot] >= 0) {
        const auto e = static_cast<std::size_t>(slots_[slot]);
        if (std::equal(v.begin(), v.end(), keys_.begin() + e * words_per_row_)) {
            return Hit{entry_row_[e], entry_complement_[e]};
        }
        slot = (slot + 1) & mask_;
    }
    return Hit{};
}

}  // namespace sdpkit
