#pragma once

// Dense GF(2) vectors and matrices.
//
// Bits are packed little-endian into 64-bit words: bit i lives in word i / 64
// at position i % 64. Bits past `size()` in the last word are always zero, so
// word-wise equality, hashing and popcounts need no masking.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdpkit {

class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t length);

    /// Parses a string of '0'/'1' characters.
    static BitVector from_string(std::string_view bits);
    static BitVector ones(std::size_t length);

    std::size_t size() const { return length_; }
    bool empty() const { return length_ == 0; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    std::size_t weight() const;
    bool none() const;

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    BitVector& operator|=(const BitVector& other);
    BitVector complemented() const;

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    std::string to_string() const;

    friend bool operator==(const BitVector& a, const BitVector& b) = default;
    friend auto operator<=>(const BitVector& a, const BitVector& b) = default;

private:
    void clear_tail();

    std::size_t length_ = 0;
    std::vector<Word> words_;
};

/// Length-checked XOR; throws DimensionError on mismatch.
BitVector bit_xor(const BitVector& a, const BitVector& b);
/// Every bit flipped (A + J in the row form).
BitVector complement(const BitVector& v);
std::size_t and_weight(const BitVector& a, const BitVector& b);

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept;
};
std::uint64_t hash_words(std::span<const BitVector::Word> words) noexcept;

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    explicit BitMatrix(std::vector<BitVector> rows);

    static BitMatrix identity(std::size_t n);
    static BitMatrix all_ones(std::size_t rows, std::size_t cols);
    /// Rows given as 0/1 strings.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool test(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }
    const std::vector<BitVector>& row_vectors() const { return rows_; }

    BitMatrix transposed() const;
    BitMatrix complemented() const;
    /// Submatrix made of the listed rows, in the given order.
    BitMatrix select_rows(std::span<const std::uint32_t> which) const;
    BitMatrix select_cols(std::span<const std::uint32_t> which) const;

    std::vector<std::size_t> row_sums() const;
    std::vector<std::size_t> col_sums() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// GF(2) rank by elimination on a copy.
std::size_t rank2(const BitMatrix& m);

/// Reduced row-echelon basis of the row space (rank2(m) rows).
std::vector<BitVector> row_basis(const BitMatrix& m);

inline constexpr std::size_t kRowSpanRankLimit = 24;

/// Every GF(2) combination of the rows, in Gray-code order starting at zero.
/// Throws FeasibilityError when the rank exceeds kRowSpanRankLimit.
std::vector<BitVector> row_span(const BitMatrix& m);

/// Number of row-space vectors of each Hamming weight (index = weight).
/// Same rank guard as row_span.
std::vector<std::uint64_t> weight_distribution(const BitMatrix& m);

/// First-order Reed-Muller basis: rows c_1..c_m then the all-ones word.
/// Row i (1-based) is 2^i alternating runs of 2^(m-i) zeros and ones.
BitMatrix rm1_basis(std::size_t m);

struct WalshSpectrum {
    std::vector<std::int64_t> coefficients;

    std::int64_t sum_of_squares() const;
};

/// W(a) = sum_x (-1)^(f(x) + a.x), by the fast butterfly.
WalshSpectrum walsh_spectrum(const BitVector& f);

/// All Walsh coefficients of magnitude 2^n on 2^(2n) inputs.
/// Odd log-length is a DimensionError, not a "false".
bool is_bent(const BitVector& f);

// Text format: "rows cols" on the first line, then one 0/1 string per row.
std::string to_text(const BitMatrix& m);
BitMatrix bit_matrix_from_text(std::string_view text);

std::ostream& operator<<(std::ostream& os, const BitVector& v);

/// Exact-match set over the rows of one matrix and (optionally) their complements.
/// Lookups hash the packed words directly and never allocate.
class RowLookup {
public:
    explicit RowLookup(const BitMatrix& m, bool with_complements);

    /// Index of the row equal to `v` (or whose complement equals it), or -1.
    struct Hit {
        std::int64_t row = -1;
        bool complemented = false;
        explicit operator bool() const { return row >= 0; }
    };
    Hit find(std::span<const BitVector::Word> v) const;

private:
    std::size_t words_per_row_;
    std::vector<BitVector::Word> keys_;  // flat, words_per_row_ per entry
    std::vector<std::int64_t> slots_;    // entry index or -1
    std::vector<std::uint32_t> entry_row_;
    std::vector<bool> entry_complement_;
    std::size_t mask_;
};

}  // namespace sdpkit
