#include "oracles.hpp"
#include "sdpkit/bits.hpp"
#include "sdpkit/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace sdpkit;

namespace {

BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1U);
    return v;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(random_vector(rng, c));
    return BitMatrix(std::move(rows));
}

}  // namespace

TEST_CASE("xor and complement on small words") {
    CHECK(bit_xor(BitVector::from_string("0011"), BitVector::from_string("0101")).to_string() == "0110");
    const auto v = BitVector::from_string("1011");
    CHECK(bit_xor(v, v).none());
    CHECK(bit_xor(v, BitVector(4)) == v);
    CHECK_THROWS_AS(bit_xor(BitVector(4), BitVector(5)), DimensionError);

    CHECK(complement(BitVector(4)).to_string() == "1111");
    CHECK(complement(complement(v)) == v);
    CHECK(complement(BitVector::from_string("1000")).to_string() == "0111");
}

TEST_CASE("xor is associative, commutative and self-inverse") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 150;
        const auto a = random_vector(rng, n);
        const auto b = random_vector(rng, n);
        const auto c = random_vector(rng, n);
        CHECK(bit_xor(bit_xor(a, b), c) == bit_xor(a, bit_xor(b, c)));
        CHECK(bit_xor(a, b) == bit_xor(b, a));
        CHECK(bit_xor(bit_xor(a, b), b) == a);
    }
}

TEST_CASE("tail bits stay clear after complement") {
    const auto v = complement(BitVector(70));
    CHECK(v.weight() == 70);
    CHECK(v.words()[1] == (BitVector::Word{1} << 6) - 1);
}

TEST_CASE("rank2 matches a plain elimination and ignores permutations") {
    CHECK(rank2(BitMatrix::identity(4)) == 4);
    CHECK(rank2(BitMatrix::all_ones(4, 4)) == 1);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const auto m = random_matrix(rng, 1 + rng() % 40, 1 + rng() % 90);
        const auto r = rank2(m);
        CHECK(r == oracle::rank(oracle::to_plain(m)));

        std::vector<std::uint32_t> rows(m.rows());
        std::vector<std::uint32_t> cols(m.cols());
        std::iota(rows.begin(), rows.end(), 0U);
        std::iota(cols.begin(), cols.end(), 0U);
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        CHECK(rank2(m.select_rows(rows).select_cols(cols)) == r);
    }
}

TEST_CASE("rank2 leaves its input alone") {
    const auto m = BitMatrix::from_strings({"110", "011", "101"});
    const auto copy = m;
    CHECK(rank2(m) == 2);
    CHECK(m == copy);
}

TEST_CASE("row span") {
    const auto single = row_span(BitMatrix::from_strings({"0110"}));
    CHECK(std::set<BitVector>(single.begin(), single.end()) ==
          std::set<BitVector>{BitVector(4), BitVector::from_string("0110")});

    const auto two = row_span(BitMatrix::from_strings({"0011", "0101"}));
    std::set<std::string> got;
    for (const auto& v : two) got.insert(v.to_string());
    CHECK(got == std::set<std::string>{"0000", "0011", "0101", "0110"});

    CHECK_THROWS_AS(row_span(BitMatrix::identity(25)), FeasibilityError);
    CHECK_THROWS_AS(weight_distribution(BitMatrix::identity(25)), FeasibilityError);

    const auto dist = weight_distribution(BitMatrix::identity(5));
    CHECK(dist == std::vector<std::uint64_t>{1, 5, 10, 10, 5, 1});
}

TEST_CASE("Reed-Muller basis") {
    CHECK(rm1_basis(1) == BitMatrix::from_strings({"01", "11"}));
    CHECK(rm1_basis(2) == BitMatrix::from_strings({"0011", "0101", "1111"}));
    // The five words displayed for RM(1,4).
    CHECK(rm1_basis(4) == BitMatrix::from_strings({"0000000011111111", "0000111100001111", "0011001100110011",
                                                   "0101010101010101", "1111111111111111"}));
    for (std::size_t m = 1; m <= 10; ++m) CHECK(rank2(rm1_basis(m)) == m + 1);
    CHECK_THROWS_AS(rm1_basis(0), ParameterError);
}

TEST_CASE("Walsh spectrum agrees with direct summation") {
    CHECK(walsh_spectrum(BitVector(4)).coefficients == std::vector<std::int64_t>{4, 0, 0, 0});
    const auto s = walsh_spectrum(BitVector::from_string("0001"));
    CHECK(std::all_of(s.coefficients.begin(), s.coefficients.end(), [](auto c) { return c == 2 || c == -2; }));

    std::mt19937_64 rng(3);
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto f = random_vector(rng, std::size_t{1} << m);
        const auto w = walsh_spectrum(f);
        const auto expect = oracle::walsh(oracle::to_plain(f));
        CHECK(std::equal(w.coefficients.begin(), w.coefficients.end(), expect.begin()));
        CHECK(w.sum_of_squares() == static_cast<std::int64_t>(1) << (2 * m));
    }
    CHECK_THROWS_AS(walsh_spectrum(BitVector(6)), DimensionError);
}

TEST_CASE("affine functions have a single peak") {
    const auto basis = rm1_basis(4);
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
        BitVector f(16);
        for (std::size_t i = 0; i < 5; ++i)
            if (mask >> i & 1U) f ^= basis.row(i);
        const auto w = walsh_spectrum(f).coefficients;
        CHECK(std::count_if(w.begin(), w.end(), [](auto c) { return c == 16 || c == -16; }) == 1);
        CHECK(std::count(w.begin(), w.end(), 0) == 15);
    }
}

TEST_CASE("bent test") {
    CHECK(is_bent(BitVector::from_string("0001")));
    CHECK_FALSE(is_bent(BitVector(4)));
    CHECK_THROWS_AS(is_bent(BitVector(8)), DimensionError);

    // Bentness survives complement and affine offsets.
    BitVector f(16);
    for (std::size_t x = 0; x < 16; ++x) f.set(x, ((x & (x >> 1)) ^ ((x >> 2) & (x >> 3))) & 1U);
    REQUIRE(is_bent(f));
    CHECK(is_bent(complement(f)));
    const auto basis = rm1_basis(4);
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
        BitVector g = f;
        for (std::size_t i = 0; i < 5; ++i)
            if (mask >> i & 1U) g ^= basis.row(i);
        CHECK(is_bent(g));
    }
}

TEST_CASE("matrix text round trip and errors") {
    const auto m = BitMatrix::from_strings({"101", "010"});
    CHECK(to_text(m) == "2 3\n101\n010\n");
    CHECK(bit_matrix_from_text(to_text(m)) == m);
    try {
        (void)bit_matrix_from_text("2 3\n101\n01x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(bit_matrix_from_text("2 3\n101\n"), ParseError);
}

TEST_CASE("row lookup finds rows and complements") {
    const auto m = BitMatrix::from_strings({"1100", "1010"});
    const RowLookup lookup(m, true);
    const auto hit = lookup.find(BitVector::from_string("0101").words());
    REQUIRE(hit);
    CHECK(hit.row == 1);
    CHECK(hit.complemented);
    CHECK_FALSE(lookup.find(BitVector::from_string("1111").words()));
}
