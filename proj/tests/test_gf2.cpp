#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "matrec/gf2.hpp"

using namespace matrec;

namespace {

BitMatrix k3_matrix() {
    // The 2x3 representation with columns 01, 10, 11.
    return BitMatrix(2, {BitVec::from_string("01"), BitVec::from_string("10"),
                         BitVec::from_string("11")});
}

BitVec random_vec(std::mt19937& rng, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) v.set(i);
    return v;
}

} // namespace

TEST_CASE("vector addition is coordinatewise XOR") {
    CHECK(BitVec::from_string("01") + BitVec::from_string("10") == BitVec::from_string("11"));
    CHECK(BitVec::from_string("11") + BitVec::from_string("11") == BitVec::from_string("00"));
    // the K3 circuit sums to zero
    CHECK(BitVec::from_string("01") + BitVec::from_string("11") == BitVec::from_string("10"));

    CHECK_THROWS_AS(BitVec(3) + BitVec(4), std::invalid_argument);
}

TEST_CASE("vector addition properties", "[property]") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 150;
        BitVec a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + BitVec(n) == a);
        CHECK((a + a).none());
        CHECK(a.weight() <= n);
    }
}

TEST_CASE("row reduction ranks and pivots") {
    auto rr = row_reduce(k3_matrix());
    CHECK(rr.rank == 2);
    CHECK(rr.pivots == std::vector<std::size_t>{0, 1});

    auto zero = row_reduce(BitMatrix::zero(3, 4));
    CHECK(zero.rank == 0);
    CHECK(zero.pivots.empty());

    auto id4 = row_reduce(BitMatrix::identity(4));
    CHECK(id4.rank == 4);
}

TEST_CASE("rank equals rank of transpose", "[property]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        std::vector<BitVec> cols;
        for (std::size_t j = 0; j < c; ++j) cols.push_back(random_vec(rng, r));
        BitMatrix a(r, cols);
        CHECK(row_reduce(a).rank == row_reduce(a.transpose()).rank);
    }
}

TEST_CASE("row space enumeration") {
    auto vs = row_space(k3_matrix());
    REQUIRE(vs.size() == 4);
    std::sort(vs.begin(), vs.end());
    std::vector<std::string> got;
    for (const auto& v : vs) got.push_back(v.to_string());
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"000", "011", "101", "110"});

    CHECK(row_space(BitMatrix::zero(2, 2)).size() == 1);
    CHECK(row_space(BitMatrix::identity(3)).size() == 8);
}

TEST_CASE("row space respects the rank cap") {
    Caps tight;
    tight.max_rank_exponent = 3;
    CHECK_THROWS_AS(row_space(BitMatrix::identity(4), tight), capacity_error);
    CHECK_NOTHROW(row_space(BitMatrix::identity(3), tight));
}

TEST_CASE("row space vectors are distinct and in span", "[property]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
        std::vector<BitVec> cols;
        for (std::size_t j = 0; j < c; ++j) cols.push_back(random_vec(rng, r));
        BitMatrix a(r, cols);
        auto vs = row_space(a);
        CHECK(vs.size() == (std::size_t{1} << row_reduce(a).rank));
        auto sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        // every vector lies in the span of the rows
        auto rows = a.row_vectors();
        BitMatrix row_mat(a.cols(), rows);
        for (const auto& v : vs) CHECK(in_span(row_mat, v));
    }
}

TEST_CASE("null space basis") {
    auto basis = null_space_basis(k3_matrix());
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == BitVec::from_string("111"));

    CHECK(null_space_basis(BitMatrix::identity(4)).empty());

    // M(K4): six weight-2 columns in GF(2)^4, rank 3, kernel of dimension 3
    std::vector<BitVec> cols;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            BitVec c(4);
            c.set(u);
            c.set(v);
            cols.push_back(c);
        }
    BitMatrix k4(4, cols);
    auto nb = null_space_basis(k4);
    CHECK(nb.size() == 3);
    for (const auto& x : nb) CHECK(k4.mul(x).none());
}

TEST_CASE("null space vectors are independent and annihilate A", "[property]") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 9;
        std::vector<BitVec> cols;
        for (std::size_t j = 0; j < c; ++j) cols.push_back(random_vec(rng, r));
        BitMatrix a(r, cols);
        auto nb = null_space_basis(a);
        CHECK(nb.size() == c - row_reduce(a).rank);
        Echelon e;
        for (const auto& x : nb) {
            CHECK(a.mul(x).none());
            CHECK(e.add(x));
        }
    }
}

TEST_CASE("span membership") {
    auto a = k3_matrix();
    CHECK(in_span(a, BitVec::from_string("11")));
    CHECK(in_span(a, BitVec::from_string("00")));

    BitMatrix partial(3, {BitVec::from_string("100"), BitVec::from_string("010")});
    CHECK_FALSE(in_span(partial, BitVec::from_string("001")));
    CHECK_THROWS_AS(in_span(partial, BitVec(2)), std::invalid_argument);
}

TEST_CASE("solver expresses vectors over generators") {
    std::vector<BitVec> gens{BitVec::from_string("01"), BitVec::from_string("10"),
                             BitVec::from_string("11")};
    GF2Solver solver(gens);
    CHECK(solver.rank() == 2);
    CHECK(solver.pivot_generators() == std::vector<std::size_t>{0, 1});
    auto combo = solver.express(BitVec::from_string("11"));
    REQUIRE(combo);
    BitVec sum(2);
    combo->for_each_set([&](std::size_t i) { sum += gens[i]; });
    CHECK(sum == BitVec::from_string("11"));
}
