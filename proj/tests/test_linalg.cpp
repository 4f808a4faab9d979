#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/linalg.hpp"

using namespace orbitlab;

namespace {

IntMat make(std::vector<std::vector<long>> rows) {
    IntMat m(static_cast<long>(rows.size()), rows.empty() ? 0 : static_cast<long>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

bool same_lattice_rows(const IntMat& a, const IntMat& b) { return row_hnf(a) == row_hnf(b); }

}  // namespace

TEST_CASE("column HNF transform invariant M*U = H") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        IntMat m(3, 4);
        for (long i = 0; i < 3; ++i)
            for (long j = 0; j < 4; ++j) m(i, j) = d(rng);
        ColHnf ch = col_hnf(m);
        CHECK(m * ch.u == ch.h);
        // U unimodular: integer inverse exists; check via solving columns
        for (long j = 0; j < 4; ++j) {
            IntVec e(4);
            e[j] = 1;
            CHECK(solve_int(ch.u, e).has_value());
        }
    }
}

TEST_CASE("row HNF of the [4 6] valuation matrix") {
    // lattice spanned by (2,0) and (1,1) equals the hand HNF of [[2,1],[0,1]]
    IntMat spanned = make({{2, 0}, {1, 1}});
    IntMat hand = row_hnf(spanned);
    CHECK(same_lattice_rows(spanned, hand));
    CHECK(same_lattice_rows(spanned, make({{1, 1}, {0, 2}})));
    CHECK_FALSE(same_lattice_rows(spanned, make({{1, 0}, {0, 1}})));
}

TEST_CASE("integer kernel") {
    IntMat m = make({{1, 2}});
    IntMat k = int_kernel(m);
    REQUIRE(k.rows() == 1);
    CHECK(k(0, 0) * 1 + k(0, 1) * 2 == 0);
    CHECK(content({k(0, 0), k(0, 1)}) == 1);

    // kernel of an injective map is trivial
    CHECK(int_kernel(make({{2, 1}, {0, 1}})).rows() == 0);

    // kernel of the zero map is everything
    IntMat z = int_kernel(make({{0, 0}}));
    CHECK(z.rows() == 2);
}

TEST_CASE("solve_int") {
    IntMat m = make({{2, 1}, {0, 1}});
    auto x = solve_int(m, {Integer(1), Integer(-1)});  // 2a + b = 1, b = -1
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == -1);
    CHECK_FALSE(solve_int(make({{2}}), {Integer(1)}).has_value());
    // solvable only over Q, not Z
    CHECK_FALSE(solve_int(make({{2, 0}, {0, 3}}), {Integer(1), Integer(1)}).has_value());
    // underdetermined with integer solution off the free=0 particular
    auto y = solve_int(make({{2, 3}}), {Integer(5)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] * 2 + (*y)[1] * 3 == 5);
}

TEST_CASE("reduce_mod_lattice is canonical") {
    IntMat rel = row_hnf(make({{2, -1}}));
    IntVec r = reduce_mod_lattice({Integer(3), Integer(0)}, rel);
    CHECK(r == IntVec{1, 1});
    // every coset member reduces to the same representative
    IntVec r2 = reduce_mod_lattice({Integer(-5), Integer(4)}, rel);
    CHECK(r2 == IntVec{1, 1});
}

TEST_CASE("smith normal form invariants") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        long rows = 2 + trial % 3, cols = 2 + (trial / 3) % 3;
        IntMat m(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) m(i, j) = d(rng);
        Snf s = smith_normal_form(m);
        CHECK(s.u * m * s.w == s.d);
        for (long i = 0; i + 1 < std::min(rows, cols); ++i) {
            if (s.d(i + 1, i + 1) == 0) continue;
            CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
        }
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
    }
}

TEST_CASE("rref and rational kernel") {
    RatMat m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    Rref rr = rref(m);
    CHECK(rr.rank == 1);
    RatMat k = rat_kernel(m);
    CHECK(k.rows() == 2);
    for (long r = 0; r < k.rows(); ++r)
        CHECK(k(r, 0) * 1 + k(r, 1) * 2 + k(r, 2) * 3 == 0);
}

TEST_CASE("left inverse") {
    RatMat v(2, 2);
    v(0, 0) = 2; v(0, 1) = 1; v(1, 0) = 0; v(1, 1) = 1;
    auto w = left_inverse(v);
    REQUIRE(w.has_value());
    CHECK((*w) * v == RatMat::identity(2));
    CHECK((*w)(0, 0) == Rational(1, 2));
    CHECK((*w)(0, 1) == Rational(-1, 2));
}

TEST_CASE("charpoly of the Fibonacci companion is x^2 - x - 1") {
    RatMat c(2, 2);
    c(0, 0) = 1; c(0, 1) = 1; c(1, 0) = 1; c(1, 1) = 0;
    RatVec chi = charpoly(c);
    CHECK(chi == RatVec{Rational(-1), Rational(-1), Rational(1)});
}

TEST_CASE("kronecker dimensions and entries") {
    RatMat a(1, 1), b(2, 2);
    a(0, 0) = 3;
    b(0, 0) = 1; b(0, 1) = 2; b(1, 0) = 0; b(1, 1) = 4;
    RatMat k = kronecker(a, b);
    CHECK(k.rows() == 2);
    CHECK(k(0, 1) == 6);
    CHECK(k(1, 1) == 12);
}
