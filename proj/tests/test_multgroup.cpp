#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/multgroup.hpp"

using namespace orbitlab;

namespace {

MultSubgroup group(std::initializer_list<const char*> gens) {
    std::vector<Rational> g;
    for (const char* s : gens) g.push_back(parse_rational(s));
    return build_group(g);
}

Rational power_product(const MultSubgroup& g, const ExponentWitness& w) {
    Rational acc(w.torsion);
    for (size_t j = 0; j < w.exponents.size(); ++j)
        acc *= rational_pow(g.generators()[j], w.exponents[j].get_si());
    return acc;
}

}  // namespace

TEST_CASE("build_group fixtures") {
    MultSubgroup g2 = group({"2"});
    CHECK(g2.support().primes() == std::vector<Integer>{2});
    CHECK(g2.lattice_basis().cols() == 1);
    CHECK(g2.lattice_basis()(0, 0) == 1);

    MultSubgroup g23 = group({"2", "3"});
    CHECK(g23.support().primes() == std::vector<Integer>{2, 3});
    CHECK(g23.lattice_basis() == IntMat::identity(2));

    // hand HNF of [[2,1],[0,1]]: same lattice as the columns (2,0), (1,1)
    MultSubgroup g46 = group({"4", "6"});
    CHECK(g46.support().primes() == std::vector<Integer>{2, 3});
    IntMat expected(2, 2);
    expected(0, 0) = 2; expected(0, 1) = 1;
    expected(1, 0) = 0; expected(1, 1) = 1;
    ColHnf canon = col_hnf(expected);
    IntMat canon_basis(2, 2);
    for (long i = 0; i < 2; ++i)
        for (long k = 0; k < 2; ++k) canon_basis(i, k) = canon.h(i, k);
    CHECK(g46.lattice_basis() == canon_basis);

    CHECK_THROWS_AS(build_group({Rational(0)}), Error);
}

TEST_CASE("contains fixtures") {
    MultSubgroup g2 = group({"2"});
    auto w8 = contains(g2, make_rational(8));
    REQUIRE(std::holds_alternative<ExponentWitness>(w8));
    CHECK(std::get<ExponentWitness>(w8).exponents == IntVec{3});
    CHECK(std::get<ExponentWitness>(w8).torsion == 1);

    auto w3 = contains(g2, make_rational(3));
    REQUIRE(std::holds_alternative<NotMember>(w3));
    CHECK(std::get<NotMember>(w3).reason == NotMemberReason::Support);

    // 2/3 = 4^1 * 6^-1
    MultSubgroup g46 = group({"4", "6"});
    auto w = contains(g46, make_rational(2, 3));
    REQUIRE(std::holds_alternative<ExponentWitness>(w));
    CHECK(std::get<ExponentWitness>(w).exponents == IntVec{1, -1});
    CHECK(std::get<ExponentWitness>(w).torsion == 1);
    CHECK(power_product(g46, std::get<ExponentWitness>(w)) == make_rational(2, 3));
}

TEST_CASE("decompose canonical fixtures") {
    MultSubgroup g23 = group({"2", "3"});
    auto w12 = decompose(g23, make_rational(12));
    REQUIRE(std::holds_alternative<ExponentWitness>(w12));
    CHECK(std::get<ExponentWitness>(w12).exponents == IntVec{2, 1});

    // canonical (1,1) rather than (3,0): HNF-reduce against the relation (2,-1)
    MultSubgroup g24 = group({"2", "4"});
    auto w8 = decompose(g24, make_rational(8));
    REQUIRE(std::holds_alternative<ExponentWitness>(w8));
    CHECK(std::get<ExponentWitness>(w8).exponents == IntVec{1, 1});
    CHECK(power_product(g24, std::get<ExponentWitness>(w8)) == make_rational(8));

    MultSubgroup g2 = group({"2"});
    auto neg = decompose(g2, make_rational(-2));
    REQUIRE(std::holds_alternative<NotMember>(neg));
    CHECK(std::get<NotMember>(neg).reason == NotMemberReason::Sign);
}

TEST_CASE("decompose is a pure function (bit-for-bit canonical)") {
    MultSubgroup g = group({"4", "6", "-12"});
    Rational x = make_rational(-288);  // 4 * 6 * (-12)
    auto a = decompose(g, x);
    auto b = decompose(g, x);
    REQUIRE(std::holds_alternative<ExponentWitness>(a));
    CHECK(std::get<ExponentWitness>(a).exponents == std::get<ExponentWitness>(b).exponents);
    CHECK(power_product(g, std::get<ExponentWitness>(a)) == x);
    // +288 needs an even count of the negative generator, which the
    // valuation system forbids
    auto pos = decompose(g, -x);
    REQUIRE(std::holds_alternative<NotMember>(pos));
    CHECK(std::get<NotMember>(pos).reason == NotMemberReason::Sign);
}

TEST_CASE("completeness on the 2^a 3^b grid") {
    MultSubgroup g23 = group({"2", "3"});
    for (int a = -15; a <= 15; ++a)
        for (int b = -15; b <= 15; ++b) {
            Rational x = rational_pow(make_rational(2), a) * rational_pow(make_rational(3), b);
            auto w = contains(g23, x);
            REQUIRE(std::holds_alternative<ExponentWitness>(w));
            CHECK(std::get<ExponentWitness>(w).exponents == IntVec{a, b});
            // negative values carry a sign obstruction in <2,3>
            CHECK(std::holds_alternative<NotMember>(contains(g23, -x)));
        }
    CHECK(std::holds_alternative<NotMember>(contains(g23, make_rational(5))));
    CHECK(std::holds_alternative<NotMember>(contains(g23, make_rational(7))));
    CHECK(std::holds_alternative<NotMember>(contains(g23, make_rational(10, 7))));
}

TEST_CASE("witness soundness on random members") {
    MultSubgroup g = group({"-2", "6", "10"});
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Rational x = rational_pow(make_rational(-2), e(rng)) *
                     rational_pow(make_rational(6), e(rng)) *
                     rational_pow(make_rational(10), e(rng));
        auto w = contains(g, x);
        REQUIRE(std::holds_alternative<ExponentWitness>(w));
        CHECK(power_product(g, std::get<ExponentWitness>(w)) == x);
    }
}

TEST_CASE("sign handling with -1 in the group") {
    MultSubgroup g = group({"-2", "2"});  // contains -1 = (-2)/2
    CHECK(g.contains_minus_one());
    auto w = contains(g, make_rational(-1));
    REQUIRE(std::holds_alternative<ExponentWitness>(w));
    CHECK(power_product(g, std::get<ExponentWitness>(w)) == make_rational(-1));

    MultSubgroup gneg = group({"-2"});
    CHECK_FALSE(gneg.contains_minus_one());
    CHECK(std::holds_alternative<ExponentWitness>(contains(gneg, make_rational(4))));
    CHECK(std::holds_alternative<ExponentWitness>(contains(gneg, make_rational(-8))));
    CHECK(std::holds_alternative<NotMember>(contains(gneg, make_rational(8))));
}

TEST_CASE("radical membership fixtures") {
    MultSubgroup g4 = group({"4"});
    auto r2 = radical_contains(g4, make_rational(2));
    REQUIRE(std::holds_alternative<RadicalWitness>(r2));
    CHECK(std::get<RadicalWitness>(r2).power == 2);
    CHECK(std::get<RadicalWitness>(r2).witness.exponents == IntVec{1});

    // (-2)^2 = 4 in <2>
    MultSubgroup g2 = group({"2"});
    auto rneg = radical_contains(g2, make_rational(-2));
    REQUIRE(std::holds_alternative<RadicalWitness>(rneg));
    CHECK(std::get<RadicalWitness>(rneg).power == 2);
    CHECK(std::get<RadicalWitness>(rneg).witness.exponents == IntVec{2});

    CHECK(std::holds_alternative<NotMember>(radical_contains(g2, make_rational(3))));
}

TEST_CASE("radical idempotence under powers") {
    MultSubgroup g = group({"4", "-27"});
    for (const char* s : {"2", "-2", "3", "6", "5", "10/9"}) {
        Rational x = parse_rational(s);
        bool base = std::holds_alternative<RadicalWitness>(radical_contains(g, x));
        for (long t = 1; t <= 4; ++t) {
            Rational xt = rational_pow(x, t);
            CHECK(std::holds_alternative<RadicalWitness>(radical_contains(g, xt)) == base);
        }
    }
}

TEST_CASE("radical witness soundness and minimality") {
    MultSubgroup g = group({"4", "-27"});
    for (const char* s : {"2", "-2", "3", "-6", "12"}) {
        Rational x = parse_rational(s);
        auto r = radical_contains(g, x);
        if (!std::holds_alternative<RadicalWitness>(r)) continue;
        const auto& rw = std::get<RadicalWitness>(r);
        CHECK(power_product(g, rw.witness) == rational_pow(x, rw.power));
        for (long m = 1; m < rw.power; ++m)
            CHECK(std::holds_alternative<NotMember>(contains(g, rational_pow(x, m))));
    }
}

TEST_CASE("height lower constant fixtures") {
    CHECK(height_lower_constant(group({"2"})).coeff_of_log2 == Rational(1, 2));
    CHECK(height_lower_constant(group({"2", "3"})).coeff_of_log2 == Rational(1, 2));
    // left inverse of [[2,1],[0,1]] is [[1/2,-1/2],[0,1]]; max row 1-norm is 1
    CHECK(height_lower_constant(group({"4", "6"})).coeff_of_log2 == Rational(1, 2));
    CHECK_THROWS_AS(height_lower_constant(group({"2", "4"})), Error);  // not free
    CHECK_THROWS_AS(height_lower_constant(group({"-1"})), Error);      // empty support
}

TEST_CASE("height lower constant enumeration oracle") {
    // h(a) >= C max|k_i| for all a = g1^k1 g2^k2, |k_i| <= 20, in exact form
    for (auto gens : {std::vector<const char*>{"2", "3"}, std::vector<const char*>{"4", "6"}}) {
        MultSubgroup g = group({gens[0], gens[1]});
        HeightLowerBound c = height_lower_constant(g);
        for (int k1 = -20; k1 <= 20; ++k1)
            for (int k2 = -20; k2 <= 20; ++k2) {
                Rational a = rational_pow(parse_rational(gens[0]), k1) *
                             rational_pow(parse_rational(gens[1]), k2);
                long kmax = std::max(std::abs(k1), std::abs(k2));
                Rational threshold = c.coeff_of_log2 * kmax;
                CHECK(height_log_geq(weil_height(a).exact, threshold.get_num(),
                                     threshold.get_den()));
            }
    }
}
