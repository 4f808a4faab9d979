#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/numbers.hpp"

using namespace orbitlab;

TEST_CASE("valuation on the stated fixtures") {
    CHECK(valuation(2, make_rational(12)) == 2);
    CHECK(valuation(3, make_rational(5, 9)) == -2);
    CHECK(valuation(7, make_rational(10)) == 0);
    CHECK_THROWS_AS(valuation(2, Rational(0)), Error);
}

TEST_CASE("valuation is additive") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        Rational x = make_rational(num(rng), den(rng));
        Rational y = make_rational(num(rng), den(rng));
        if (x == 0 || y == 0) continue;
        for (long p : {2L, 3L, 5L})
            CHECK(valuation(p, x * y) == valuation(p, x) + valuation(p, y));
    }
}

TEST_CASE("sunit_factor fixtures and reconstruction") {
    PrimeSet s({2, 3});
    auto r = sunit_factor(s, make_rational(-12));
    REQUIRE(std::holds_alternative<ValVector>(r));
    ValVector v = std::get<ValVector>(r);
    CHECK(v.sign == -1);
    CHECK(v.exponents == std::map<Integer, long>{{2, 2}, {3, 1}});
    CHECK(v.reconstruct() == make_rational(-12));

    auto one = sunit_factor(s, make_rational(1));
    REQUIRE(std::holds_alternative<ValVector>(one));
    CHECK(std::get<ValVector>(one).sign == 1);
    CHECK(std::get<ValVector>(one).exponents.empty());

    auto ten = sunit_factor(s, make_rational(10));
    REQUIRE(std::holds_alternative<NotSUnit>(ten));
    CHECK(std::get<NotSUnit>(ten).cofactor == make_rational(5));
}

TEST_CASE("sunit reconstruction round trip on a grid") {
    PrimeSet s({2, 3, 5});
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> e(-6, 6), sign(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        Rational x = Rational(sign(rng) ? 1 : -1);
        x *= rational_pow(make_rational(2), e(rng));
        x *= rational_pow(make_rational(3), e(rng));
        x *= rational_pow(make_rational(5), e(rng));
        auto r = sunit_factor(s, x);
        REQUIRE(std::holds_alternative<ValVector>(r));
        CHECK(std::get<ValVector>(r).reconstruct() == x);
    }
}

TEST_CASE("weil height fixtures") {
    CHECK(weil_height(make_rational(2)).exact == 2);
    // hand product formula for 2/3: archimedean place gives 1, place 3 gives 3
    CHECK(weil_height(make_rational(2, 3)).exact == 3);
    CHECK(weil_height(make_rational(1)).exact == 1);
    CHECK(weil_height(make_rational(1)).log_value == doctest::Approx(0.0));
    CHECK_THROWS_AS(weil_height(Rational(0)), Error);
}

TEST_CASE("height symmetry h(x) = h(1/x)") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> num(1, 400), den(1, 400), sign(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        Rational x = make_rational((sign(rng) ? 1 : -1) * num(rng), den(rng));
        CHECK(weil_height(x).exact == weil_height(1 / x).exact);
    }
}

TEST_CASE("height-valuation inequality over the +-2^a 3^b 5^c grid") {
    // h(x) >= (1/2) sum_p |nu_p(x)| log p, exactly: H^2 >= prod p^{|e_p|}
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
            for (int c = -10; c <= 10; ++c)
                for (int s : {1, -1}) {
                    Rational x = Rational(s) * rational_pow(make_rational(2), a) *
                                 rational_pow(make_rational(3), b) *
                                 rational_pow(make_rational(5), c);
                    Integer h = weil_height(x).exact;
                    Integer lhs = h * h;
                    Integer rhs = rational_pow(make_rational(2), std::abs(a)).get_num() *
                                  rational_pow(make_rational(3), std::abs(b)).get_num() *
                                  rational_pow(make_rational(5), std::abs(c)).get_num();
                    CHECK(lhs >= rhs);
                }
}

TEST_CASE("prime set validation") {
    CHECK_THROWS_AS(PrimeSet({4}), Error);
    CHECK_THROWS_AS(PrimeSet({1}), Error);
    PrimeSet s({5, 3, 3, 2});
    CHECK(s.primes() == std::vector<Integer>{2, 3, 5});
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("2") == make_rational(2));
    CHECK(parse_rational("-3/5") == make_rational(-3, 5));
    CHECK(parse_rational("4/6") == make_rational(2, 3));
    CHECK(rational_to_string(make_rational(-3, 5)) == "-3/5");
    CHECK(rational_to_string(make_rational(7)) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("factor_integer handles a large prime factor") {
    auto f = factor_integer(Integer(1000003) * 8);
    CHECK(f[Integer(2)] == 3);
    CHECK(f[Integer(1000003)] == 1);
    CHECK(factor_integer(Integer(1)).empty());
}

TEST_CASE("height_log_geq exact comparison") {
    CHECK(height_log_geq(Integer(8), Integer(3), Integer(1)));        // log 8 >= 3 log 2
    CHECK_FALSE(height_log_geq(Integer(7), Integer(3), Integer(1)));  // log 7 < 3 log 2
    CHECK(height_log_geq(Integer(3), Integer(3), Integer(2)));        // log 3 >= 1.5 log 2
}
