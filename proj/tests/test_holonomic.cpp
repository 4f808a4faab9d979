#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "orbitlab/holonomic.hpp"

using namespace orbitlab;

namespace {

std::vector<Rational> rats(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(parse_rational(x));
    return out;
}

}  // namespace

TEST_CASE("expand fixtures") {
    CFiniteRecurrence fib{rats({"1", "1"}), rats({"0", "1"})};
    CHECK(expand(fib, 8) == rats({"0", "1", "1", "2", "3", "5", "8", "13", "21"}));

    PRecurrence exp_rec({corpus::coeff("1/(n+1)")}, 0, rats({"1"}));
    CHECK(expand(exp_rec, 4) == rats({"1", "1", "1/2", "1/6", "1/24"}));

    // a_{2n} = 3*4^n, a_{2n+1} = 5*9^n
    CFiniteRecurrence inter{rats({"0", "13", "0", "-36"}), rats({"3", "5", "12", "45"})};
    CHECK(expand(inter, 5) == rats({"3", "5", "12", "45", "48", "405"}));
}

TEST_CASE("PRecurrence construction rejects poles past the shift") {
    CHECK_THROWS_AS(PRecurrence({corpus::coeff("1/(n-5)")}, 0, rats({"1"})), Error);
    // shift 6 clears the pole at 5
    PRecurrence ok({corpus::coeff("1/(n-5)")}, 6, rats({"1"}));
    CHECK(expand(ok, 2) == rats({"1", "1", "1/2"}));
}

TEST_CASE("ode_to_recurrence: (1-x)F' - F = 0 gives a_{n+1} = a_n") {
    // oracle: the series of 1/(1-x) is all ones
    DFiniteODE ode({Poly1({Rational(-1)}), Poly1({Rational(1), Rational(-1)})}, rats({"1"}));
    CHECK(expand(ode, 6) == rats({"1", "1", "1", "1", "1", "1", "1"}));
    PRecurrence rec = ode_to_recurrence(ode);
    CHECK(rec.order() == 0);
    CHECK(rec.coeffs()[0] == RatFunc1::constant(Rational(1)));  // the (n+1) factor cleared
    CHECK(expand(rec, 50) == expand(ode, 50));
}

TEST_CASE("ode_to_recurrence: F' - F = 0 gives a_{n+1} = a_n/(n+1)") {
    DFiniteODE ode({Poly1({Rational(-1)}), Poly1({Rational(1)})}, rats({"1"}));
    CHECK(expand(ode, 4) == rats({"1", "1", "1/2", "1/6", "1/24"}));  // exponential oracle
    PRecurrence rec = ode_to_recurrence(ode);
    CHECK(rec.order() == 0);
    CHECK(rec.coeffs()[0] == corpus::coeff("1/(n+1)"));
    CHECK(expand(rec, 50) == expand(ode, 50));
}

TEST_CASE("ode_to_recurrence: F'' = 0 truncates the series") {
    DFiniteODE ode({Poly1(), Poly1(), Poly1({Rational(1)})}, rats({"7", "5"}));
    CHECK(expand(ode, 5) == rats({"7", "5", "0", "0", "0", "0"}));
    PRecurrence rec = ode_to_recurrence(ode);
    std::vector<Rational> tail = expand(rec, 10);
    for (size_t k = 1; k < tail.size(); ++k) CHECK(tail[k] == 0);
    CHECK_THROWS_AS(DFiniteODE({Poly1(), Poly1()}, rats({"1"})), Error);
}

TEST_CASE("ode_to_recurrence on a second-order ODE (exp-like)") {
    // F'' - F = 0 with a_0 = 1, a_1 = 0 is cosh: a_{n+2} = a_n/((n+1)(n+2))
    DFiniteODE ode({Poly1({Rational(-1)}), Poly1(), Poly1({Rational(1)})}, rats({"1", "0"}));
    PRecurrence rec = ode_to_recurrence(ode);
    std::vector<Rational> whole = expand(ode, 50 + rec.shift());
    std::vector<Rational> tail(whole.begin() + rec.shift(), whole.end());
    CHECK(expand(rec, 50) == tail);
    CHECK(expand(ode, 4)[4] == Rational(1, 24));
    CHECK(expand(ode, 4)[3] == 0);
}

TEST_CASE("recurrence_to_dynsys fixtures") {
    // a_{n+1} = a_n from 1: constant orbit values
    PRecurrence ones({corpus::coeff("1")}, 0, rats({"1"}));
    DynSysEncoding enc = recurrence_to_dynsys(ones);
    CHECK(enc.map.dimension == 2);
    CHECK(enc.start == rats({"0", "1"}));
    OrbitRecord rec = orbit_sequence(enc.map, enc.observable, enc.start, 10);
    for (const ExtValue& v : rec.values) CHECK(v == ExtValue::finite(make_rational(1)));
}

TEST_CASE("Eq-style executable identity on the whole corpus, 100 terms") {
    for (const corpus::Entry& entry : corpus::recurrences()) {
        CAPTURE(entry.name);
        std::vector<Rational> direct = expand(entry.rec, 100);
        DynSysEncoding enc = recurrence_to_dynsys(entry.rec);
        CHECK(enc.map.dimension == entry.rec.order() + 2);
        OrbitRecord rec = orbit_sequence(enc.map, enc.observable, enc.start, 100);
        REQUIRE(rec.halt.kind == HaltRecord::Kind::Completed);
        REQUIRE(rec.values.size() == direct.size());
        for (size_t k = 0; k < direct.size(); ++k)
            CHECK(rec.values[k] == ExtValue::finite(direct[k]));
    }
}

TEST_CASE("min_cfinite_annihilator fixtures") {
    auto geo = min_cfinite_annihilator(rats({"1", "2", "4", "8", "16", "32"}));
    REQUIRE(std::holds_alternative<CFiniteRecurrence>(geo));
    CHECK(std::get<CFiniteRecurrence>(geo).coeffs == rats({"2"}));

    auto fib = min_cfinite_annihilator(rats({"0", "1", "1", "2", "3", "5", "8", "13"}));
    REQUIRE(std::holds_alternative<CFiniteRecurrence>(fib));
    CHECK(std::get<CFiniteRecurrence>(fib).coeffs == rats({"1", "1"}));

    // factorials: Hankel ranks keep growing
    auto fact = min_cfinite_annihilator(rats({"1", "1", "2", "6", "24"}));
    REQUIRE(std::holds_alternative<NoAnnihilator>(fact));
    CHECK(std::get<NoAnnihilator>(fact).order_bound == 1);

    CHECK_THROWS_AS(min_cfinite_annihilator(rats({"1", "2", "4"})), Error);
}

TEST_CASE("min annihilator handles transient prefixes and the zero sequence") {
    auto shifted = min_cfinite_annihilator(rats({"5", "1", "2", "4", "8", "16"}));
    REQUIRE(std::holds_alternative<CFiniteRecurrence>(shifted));
    const auto& rec = std::get<CFiniteRecurrence>(shifted);
    CHECK(rec.order() == 2);
    CHECK(expand(rec, 5) == rats({"5", "1", "2", "4", "8", "16"}));

    auto zero = min_cfinite_annihilator(rats({"0", "0", "0", "0"}));
    REQUIRE(std::holds_alternative<CFiniteRecurrence>(zero));
    CHECK(std::get<CFiniteRecurrence>(zero).order() == 0);
}

TEST_CASE("annihilator soundness on random C-finite data") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        CFiniteRecurrence seed{rats({"1", "1"}), {make_rational(c(rng)), make_rational(c(rng))}};
        seed.coeffs[0] = make_rational(c(rng));
        seed.coeffs[1] = make_rational(c(rng) == 0 ? 1 : c(rng));
        std::vector<Rational> terms = expand(seed, 15);
        auto found = min_cfinite_annihilator(terms);
        REQUIRE(std::holds_alternative<CFiniteRecurrence>(found));
        const auto& rec = std::get<CFiniteRecurrence>(found);
        CHECK(rec.order() <= seed.order());
        CHECK(expand(rec, 15) == terms);
    }
}

TEST_CASE("fatou_normalize fixtures") {
    // 2^n: primitive annihilator x - 2, monic
    std::vector<Rational> pow2;
    for (long n = 0; n <= 12; ++n) pow2.push_back(rational_pow(make_rational(2), n));
    CFiniteRecurrence rec2{rats({"2"}), rats({"1"})};
    auto fat2 = fatou_normalize(rec2, pow2);
    REQUIRE(std::holds_alternative<IntegerMonicRecurrence>(fat2));
    CHECK(std::get<IntegerMonicRecurrence>(fat2).coeffs == std::vector<Integer>{2});

    // 1/2^n: primitive polynomial 2x - 1, not monic; integer check fails
    std::vector<Rational> halves;
    for (long n = 0; n <= 20; ++n) halves.push_back(rational_pow(make_rational(1, 2), n));
    CFiniteRecurrence rech{rats({"1/2"}), rats({"1"})};
    auto fath = fatou_normalize(rech, halves);
    REQUIRE(std::holds_alternative<QuasilinearOnly>(fath));
    CHECK(std::get<QuasilinearOnly>(fath).primitive_charpoly == std::vector<Integer>{-1, 2});

    // 2^n + 3^n: (x-2)(x-3) = x^2 - 5x + 6, monic
    std::vector<Rational> mixed;
    for (long n = 0; n <= 12; ++n)
        mixed.push_back(rational_pow(make_rational(2), n) + rational_pow(make_rational(3), n));
    CFiniteRecurrence recm{rats({"5", "-6"}), rats({"2", "5"})};
    auto fatm = fatou_normalize(recm, mixed);
    REQUIRE(std::holds_alternative<IntegerMonicRecurrence>(fatm));
    CHECK(std::get<IntegerMonicRecurrence>(fatm).coeffs == std::vector<Integer>{5, -6});

    // rec that does not annihilate the terms
    CHECK_THROWS_AS(fatou_normalize(rec2, mixed), Error);
}

TEST_CASE("fatou dichotomy on integer C-finite inputs") {
    // monic minimal annihilator on integers never reports QuasilinearOnly
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        CFiniteRecurrence seed{{make_rational(c(rng)), make_rational(1)},
                               {make_rational(c(rng)), make_rational(c(rng))}};
        std::vector<Rational> terms = expand(seed, 14);
        auto minimal = min_cfinite_annihilator(terms);
        REQUIRE(std::holds_alternative<CFiniteRecurrence>(minimal));
        const auto& min_rec = std::get<CFiniteRecurrence>(minimal);
        bool min_is_integral = true;
        for (const Rational& x : min_rec.coeffs) min_is_integral &= x.get_den() == 1;
        auto fat = fatou_normalize(min_rec, terms);
        CHECK(std::holds_alternative<IntegerMonicRecurrence>(fat) == min_is_integral);
    }
}

TEST_CASE("hadamard fixtures") {
    CFiniteRecurrence two{rats({"2"}), rats({"1"})};
    CFiniteRecurrence three{rats({"3"}), rats({"1"})};
    CFiniteRecurrence six = hadamard(two, three);
    CHECK(six.order() == 1);
    CHECK(six.coeffs == rats({"6"}));

    CFiniteRecurrence fib{rats({"1", "1"}), rats({"0", "1"})};
    CFiniteRecurrence fib2 = hadamard(fib, fib);
    CHECK(fib2.order() <= 4);
    std::vector<Rational> f = expand(fib, 30), sq = expand(fib2, 30);
    for (long k = 0; k <= 30; ++k) CHECK(sq[k] == f[k] * f[k]);

    CFiniteRecurrence ones{rats({"1"}), rats({"1"})};
    CFiniteRecurrence same = hadamard(ones, fib);
    CHECK(expand(same, 20) == expand(fib, 20));
}

TEST_CASE("section and interleave") {
    std::vector<Rational> ten;
    for (long n = 0; n <= 9; ++n) ten.push_back(make_rational(n));
    CHECK(section(ten, 2, 1) == rats({"1", "3", "5", "7", "9"}));
    CHECK(interleave({rats({"0", "2"}), rats({"1", "3"})}) == rats({"0", "1", "2", "3"}));

    CFiniteRecurrence fib{rats({"1", "1"}), rats({"0", "1"})};
    std::vector<Rational> f = expand(fib, 11);
    CHECK(section(f, 3, 0) == rats({"0", "2", "8", "34"}));

    CHECK_THROWS_AS(section(ten, 2, 2), Error);
    CHECK_THROWS_AS(section(ten, 2, -1), Error);
}

TEST_CASE("section/interleave are mutually inverse on prefixes") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> v(-9, 9), len(4, 23), period(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> terms;
        long n = len(rng);
        for (long k = 0; k < n; ++k) terms.push_back(make_rational(v(rng)));
        long l = period(rng);
        std::vector<std::vector<Rational>> parts;
        for (long j = 0; j < l; ++j) parts.push_back(section(terms, l, j));
        CHECK(interleave(parts) == terms);
    }
}
