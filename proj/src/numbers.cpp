#include "orbitlab/numbers.hpp"

#include <algorithm>

namespace orbitlab {

PrimeSet::PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (const Integer& p : primes_)
        if (p < 2 || !is_probable_prime(p))
            throw Error(ErrorCode::NotPrime, p.get_str() + " is not prime");
}

bool PrimeSet::contains(const Integer& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

PrimeSet PrimeSet::merged(const PrimeSet& a, const PrimeSet& b) {
    std::vector<Integer> all = a.primes_;
    all.insert(all.end(), b.primes_.begin(), b.primes_.end());
    return PrimeSet(std::move(all));
}

Rational ValVector::reconstruct() const {
    Rational r(sign);
    for (const auto& [p, e] : exponents) r *= rational_pow(Rational(p), e);
    return r;
}

long valuation(const Integer& p, const Rational& x) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "valuation of 0 is undefined");
    Integer tmp;
    // numerator and denominator are coprime, so only one side carries p
    unsigned long en = mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t());
    if (en > 0) return static_cast<long>(en);
    unsigned long ed = mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t());
    return -static_cast<long>(ed);
}

SUnitResult sunit_factor(const PrimeSet& s, const Rational& x) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "0 is not an S-unit");
    ValVector v;
    v.sign = sgn(x) < 0 ? -1 : 1;
    Integer num = abs(x.get_num());
    Integer den = x.get_den();
    for (const Integer& p : s.primes()) {
        unsigned long en = mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        unsigned long ed = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        long e = static_cast<long>(en) - static_cast<long>(ed);
        if (e != 0) v.exponents[p] = e;
    }
    if (num != 1 || den != 1) {
        Rational cof(num, den);
        cof.canonicalize();
        return NotSUnit{cof};
    }
    return v;
}

HeightValue weil_height(const Rational& x) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "height of 0 is undefined here");
    Integer num = abs(x.get_num());
    const Integer& den = x.get_den();
    HeightValue h;
    h.exact = std::max(num, den);
    h.log_value = log_of_integer(h.exact);
    return h;
}

bool height_log_geq(const Integer& h, const Integer& a, const Integer& b) {
    if (a < 0 || b <= 0) throw Error(ErrorCode::BadInput, "height_log_geq needs a >= 0, b > 0");
    Integer lhs, rhs(1);
    mpz_pow_ui(lhs.get_mpz_t(), h.get_mpz_t(), b.get_ui());
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), a.get_ui());
    return lhs >= rhs;
}

}  // namespace orbitlab
