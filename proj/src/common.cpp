#include "orbitlab/common.hpp"

#include <cctype>
#include <cmath>

namespace orbitlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NotSUnit: return "NotSUnit";
        case ErrorCode::ZeroGenerator: return "ZeroGenerator";
        case ErrorCode::NotFree: return "NotFree";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroConstant: return "ZeroConstant";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::ZeroValue: return "ZeroValue";
        case ErrorCode::ZeroOnTail: return "ZeroOnTail";
        case ErrorCode::BadResidue: return "BadResidue";
        case ErrorCode::NotAnnihilating: return "NotAnnihilating";
        case ErrorCode::PoleHit: return "PoleHit";
        case ErrorCode::DegenerateODE: return "DegenerateODE";
        case ErrorCode::NotMember: return "NotMember";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(ErrorCode::BadInput, "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(s);
            return Rational(n);
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::BadInput, "malformed rational literal '" + text + "'");
    }
}

std::string rational_to_string(const Rational& x) {
    return x.get_str();
}

Rational rational_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x == 0) {
        if (e < 0) throw Error(ErrorCode::ZeroInput, "0 raised to a negative power");
        return Rational(0);
    }
    Integer num, den;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), a);
    mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), a);
    Rational r;
    if (e > 0)
        r = Rational(num, den);
    else
        r = Rational(den, num);
    r.canonicalize();
    return r;
}

double log_of_integer(const Integer& n) {
    if (n <= 0) throw Error(ErrorCode::ZeroInput, "log of nonpositive integer");
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

bool is_probable_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Integer pollard_rho(const Integer& n) {
    // Brent's cycle variant; n must be odd composite, not a prime power of 2.
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Integer diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 0 && d != 1 && d != n) return d;
    }
}

void factor_into(Integer n, std::map<Integer, long>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::map<Integer, long> factor_integer(Integer n) {
    if (n < 1) throw Error(ErrorCode::BadInput, "factor_integer needs n >= 1");
    std::map<Integer, long> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        Integer ip(p);
        unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), ip.get_mpz_t());
        if (e > 0) out[ip] += static_cast<long>(e);
    }
    for (Integer p = 17; n > 1 && p * p <= n && p < 100000; p += 2) {
        unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (e > 0) out[p] += static_cast<long>(e);
    }
    factor_into(n, out);
    return out;
}

}  // namespace orbitlab
