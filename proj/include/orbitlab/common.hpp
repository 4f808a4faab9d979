#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitlab {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorCode {
    ZeroInput,
    NotPrime,
    NotSUnit,
    ZeroGenerator,
    NotFree,
    EmptySupport,
    DimensionMismatch,
    ZeroConstant,
    WindowTooLarge,
    TooShort,
    ZeroValue,
    ZeroOnTail,
    BadResidue,
    NotAnnihilating,
    PoleHit,
    DegenerateODE,
    NotMember,
    SyntaxError,
    UnknownVariable,
    NonIntegerExponent,
    BadInput,
};

/// Exception carrying a stable error code plus an optional offending index.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg, long index = -1)
        : std::runtime_error(msg), code_(code), index_(index) {}
    ErrorCode code() const { return code_; }
    long index() const { return index_; }

private:
    ErrorCode code_;
    long index_;
};

const char* error_code_name(ErrorCode code);

// ---- rational helpers ----

/// Parses "num" or "num/den"; canonicalizes to lowest terms, den >= 1.
Rational parse_rational(const std::string& text);

/// "num/den" with "/den" omitted when den == 1.
std::string rational_to_string(const Rational& x);

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// x^e for possibly negative e; throws ZeroInput on 0^negative.
Rational rational_pow(const Rational& x, long e);

inline int sign_of(const Rational& x) { return sgn(x); }

/// log of a positive integer without overflowing double range.
double log_of_integer(const Integer& n);

// ---- integer factorization (desk scale: trial division + Pollard rho) ----

bool is_probable_prime(const Integer& n);

/// Factors n >= 1 into prime -> exponent. factor_integer(1) is empty.
std::map<Integer, long> factor_integer(Integer n);

}  // namespace orbitlab
