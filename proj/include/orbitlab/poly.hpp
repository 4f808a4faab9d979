#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/common.hpp"

namespace orbitlab {

// ---- univariate polynomials over Q ----

/// Coefficients ascending; no trailing zeros; empty = zero polynomial.
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly1 constant(const Rational& r) { return Poly1({r}); }
    static Poly1 monomial(long deg, const Rational& coeff);

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(long k) const { return k >= 0 && k < (long)c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool operator==(const Poly1&) const = default;

    Poly1 operator+(const Poly1& o) const;
    Poly1 operator-(const Poly1& o) const;
    Poly1 operator*(const Poly1& o) const;
    Poly1 operator*(const Rational& r) const;
    Poly1 operator-() const { return *this * Rational(-1); }

    Rational eval(const Rational& x) const;
    Poly1 derivative() const;
    /// Substitute x -> x + shift.
    Poly1 shifted(const Rational& shift) const;
    /// Divide by leading coefficient.
    Poly1 monic() const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly1, Poly1> divrem(const Poly1& a, const Poly1& b);

/// Monic gcd over Q.
Poly1 poly_gcd(Poly1 a, Poly1 b);

/// Clear denominators and divide by integer content: primitive integer
/// polynomial with positive leading coefficient.
std::vector<Integer> primitive_integer_form(const Poly1& p);

/// All integer roots.
std::vector<Integer> integer_roots(const Poly1& p);

// ---- univariate rational functions, kept reduced ----

class RatFunc1 {
public:
    RatFunc1() : num_(), den_(Poly1::constant(1)) {}
    RatFunc1(Poly1 num, Poly1 den);
    static RatFunc1 constant(const Rational& r) { return RatFunc1(Poly1::constant(r), Poly1::constant(1)); }

    const Poly1& num() const { return num_; }
    const Poly1& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool operator==(const RatFunc1&) const = default;

    RatFunc1 operator+(const RatFunc1& o) const { return RatFunc1(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    RatFunc1 operator*(const RatFunc1& o) const { return RatFunc1(num_ * o.num_, den_ * o.den_); }

    /// Exact evaluation; nullopt when the (reduced) denominator vanishes.
    std::optional<Rational> eval(const Rational& x) const;
    RatFunc1 shifted(const Rational& shift) const { return RatFunc1(num_.shifted(shift), den_.shifted(shift)); }

    std::string to_string(const std::string& var = "x") const;

private:
    Poly1 num_, den_;
};

// ---- multivariate polynomials and rational functions ----

/// Graded lexicographic order on exponent tuples (total degree first).
struct GradedLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Sparse multivariate polynomial over Q; no zero coefficients stored.
class MultiPoly {
public:
    using TermMap = std::map<std::vector<int>, Rational, GradedLex>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
    static MultiPoly constant(int nvars, const Rational& r);
    static MultiPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    long total_degree() const;
    bool operator==(const MultiPoly&) const = default;

    void add_term(const std::vector<int>& exps, const Rational& coeff);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& r) const;
    MultiPoly pow(long e) const;  // e >= 0

    Rational eval(const std::vector<Rational>& point) const;

    /// Monomial-wise evaluation on any ring with +, *, and pow-by-repeated
    /// multiplication (used to compose rational maps).
    template <typename T>
    T eval_generic(const std::vector<T>& point, const T& zero, const T& one) const {
        T acc = zero;
        for (const auto& [e, c] : terms_) {
            T term = one * c;
            for (int v = 0; v < nvars_; ++v)
                for (int k = 0; k < e[v]; ++k) term = term * point[v];
            acc = acc + term;
        }
        return acc;
    }

    std::string to_string(const std::vector<std::string>& names) const;

    /// Conversions for the univariate case (nvars == 1).
    static MultiPoly from_poly1(const Poly1& p, int nvars = 1, int var = 0);
    Poly1 to_poly1() const;

private:
    int nvars_;
    TermMap terms_;
};

/// Rational function in n variables; denominator not identically zero.
/// Not reduced (no multivariate gcd); the univariate constructor callers
/// reduce via RatFunc1 when they need canonical forms.
struct RatFunc {
    MultiPoly num;
    MultiPoly den;

    RatFunc() : num(0), den(MultiPoly::constant(0, Rational(1))) {}
    RatFunc(MultiPoly n, MultiPoly d);
    static RatFunc constant(int nvars, const Rational& r) {
        return RatFunc(MultiPoly::constant(nvars, r), MultiPoly::constant(nvars, Rational(1)));
    }
    static RatFunc variable(int nvars, int index) {
        return RatFunc(MultiPoly::variable(nvars, index), MultiPoly::constant(nvars, Rational(1)));
    }

    int nvars() const { return num.nvars(); }
    bool operator==(const RatFunc&) const = default;

    RatFunc operator+(const RatFunc& o) const { return RatFunc(num * o.den + o.num * den, den * o.den); }
    RatFunc operator-(const RatFunc& o) const { return RatFunc(num * o.den - o.num * den, den * o.den); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
    RatFunc operator*(const Rational& r) const { return RatFunc(num * r, den); }
    RatFunc pow(long e) const;  // negative e swaps num/den

    enum class Kind { Finite, Infinite, Indeterminate };
    struct Eval {
        Kind kind;
        Rational value;  // meaningful only when Finite
    };
    Eval eval(const std::vector<Rational>& point) const;
};

}  // namespace orbitlab
