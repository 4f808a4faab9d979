#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "orbitlab/dynamics.hpp"
#include "orbitlab/poly.hpp"

namespace orbitlab {

/// P-recursive sequence: a_{n+1} = sum_{i=0}^{d} r_i(n) a_{n-i} for
/// n >= shift + d, seeded by a_shift .. a_{shift+d}. No coefficient
/// denominator vanishes at an integer >= shift (checked on construction).
class PRecurrence {
public:
    PRecurrence(std::vector<RatFunc1> coeffs, long shift, std::vector<Rational> initial);

    long order() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<RatFunc1>& coeffs() const { return coeffs_; }
    long shift() const { return shift_; }
    const std::vector<Rational>& initial() const { return initial_; }

private:
    std::vector<RatFunc1> coeffs_;  // r_0 .. r_d
    long shift_;
    std::vector<Rational> initial_;  // a_shift .. a_{shift+d}
};

/// Linear ODE sum p_i(x) F^(i)(x) = 0 with an initial coefficient segment
/// a_0..a_k long enough to determine the series.
class DFiniteODE {
public:
    DFiniteODE(std::vector<Poly1> poly_coeffs, std::vector<Rational> initial);

    long order() const { return static_cast<long>(poly_coeffs_.size()) - 1; }
    const std::vector<Poly1>& poly_coeffs() const { return poly_coeffs_; }
    const std::vector<Rational>& initial() const { return initial_; }

private:
    std::vector<Poly1> poly_coeffs_;
    std::vector<Rational> initial_;
};

/// Constant-coefficient recurrence a_{n+d} = sum_{i=1}^{d} c_i a_{n+d-i}.
/// Minimal annihilators keep c_d != 0 unless the segment carries a
/// transient prefix; order 0 is the zero sequence.
struct CFiniteRecurrence {
    std::vector<Rational> coeffs;   // c_1 .. c_d
    std::vector<Rational> initial;  // a_0 .. a_{d-1}

    long order() const { return static_cast<long>(coeffs.size()); }
    bool operator==(const CFiniteRecurrence&) const = default;
};

// ---- expansion ----

/// Terms a_shift .. a_{shift+n} by exact forward iteration.
std::vector<Rational> expand(const PRecurrence& rec, long n);
/// Terms a_0 .. a_n.
std::vector<Rational> expand(const CFiniteRecurrence& rec, long n);
/// Terms a_0 .. a_n straight from the ODE coefficient relations
/// (independent of ode_to_recurrence; used as its oracle).
std::vector<Rational> expand(const DFiniteODE& ode, long n);

// ---- conversions ----

/// The recurrence satisfied by the coefficient sequences of ODE solutions.
PRecurrence ode_to_recurrence(const DFiniteODE& ode);

/// The dynamical encoding: a self-map of A^{d+2} with state
/// (t, t_1, .., t_{d+1}), observable t_1, start (shift, a_shift, ..,
/// a_{shift+d}), satisfying a_{n+shift} = f(phi^n(start)) for all n >= 0.
struct DynSysEncoding {
    RationalSelfMap map;
    RatFunc observable;
    Point start;
    long shift;
};
DynSysEncoding recurrence_to_dynsys(const PRecurrence& rec);

// ---- fitting and normalization ----

struct NoAnnihilator {
    long order_bound;
};
using AnnihilatorResult = std::variant<CFiniteRecurrence, NoAnnihilator>;

/// Minimal-order constant-coefficient recurrence annihilating the whole
/// segment (orders searched up to floor(len/2) - 1). Needs >= 4 terms.
AnnihilatorResult min_cfinite_annihilator(const std::vector<Rational>& terms);

/// Monic integer recurrence a_{n+d} = sum m_i a_{n+d-i}, m_i in Z.
struct IntegerMonicRecurrence {
    std::vector<Integer> coeffs;
    std::vector<Rational> initial;
};
/// Witness that only a non-monic primitive annihilator exists: the
/// primitive integer characteristic polynomial, ascending coefficients.
struct QuasilinearOnly {
    std::vector<Integer> primitive_charpoly;
};
using FatouResult = std::variant<IntegerMonicRecurrence, QuasilinearOnly>;

/// Fatou normalization over Z: accepts iff the primitive minimal
/// annihilator of the terms has unit leading coefficient and the terms are
/// integers; otherwise returns the primitive polynomial as witness.
/// Throws NotAnnihilating when rec fails on the terms.
FatouResult fatou_normalize(const CFiniteRecurrence& rec, const std::vector<Rational>& terms);

/// Recurrence for (a_n * b_n) from the Kronecker product of companion
/// matrices; order <= order(a) * order(b).
CFiniteRecurrence hadamard(const CFiniteRecurrence& a, const CFiniteRecurrence& b);

/// (terms[l*n + j])_n for 0 <= j < l.
std::vector<Rational> section(const std::vector<Rational>& terms, long l, long j);
/// Inverse of sectioning on exact prefixes.
std::vector<Rational> interleave(const std::vector<std::vector<Rational>>& lists);

}  // namespace orbitlab
