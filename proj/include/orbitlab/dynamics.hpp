#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "orbitlab/linalg.hpp"
#include "orbitlab/poly.hpp"

namespace orbitlab {

using Point = std::vector<Rational>;

/// A value in P^1(Q): a rational number or the point at infinity.
struct ExtValue {
    bool infinite = false;
    Rational value;

    static ExtValue finite(Rational v) { return {false, std::move(v)}; }
    static ExtValue inf() { return {true, Rational(0)}; }
    bool is_zero() const { return !infinite && value == 0; }
    bool operator==(const ExtValue&) const = default;
};

/// Self-map of affine n-space with rational-function coordinates.
struct RationalSelfMap {
    long dimension = 0;
    std::vector<RatFunc> coordinates;
};

struct HaltRecord {
    enum class Kind { Completed, Indeterminate, BudgetExceeded } kind = Kind::Completed;
    long step = 0;        // steps completed (index of the first missing entry on failure)
    long coordinate = -1;  // offending map coordinate; -1 = the observable
};

struct OrbitRecord {
    std::vector<Point> points;
    std::vector<ExtValue> values;  // empty for plain orbits
    HaltRecord halt;
};

struct EvalIndeterminate {
    long coordinate;
};
using MapEval = std::variant<Point, EvalIndeterminate>;

/// Evaluates every coordinate exactly; indeterminate as soon as a
/// coordinate denominator vanishes at x.
MapEval eval_map(const RationalSelfMap& map, const Point& x);

/// phi^k(x0) for k = 0..n, halting on indeterminacy or once any
/// coordinate outgrows `digit_budget` decimal digits (0 = unlimited).
OrbitRecord orbit(const RationalSelfMap& map, const Point& x0, long n, long digit_budget = 0);

/// Orbit plus observable values f(phi^k(x0)) in P^1(Q). The observable
/// being indeterminate (0/0) halts; a plain pole records infinity.
OrbitRecord orbit_sequence(const RationalSelfMap& map, const RatFunc& observable, const Point& x0,
                           long n, long digit_budget = 0);

/// Symbolic composition a after b (coordinates of a evaluated at b).
RationalSelfMap compose(const RationalSelfMap& a, const RationalSelfMap& b);

/// Monomial self-map x_i -> c_i prod_j x_j^{A[i][j]} of the torus.
RationalSelfMap torus_map(const std::vector<Rational>& constants, const IntMat& exponents);

/// Canonical basis (RREF rows over descending graded-lex monomials) of the
/// polynomials of total degree <= degree_bound vanishing on all points.
std::vector<MultiPoly> vanishing_ideal(std::vector<Point> points, long degree_bound);

}  // namespace orbitlab
