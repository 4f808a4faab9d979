#pragma once

#include <vector>

#include "orbitlab/numbers.hpp"

namespace orbitlab {

/// Exact height integers max(|num|, den), entrywise.
std::vector<Integer> height_sequence(const std::vector<Rational>& values);

enum class GrowthClass { Bounded, Linear, NLogN, Subquadratic, QuadraticOrMore };
const char* growth_class_name(GrowthClass g);

struct GrowthReport {
    GrowthClass label;
    long horizon;
    // tail ratios of the monotone log-height envelope, last-quarter extremes
    double ratio_linear_min, ratio_linear_max;
    double ratio_nlogn_min, ratio_nlogn_max;
    double ratio_quadratic_min, ratio_quadratic_max;
};

/// Classifies by which envelope ratio (log H / n, / n log n, / n^2)
/// stabilizes to within 10% relative variation over the last quarter.
/// Needs at least 32 heights.
GrowthReport growth_classify(const std::vector<Integer>& heights, long horizon);

struct ValuationGrowthReport {
    Rational tail_slope;      // max |nu_p(a_n)| / n over the tail
    bool linear_bound_holds;  // |nu_p(a_n)| <= C n + B on the whole horizon
    Rational bound_c, bound_b;
    long first_violation = -1;
};

/// Lemma-6.3-style check translated to a rational prime: least-squares
/// line through the record points of |nu_p|, then exact verification.
ValuationGrowthReport valuation_growth(const std::vector<Rational>& values, const Integer& p);

}  // namespace orbitlab
