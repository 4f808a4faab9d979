#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "orbitlab/common.hpp"

namespace orbitlab {

/// Strictly increasing list of distinct rational primes.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<Integer> primes);

    const std::vector<Integer>& primes() const { return primes_; }
    long size() const { return static_cast<long>(primes_.size()); }
    bool contains(const Integer& p) const;

    /// Set union, re-sorted.
    static PrimeSet merged(const PrimeSet& a, const PrimeSet& b);

private:
    std::vector<Integer> primes_;
};

/// Image of an S-unit under all valuations: sign plus finitely supported
/// prime -> exponent map (no zero exponents stored).
struct ValVector {
    int sign = 1;  // +1 or -1
    std::map<Integer, long> exponents;

    Rational reconstruct() const;
    bool operator==(const ValVector&) const = default;
};

/// nu_p(x): the exponent of p in x. Throws ZeroInput on x = 0.
long valuation(const Integer& p, const Rational& x);

struct NotSUnit {
    Rational cofactor;  // leftover after trial division over S, in lowest terms
};
using SUnitResult = std::variant<ValVector, NotSUnit>;

/// Full factorization of x over S, or the leftover cofactor.
SUnitResult sunit_factor(const PrimeSet& s, const Rational& x);

/// Absolute Weil height over Q: h(x) = log max(|num|, den). The exact
/// integer max is the authoritative form; the double is for reporting.
struct HeightValue {
    Integer exact;  // max(|num|, den)
    double log_value;
};
HeightValue weil_height(const Rational& x);

/// Exact test of log(H) >= (a/b) * log 2, i.e. H^b >= 2^a  (b > 0, a >= 0).
bool height_log_geq(const Integer& h, const Integer& a, const Integer& b);

}  // namespace orbitlab
