#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "orbitlab/dynamics.hpp"
#include "orbitlab/holonomic.hpp"
#include "orbitlab/multgroup.hpp"

namespace orbitlab {

// ---- membership sets and their arithmetic-progression structure ----

struct MembershipSet {
    long n_max = -1;
    std::vector<bool> bits;       // a_n in G
    std::vector<bool> zero_bits;  // a_n = 0

    long count() const;
    std::vector<long> members() const;
};

/// bits[n] iff values[n] is finite, nonzero, and in G; infinity is never
/// a member; zeros tracked separately.
MembershipSet membership_set(const std::vector<ExtValue>& values, const MultSubgroup& g);

/// Finite-horizon surrogate of the Banach density: the best density over
/// all windows of length w inside [0, n_max].
Rational banach_density(const MembershipSet& set, long window);

enum class ClassLabel { Full, Sparse, Mixed };
const char* class_label_name(ClassLabel l);

struct APDecomposition {
    long period = 1;
    long tail_start = 0;
    std::vector<ClassLabel> labels;
    std::vector<Rational> tail_densities;
    std::vector<long> exceptional;   // members outside Full classes
    std::vector<long> deficiencies;  // non-members inside Full classes
    bool overflow = false;           // a list hit the 10^4 cap
};

/// Smallest period with no Mixed residue class on the tail window, else
/// the period of least mixed mass. eps in (0, 1/2).
APDecomposition ap_decompose(const MembershipSet& set, long l_max, const Rational& eps,
                             const Rational& tail_fraction);

// ---- multiplicative dependence ----

struct DependenceRelation {
    IntVec exponents;  // i_0 .. i_d, not all zero
    Rational constant;
};
struct NoDependence {};
using DependenceResult = std::variant<DependenceRelation, NoDependence>;

/// First verified relation prod_j u_{n+j}^{i_j} = c, from the HNF basis of
/// the integer kernel of the valuation-difference system, sign-checked
/// against the values. All values must be S-units.
DependenceResult find_dependence(const std::vector<Rational>& values, long window,
                                 const PrimeSet& s);

// ---- exponent trajectories and the affine torus model ----

struct ExponentTrajectories {
    IntMat rows;                // row n = canonical exponents of values[n]
    std::vector<int> torsion;   // per-n sign leftover (+1 / -1)
};

/// Canonical exponent rows for values lying in G up to sign; the sign
/// leftovers land in the torsion track. Throws NotMember with the index
/// of the first value outside +-G.
ExponentTrajectories exponent_trajectories(const std::vector<Rational>& values,
                                           const MultSubgroup& g);

struct AffineModel {
    IntMat a;
    IntVec p;
};

/// Exact integer (A, p) with v(n+1) = A v(n) + p for every supplied row;
/// underdetermined systems resolve canonically toward (A, p) = (I, 0).
std::optional<AffineModel> fit_affine_exponent_model(const IntMat& rows);

/// Affine exponent dynamics realizing a_n = C * (sign) * prod g_i^{w_i(n)}
/// with w(n) the q-projection of the state. When dimension == generators+1
/// the last state coordinate drives the sign as (-1)^(q_e * v_e(n)).
struct TorusModel {
    IntMat a;
    IntVec p;
    IntVec v0;
    IntVec q;
    Rational c;
    const MultSubgroup* group = nullptr;
};

TorusModel build_torus_model(IntMat a, IntVec p, IntVec v0, IntVec q, Rational c,
                             const MultSubgroup& g);

struct TorusVerifyReport {
    bool verified = false;
    long horizon = 0;
    long first_failure = -1;
};
TorusVerifyReport verify_torus_model(const TorusModel& model,
                                     const std::vector<Rational>& values, long n);

/// trajectories -> affine fit -> model, with a sign-exponent coordinate
/// appended only when some torsion entry is -1. C = 1 by construction.
std::optional<TorusModel> assemble_torus_model(const std::vector<Rational>& values,
                                               const MultSubgroup& g);

// ---- geometric forms, zero patterns, rationality ----

struct GeometricForm {
    long period = 1;
    std::vector<Rational> alpha;   // per residue class
    std::vector<Rational> beta;
    std::vector<long> cutoff;      // class-level index the form starts at
};
struct NoGeometricForm {};
using GeometricFormResult = std::variant<GeometricForm, NoGeometricForm>;

/// Least period whose residue classes have constant consecutive ratios
/// past the tail index; alpha, beta read off exactly.
GeometricFormResult geometric_form(const std::vector<Rational>& values, long l_max,
                                   long tail_start);

struct ZeroPattern {
    long preperiod = 0;
    long period = 1;
    std::vector<bool> pattern;  // zero-indicator word of length `period`
    long horizon = 0;
};
struct Aperiodic {
    long horizon = 0;
};
using ZeroPatternResult = std::variant<ZeroPattern, Aperiodic>;

/// Least (s, L), s first, with the zero indicator (s, L)-eventually
/// periodic on [0, horizon]; requires s + L <= horizon/2. Empirical: no
/// Skolem-type certificate is attempted.
ZeroPatternResult zero_pattern(const std::vector<Rational>& values, long horizon);

enum class CertifyStage { Membership, Zeros, Form, Verify };
const char* certify_stage_name(CertifyStage s);

struct RationalClosedForm {
    Poly1 numerator;    // lowest terms, denominator constant term 1
    Poly1 denominator;
    long period = 1;
    long preperiod_end = 0;  // explicit preperiod covers indices < this
    long verified_terms = 0;
};
struct CertifyFailure {
    CertifyStage stage;
    long index = -1;  // first offending index when meaningful
};
using CertifyResult = std::variant<RationalClosedForm, CertifyFailure>;

/// The executable rationality certificate: expand n+1 terms, check
/// membership in G of every nonzero term, require an eventually periodic
/// zero pattern and geometric residue classes, assemble the rational
/// function, and re-expand it against every computed term exactly.
CertifyResult certify_rational(const PRecurrence& rec, const MultSubgroup& g, long n,
                               long l_max);

}  // namespace orbitlab
