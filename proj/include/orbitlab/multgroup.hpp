#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "orbitlab/linalg.hpp"
#include "orbitlab/numbers.hpp"

namespace orbitlab {

/// torsion * prod g_j^{exponents[j]} reconstructs the witnessed element.
struct ExponentWitness {
    IntVec exponents;
    int torsion = 1;  // +1 or -1; -1 only valid when -1 lies in the group
};

enum class NotMemberReason { Support, Lattice, Sign };
const char* not_member_reason_name(NotMemberReason r);

struct NotMember {
    NotMemberReason reason;
};

using MemberResult = std::variant<ExponentWitness, NotMember>;

struct RadicalWitness {
    long power;  // least m >= 1 with x^m in G
    ExponentWitness witness;  // witness for x^m
};
using RadicalResult = std::variant<RadicalWitness, NotMember>;

/// C = coeff_of_log2 * log 2 such that h(a) >= C * max_i |k_i| on the group.
struct HeightLowerBound {
    Rational coeff_of_log2;
    double value;
};

/// Finitely generated subgroup of Q^*: generators plus the derived
/// valuation matrix, image lattice, and relation lattices.
class MultSubgroup {
public:
    const std::vector<Rational>& generators() const { return generators_; }
    const PrimeSet& support() const { return support_; }
    /// rows = support primes (ascending), columns = generators
    const IntMat& gen_matrix() const { return gen_matrix_; }
    const std::vector<int>& sign_row() const { return sign_row_; }  // 0/1 per generator
    /// column HNF basis of the image lattice (one basis vector per column)
    const IntMat& lattice_basis() const { return lattice_basis_; }
    /// rows: basis of {r : prod g^r = 1 exactly} (valuations and sign)
    const IntMat& relations() const { return relations_; }
    /// rows: basis of the valuation kernel (sign ignored)
    const IntMat& valuation_kernel() const { return val_kernel_; }
    bool contains_minus_one() const { return minus_one_in_group_; }

    friend MultSubgroup build_group(const std::vector<Rational>& generators);

private:
    std::vector<Rational> generators_;
    PrimeSet support_;
    IntMat gen_matrix_;
    std::vector<int> sign_row_;
    IntMat lattice_basis_;
    IntMat relations_;
    IntMat val_kernel_;
    bool minus_one_in_group_ = false;
    Snf snf_;  // of gen_matrix, for saturation queries

    friend RadicalResult radical_contains(const MultSubgroup& g, const Rational& x);
};

MultSubgroup build_group(const std::vector<Rational>& generators);

/// Exponents solving the valuation system for x, canonically reduced
/// modulo the valuation kernel, together with the sign leftover. Fails
/// when x does not factor over the support or misses the image lattice.
/// The sign is not an obstruction here; strict membership layers it on.
struct SignedDecomposition {
    IntVec exponents;
    int torsion;  // sign(x) / sign(prod g^k)
};
std::variant<SignedDecomposition, NotMember> decompose_up_to_sign(const MultSubgroup& g,
                                                                  const Rational& x);

/// Strict group membership with witness.
MemberResult contains(const MultSubgroup& g, const Rational& x);

/// Canonical witness (HNF-reduced); NotMember propagated from contains.
MemberResult decompose(const MultSubgroup& g, const Rational& x);

/// Least m >= 1 with x^m in G, via the saturation of the image lattice.
RadicalResult radical_contains(const MultSubgroup& g, const Rational& x);

/// Certified Lemma-5.2-style constant for groups with free generators:
/// h(a) >= C max|k_i| with C = log 2 / (2 max_i ||W_i||_1), W a left
/// inverse of the generator matrix.
HeightLowerBound height_lower_constant(const MultSubgroup& g);

}  // namespace orbitlab
