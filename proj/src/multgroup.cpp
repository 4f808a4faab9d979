#include "orbitlab/multgroup.hpp"

#include <algorithm>
#include <cmath>

namespace orbitlab {

const char* not_member_reason_name(NotMemberReason r) {
    switch (r) {
        case NotMemberReason::Support: return "support";
        case NotMemberReason::Lattice: return "lattice";
        case NotMemberReason::Sign: return "sign";
    }
    return "?";
}

MultSubgroup build_group(const std::vector<Rational>& generators) {
    MultSubgroup g;
    g.generators_ = generators;
    std::vector<Integer> primes;
    for (size_t j = 0; j < generators.size(); ++j) {
        const Rational& gen = generators[j];
        if (gen == 0)
            throw Error(ErrorCode::ZeroGenerator, "generator is zero", static_cast<long>(j));
        for (const auto& [p, e] : factor_integer(abs(gen.get_num()))) primes.push_back(p);
        for (const auto& [p, e] : factor_integer(Integer(gen.get_den()))) primes.push_back(p);
    }
    g.support_ = PrimeSet(std::move(primes));

    long s = g.support_.size();
    long m = static_cast<long>(generators.size());
    g.gen_matrix_ = IntMat(s, m);
    g.sign_row_.resize(m);
    for (long j = 0; j < m; ++j) {
        g.sign_row_[j] = sgn(generators[j]) < 0 ? 1 : 0;
        for (long i = 0; i < s; ++i)
            g.gen_matrix_(i, j) = valuation(g.support_.primes()[i], generators[j]);
    }

    ColHnf ch = col_hnf(g.gen_matrix_);
    g.lattice_basis_ = IntMat(s, ch.rank);
    for (long k = 0; k < ch.rank; ++k)
        for (long i = 0; i < s; ++i) g.lattice_basis_(i, k) = ch.h(i, k);

    g.val_kernel_ = int_kernel(g.gen_matrix_);

    // exact relations: kernel vectors whose sign parity is even. A kernel
    // vector with odd parity witnesses -1 in the group.
    auto parity = [&](long row) {
        long acc = 0;
        for (long j = 0; j < m; ++j)
            acc += g.sign_row_[j] * static_cast<long>(mpz_odd_p(g.val_kernel_(row, j).get_mpz_t()));
        return acc % 2;
    };
    long r = g.val_kernel_.rows();
    long odd_row = -1;
    for (long i = 0; i < r; ++i)
        if (parity(i) == 1) { odd_row = i; break; }
    g.minus_one_in_group_ = odd_row >= 0;
    if (odd_row < 0) {
        g.relations_ = g.val_kernel_;
    } else {
        IntMat rel(r, m);
        long out = 0;
        for (long i = 0; i < r; ++i) {
            if (i == odd_row) {
                for (long j = 0; j < m; ++j) rel(out, j) = 2 * g.val_kernel_(i, j);
            } else if (parity(i) == 1) {
                for (long j = 0; j < m; ++j)
                    rel(out, j) = g.val_kernel_(i, j) - g.val_kernel_(odd_row, j);
            } else {
                for (long j = 0; j < m; ++j) rel(out, j) = g.val_kernel_(i, j);
            }
            ++out;
        }
        g.relations_ = row_hnf(rel);
    }

    g.snf_ = smith_normal_form(g.gen_matrix_);
    return g;
}

namespace {

std::optional<IntVec> valuation_vector(const MultSubgroup& g, const Rational& x) {
    auto fact = sunit_factor(g.support(), x);
    if (std::holds_alternative<NotSUnit>(fact)) return std::nullopt;
    const ValVector& v = std::get<ValVector>(fact);
    IntVec b(g.support().size());
    for (long i = 0; i < g.support().size(); ++i) {
        auto it = v.exponents.find(g.support().primes()[i]);
        b[i] = it == v.exponents.end() ? 0 : it->second;
    }
    return b;
}

int sign_of_power_product(const MultSubgroup& g, const IntVec& k) {
    long acc = 0;
    for (size_t j = 0; j < k.size(); ++j)
        acc += g.sign_row()[j] * static_cast<long>(mpz_odd_p(k[j].get_mpz_t()));
    return acc % 2 == 0 ? 1 : -1;
}

}  // namespace

std::variant<SignedDecomposition, NotMember> decompose_up_to_sign(const MultSubgroup& g,
                                                                  const Rational& x) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "membership of 0 is undefined");
    auto b = valuation_vector(g, x);
    if (!b) return NotMember{NotMemberReason::Support};
    auto k = solve_int(g.gen_matrix(), *b);
    if (!k) return NotMember{NotMemberReason::Lattice};
    IntVec canon = reduce_mod_lattice(*k, g.valuation_kernel());
    int torsion = sign_of(x) * sign_of_power_product(g, canon);
    return SignedDecomposition{std::move(canon), torsion};
}

MemberResult contains(const MultSubgroup& g, const Rational& x) {
    auto d = decompose_up_to_sign(g, x);
    if (std::holds_alternative<NotMember>(d)) return std::get<NotMember>(d);
    auto& sd = std::get<SignedDecomposition>(d);
    if (sd.torsion == -1 && !g.contains_minus_one()) return NotMember{NotMemberReason::Sign};
    return ExponentWitness{std::move(sd.exponents), sd.torsion};
}

MemberResult decompose(const MultSubgroup& g, const Rational& x) {
    return contains(g, x);
}

RadicalResult radical_contains(const MultSubgroup& g, const Rational& x) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "membership of 0 is undefined");
    auto b = valuation_vector(g, x);
    if (!b) return NotMember{NotMemberReason::Support};
    const Snf& snf = g.snf_;
    IntVec c = snf.u.apply(*b);
    for (long i = snf.rank; i < static_cast<long>(c.size()); ++i)
        if (c[i] != 0) return NotMember{NotMemberReason::Lattice};
    Integer mval(1);
    for (long i = 0; i < snf.rank; ++i) {
        if (c[i] == 0) continue;
        Integer gcd;
        mpz_gcd(gcd.get_mpz_t(), snf.d(i, i).get_mpz_t(), c[i].get_mpz_t());
        Integer need = snf.d(i, i) / gcd;
        mpz_lcm(mval.get_mpz_t(), mval.get_mpz_t(), need.get_mpz_t());
    }
    long m = static_cast<long>(mval.get_si());
    auto witness_for_power = [&](long power) -> std::optional<ExponentWitness> {
        IntVec target(b->size());
        for (size_t i = 0; i < b->size(); ++i) target[i] = (*b)[i] * power;
        auto k = solve_int(g.gen_matrix(), target);
        if (!k) return std::nullopt;
        IntVec canon = reduce_mod_lattice(*k, g.valuation_kernel());
        int sign_target = (power % 2 == 0) ? 1 : sign_of(x);
        int torsion = sign_target * sign_of_power_product(g, canon);
        if (torsion == -1 && !g.contains_minus_one()) return std::nullopt;
        return ExponentWitness{std::move(canon), torsion};
    };
    if (auto w = witness_for_power(m)) return RadicalWitness{m, std::move(*w)};
    // sign obstruction at m; squaring clears it since (-1)^2 = 1
    auto w2 = witness_for_power(2 * m);
    if (!w2)
        throw Error(ErrorCode::BadInput, "saturation solver failed unexpectedly");
    return RadicalWitness{2 * m, std::move(*w2)};
}

HeightLowerBound height_lower_constant(const MultSubgroup& g) {
    if (g.relations().rows() > 0)
        throw Error(ErrorCode::NotFree, "generators are multiplicatively dependent");
    if (g.support().size() == 0)
        throw Error(ErrorCode::EmptySupport, "all generators are units +-1");
    long s = g.support().size();
    long m = g.gen_matrix().cols();
    RatMat v(s, m);
    for (long i = 0; i < s; ++i)
        for (long j = 0; j < m; ++j) v(i, j) = Rational(g.gen_matrix()(i, j));
    auto w = left_inverse(v);
    if (!w) throw Error(ErrorCode::NotFree, "generator matrix has no left inverse");
    Rational max_norm;
    for (long i = 0; i < m; ++i) {
        Rational norm;
        for (long j = 0; j < s; ++j) norm += abs((*w)(i, j));
        max_norm = std::max(max_norm, norm);
    }
    HeightLowerBound out;
    out.coeff_of_log2 = Rational(1) / (2 * max_norm);
    out.value = mpq_get_d(out.coeff_of_log2.get_mpq_t()) * std::log(2.0);
    return out;
}

}  // namespace orbitlab
