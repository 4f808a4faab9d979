#include "orbitlab/structure.hpp"

#include <algorithm>

namespace orbitlab {

long MembershipSet::count() const {
    long c = 0;
    for (bool b : bits) c += b;
    return c;
}

std::vector<long> MembershipSet::members() const {
    std::vector<long> out;
    for (long n = 0; n <= n_max; ++n)
        if (bits[n]) out.push_back(n);
    return out;
}

MembershipSet membership_set(const std::vector<ExtValue>& values, const MultSubgroup& g) {
    MembershipSet set;
    set.n_max = static_cast<long>(values.size()) - 1;
    set.bits.resize(values.size(), false);
    set.zero_bits.resize(values.size(), false);
    for (size_t n = 0; n < values.size(); ++n) {
        if (values[n].infinite) continue;
        if (values[n].value == 0) {
            set.zero_bits[n] = true;
            continue;
        }
        set.bits[n] = std::holds_alternative<ExponentWitness>(contains(g, values[n].value));
    }
    return set;
}

Rational banach_density(const MembershipSet& set, long window) {
    long len = set.n_max + 1;
    if (window < 1 || window > len)
        throw Error(ErrorCode::WindowTooLarge, "window must lie in [1, n_max+1]");
    long in_window = 0, best = 0;
    for (long n = 0; n < len; ++n) {
        in_window += set.bits[n];
        if (n >= window) in_window -= set.bits[n - window];
        if (n >= window - 1) best = std::max(best, in_window);
    }
    Rational d(best, window);
    d.canonicalize();
    return d;
}

const char* class_label_name(ClassLabel l) {
    switch (l) {
        case ClassLabel::Full: return "full";
        case ClassLabel::Sparse: return "sparse";
        case ClassLabel::Mixed: return "mixed";
    }
    return "?";
}

namespace {

constexpr long kListCap = 10000;

struct ClassStats {
    std::vector<ClassLabel> labels;
    std::vector<Rational> densities;
    long mixed_mass = 0;
};

ClassStats tail_class_stats(const MembershipSet& set, long period, long tail_start,
                            const Rational& eps) {
    ClassStats st;
    st.labels.resize(period);
    st.densities.resize(period);
    for (long j = 0; j < period; ++j) {
        long total = 0, members = 0;
        for (long n = tail_start + ((j - tail_start) % period + period) % period; n <= set.n_max;
             n += period) {
            ++total;
            members += set.bits[n];
        }
        Rational density = total == 0 ? Rational(0) : Rational(members, total);
        density.canonicalize();
        st.densities[j] = density;
        if (density >= Rational(1) - eps)
            st.labels[j] = ClassLabel::Full;
        else if (density <= eps)
            st.labels[j] = ClassLabel::Sparse;
        else {
            st.labels[j] = ClassLabel::Mixed;
            st.mixed_mass += std::min(members, total - members);
        }
    }
    return st;
}

}  // namespace

APDecomposition ap_decompose(const MembershipSet& set, long l_max, const Rational& eps,
                             const Rational& tail_fraction) {
    if (l_max < 1) throw Error(ErrorCode::BadInput, "l_max must be >= 1");
    if (eps <= 0 || eps >= Rational(1, 2))
        throw Error(ErrorCode::BadInput, "eps must lie in (0, 1/2)");
    long len = set.n_max + 1;
    Rational ts = tail_fraction * len;
    long tail_start = static_cast<long>(mpz_class(ts.get_num() / ts.get_den()).get_si());
    tail_start = std::clamp<long>(tail_start, 0, set.n_max);

    long best_l = 1;
    ClassStats best;
    bool found_clean = false;
    for (long period = 1; period <= l_max; ++period) {
        ClassStats st = tail_class_stats(set, period, tail_start, eps);
        bool clean = st.mixed_mass == 0 &&
                     std::none_of(st.labels.begin(), st.labels.end(),
                                  [](ClassLabel l) { return l == ClassLabel::Mixed; });
        if (period == 1 || (!found_clean && st.mixed_mass < best.mixed_mass)) {
            best_l = period;
            best = st;
            found_clean = clean;
        }
        if (clean) {
            best_l = period;
            best = st;
            found_clean = true;
            break;
        }
    }

    APDecomposition out;
    out.period = best_l;
    out.tail_start = tail_start;
    out.labels = best.labels;
    out.tail_densities = best.densities;
    for (long n = 0; n <= set.n_max; ++n) {
        bool full_class = best.labels[n % best_l] == ClassLabel::Full;
        if (set.bits[n] && !full_class) {
            if (static_cast<long>(out.exceptional.size()) < kListCap)
                out.exceptional.push_back(n);
            else
                out.overflow = true;
        } else if (!set.bits[n] && full_class) {
            if (static_cast<long>(out.deficiencies.size()) < kListCap)
                out.deficiencies.push_back(n);
            else
                out.overflow = true;
        }
    }
    return out;
}

DependenceResult find_dependence(const std::vector<Rational>& values, long window,
                                 const PrimeSet& s) {
    long len = static_cast<long>(values.size());
    if (window < 2) throw Error(ErrorCode::BadInput, "window must be >= 2");
    if (len < window + 2) throw Error(ErrorCode::TooShort, "need at least window+2 values");
    std::vector<std::vector<long>> val(len);
    for (long n = 0; n < len; ++n) {
        auto f = sunit_factor(s, values[n]);
        if (std::holds_alternative<NotSUnit>(f))
            throw Error(ErrorCode::NotSUnit, "value is not an S-unit", n);
        const ValVector& v = std::get<ValVector>(f);
        val[n].resize(s.size());
        for (long i = 0; i < s.size(); ++i) {
            auto it = v.exponents.find(s.primes()[i]);
            val[n][i] = it == v.exponents.end() ? 0 : it->second;
        }
    }

    long nrows = (len - window) * s.size();
    IntMat m(nrows, window);
    long row = 0;
    for (long n = 0; n + window < len; ++n)
        for (long i = 0; i < s.size(); ++i, ++row)
            for (long j = 0; j < window; ++j)
                m(row, j) = Integer(val[n + j][i] - val[n + 1 + j][i]);

    IntMat kernel = int_kernel(m);

    // refine by the sign-constancy condition over F_2
    std::vector<int> sigma(len);
    for (long n = 0; n < len; ++n) sigma[n] = sgn(values[n]) < 0 ? 1 : 0;
    long r = kernel.rows();
    IntMat parity(len - window, r);  // parity deltas per basis vector
    for (long k = 0; k < r; ++k)
        for (long n = 0; n + window < len; ++n) {
            long acc = 0;
            for (long j = 0; j < window; ++j)
                acc += (sigma[n + j] ^ sigma[n + 1 + j]) &
                       static_cast<long>(mpz_odd_p(kernel(k, j).get_mpz_t()));
            parity(n, k) = acc % 2;
        }
    // F_2 kernel of the parity matrix lifts to the refined sublattice
    IntMat lift(0, 0);
    {
        // Gaussian elimination mod 2 on parity
        std::vector<std::vector<int>> a(parity.rows(), std::vector<int>(r));
        for (long i = 0; i < parity.rows(); ++i)
            for (long k = 0; k < r; ++k) a[i][k] = static_cast<int>(parity(i, k).get_si());
        std::vector<long> pivot_of_col(r, -1);
        long rank = 0;
        for (long c = 0; c < r && rank < static_cast<long>(a.size()); ++c) {
            long piv = -1;
            for (long i = rank; i < static_cast<long>(a.size()); ++i)
                if (a[i][c]) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(a[rank], a[piv]);
            for (long i = 0; i < static_cast<long>(a.size()); ++i)
                if (i != rank && a[i][c])
                    for (long k = 0; k < r; ++k) a[i][k] ^= a[rank][k];
            pivot_of_col[c] = rank;
            ++rank;
        }
        std::vector<IntVec> rows;
        for (long c = 0; c < r; ++c) {
            if (pivot_of_col[c] >= 0) {
                // 2 * basis vector c is always admissible
                IntVec v(window);
                for (long j = 0; j < window; ++j) v[j] = 2 * kernel(c, j);
                rows.push_back(std::move(v));
            } else {
                // free column: lift the F_2 kernel vector
                std::vector<int> combo(r, 0);
                combo[c] = 1;
                for (long cc = 0; cc < r; ++cc)
                    if (pivot_of_col[cc] >= 0 && a[pivot_of_col[cc]][c]) combo[cc] = 1;
                IntVec v(window);
                for (long k = 0; k < r; ++k)
                    if (combo[k])
                        for (long j = 0; j < window; ++j) v[j] += kernel(k, j);
                rows.push_back(std::move(v));
            }
        }
        if (!rows.empty()) {
            IntMat stacked(static_cast<long>(rows.size()), window);
            for (size_t i = 0; i < rows.size(); ++i)
                for (long j = 0; j < window; ++j) stacked(i, j) = rows[i][j];
            lift = row_hnf(stacked);
        }
    }

    auto verify = [&](IntVec cand) -> std::optional<DependenceRelation> {
        bool nonzero = false;
        for (const Integer& x : cand) nonzero = nonzero || x != 0;
        if (!nonzero) return std::nullopt;
        Integer g = content(cand);
        if (g > 1) {
            IntVec reduced = cand;
            for (Integer& x : reduced) x /= g;
            Rational c0(1);
            for (long j = 0; j < window; ++j)
                c0 *= rational_pow(values[j], reduced[j].get_si());
            bool ok = true;
            for (long n = 1; n + window <= len && ok; ++n) {
                Rational cn(1);
                for (long j = 0; j < window; ++j)
                    cn *= rational_pow(values[n + j], reduced[j].get_si());
                ok = cn == c0;
            }
            if (ok) return DependenceRelation{std::move(reduced), std::move(c0)};
        }
        Rational c0(1);
        for (long j = 0; j < window; ++j) c0 *= rational_pow(values[j], cand[j].get_si());
        for (long n = 1; n + window <= len; ++n) {
            Rational cn(1);
            for (long j = 0; j < window; ++j) cn *= rational_pow(values[n + j], cand[j].get_si());
            if (cn != c0) return std::nullopt;
        }
        return DependenceRelation{std::move(cand), std::move(c0)};
    };

    for (long k = 0; k < lift.rows(); ++k) {
        IntVec cand(window);
        for (long j = 0; j < window; ++j) cand[j] = lift(k, j);
        if (auto rel = verify(std::move(cand))) return *rel;
    }
    return NoDependence{};
}

ExponentTrajectories exponent_trajectories(const std::vector<Rational>& values,
                                           const MultSubgroup& g) {
    ExponentTrajectories out;
    long m = static_cast<long>(g.generators().size());
    out.rows = IntMat(static_cast<long>(values.size()), m);
    out.torsion.resize(values.size());
    for (size_t n = 0; n < values.size(); ++n) {
        if (values[n] == 0)
            throw Error(ErrorCode::NotMember, "zero value has no exponent row",
                        static_cast<long>(n));
        auto d = decompose_up_to_sign(g, values[n]);
        if (std::holds_alternative<NotMember>(d))
            throw Error(ErrorCode::NotMember,
                        std::string("value outside +-G: ") +
                            not_member_reason_name(std::get<NotMember>(d).reason),
                        static_cast<long>(n));
        auto& sd = std::get<SignedDecomposition>(d);
        for (long j = 0; j < m; ++j) out.rows(n, j) = sd.exponents[j];
        out.torsion[n] = sd.torsion;
    }
    return out;
}

std::optional<AffineModel> fit_affine_exponent_model(const IntMat& rows) {
    long n = rows.rows(), e = rows.cols();
    if (n < e + 2) throw Error(ErrorCode::TooShort, "need at least dimension+2 trajectory rows");
    // per state coordinate: (A_i - e_i) . v(n) + p_i = v(n+1)_i - v(n)_i,
    // solved over Z and canonically reduced so A leans toward the identity
    IntMat m(n - 1, e + 1);
    for (long t = 0; t + 1 < n; ++t) {
        for (long j = 0; j < e; ++j) m(t, j) = rows(t, j);
        m(t, e) = 1;
    }
    IntMat kernel = int_kernel(m);
    AffineModel model;
    model.a = IntMat(e, e);
    model.p = IntVec(e);
    for (long i = 0; i < e; ++i) {
        IntVec rhs(n - 1);
        for (long t = 0; t + 1 < n; ++t) rhs[t] = rows(t + 1, i) - rows(t, i);
        auto sol = solve_int(m, rhs);
        if (!sol) return std::nullopt;
        IntVec canon = reduce_mod_lattice(*sol, kernel);
        for (long j = 0; j < e; ++j) model.a(i, j) = canon[j] + (i == j ? 1 : 0);
        model.p[i] = canon[e];
    }
    // exact re-verification on every supplied row
    for (long t = 0; t + 1 < n; ++t)
        for (long i = 0; i < e; ++i) {
            Integer acc = model.p[i];
            for (long j = 0; j < e; ++j) acc += model.a(i, j) * rows(t, j);
            if (acc != rows(t + 1, i)) return std::nullopt;
        }
    return model;
}

TorusModel build_torus_model(IntMat a, IntVec p, IntVec v0, IntVec q, Rational c,
                             const MultSubgroup& g) {
    long e = a.rows();
    long m = static_cast<long>(g.generators().size());
    if (a.cols() != e || static_cast<long>(p.size()) != e || static_cast<long>(v0.size()) != e ||
        static_cast<long>(q.size()) != e)
        throw Error(ErrorCode::DimensionMismatch, "torus model pieces disagree in dimension");
    if (e != m && e != m + 1)
        throw Error(ErrorCode::DimensionMismatch,
                    "state dimension must be #generators or #generators+1");
    if (c == 0) throw Error(ErrorCode::ZeroConstant, "output constant must be nonzero");
    return TorusModel{std::move(a), std::move(p), std::move(v0), std::move(q), std::move(c), &g};
}

TorusVerifyReport verify_torus_model(const TorusModel& model, const std::vector<Rational>& values,
                                     long n) {
    const MultSubgroup& g = *model.group;
    long m = static_cast<long>(g.generators().size());
    long e = model.a.rows();
    bool has_sign = e == m + 1;
    TorusVerifyReport report;
    report.horizon = n;
    IntVec v = model.v0;
    for (long k = 0; k <= n; ++k) {
        if (k >= static_cast<long>(values.size()))
            throw Error(ErrorCode::TooShort, "fewer values than the verification horizon");
        Rational predicted = model.c;
        for (long i = 0; i < m; ++i) {
            Integer w = model.q[i] * v[i];
            predicted *= rational_pow(g.generators()[i], w.get_si());
        }
        if (has_sign) {
            Integer sexp = model.q[m] * v[m];
            if (mpz_odd_p(sexp.get_mpz_t())) predicted = -predicted;
        }
        if (predicted != values[k]) {
            report.first_failure = k;
            return report;
        }
        if (k < n) {
            IntVec next = model.a.apply(v);
            for (long i = 0; i < e; ++i) next[i] += model.p[i];
            v = std::move(next);
        }
    }
    report.verified = true;
    return report;
}

std::optional<TorusModel> assemble_torus_model(const std::vector<Rational>& values,
                                               const MultSubgroup& g) {
    ExponentTrajectories traj = exponent_trajectories(values, g);
    long m = traj.rows.cols();
    bool needs_sign =
        std::any_of(traj.torsion.begin(), traj.torsion.end(), [](int t) { return t == -1; });
    long e = needs_sign ? m + 1 : m;
    IntMat state(traj.rows.rows(), e);
    for (long n = 0; n < traj.rows.rows(); ++n) {
        for (long j = 0; j < m; ++j) state(n, j) = traj.rows(n, j);
        if (needs_sign) state(n, m) = traj.torsion[n] == -1 ? 1 : 0;
    }
    auto fit = fit_affine_exponent_model(state);
    if (!fit) return std::nullopt;
    IntVec v0(e), q(e, Integer(1));
    for (long j = 0; j < e; ++j) v0[j] = state(0, j);
    return build_torus_model(std::move(fit->a), std::move(fit->p), std::move(v0), std::move(q),
                             Rational(1), g);
}

GeometricFormResult geometric_form(const std::vector<Rational>& values, long l_max,
                                   long tail_start) {
    long len = static_cast<long>(values.size());
    if (l_max < 1) throw Error(ErrorCode::BadInput, "l_max must be >= 1");
    for (long n = tail_start; n < len; ++n)
        if (values[n] == 0) throw Error(ErrorCode::ZeroOnTail, "zero value on the tail", n);
    for (long period = 1; period <= l_max; ++period) {
        GeometricForm form;
        form.period = period;
        form.alpha.resize(period);
        form.beta.resize(period);
        form.cutoff.resize(period);
        bool ok = true;
        for (long j = 0; j < period && ok; ++j) {
            long t0 = (tail_start - j + period - 1) / period;  // ceil
            if (t0 < 0) t0 = 0;
            std::vector<Rational> cls;
            for (long t = t0; period * t + j < len; ++t) cls.push_back(values[period * t + j]);
            if (cls.size() < 2) { ok = false; break; }
            Rational beta = cls[1] / cls[0];
            for (size_t t = 1; t + 1 < cls.size() && ok; ++t) ok = cls[t + 1] / cls[t] == beta;
            if (!ok) break;
            form.beta[j] = beta;
            form.cutoff[j] = t0;
            form.alpha[j] = cls[0] / rational_pow(beta, t0);
        }
        if (ok) return form;
    }
    return NoGeometricForm{};
}

ZeroPatternResult zero_pattern(const std::vector<Rational>& values, long horizon) {
    long len = std::min<long>(horizon + 1, static_cast<long>(values.size()));
    std::vector<bool> z(len);
    for (long n = 0; n < len; ++n) z[n] = values[n] == 0;
    long best_s = -1, best_l = -1;
    for (long period = 1; 2 * period <= len; ++period) {
        long s_min = 0;
        for (long n = len - period - 1; n >= 0; --n)
            if (z[n + period] != z[n]) { s_min = n + 1; break; }
        if (s_min + period > len / 2) continue;
        if (best_s < 0 || s_min < best_s || (s_min == best_s && period < best_l)) {
            best_s = s_min;
            best_l = period;
        }
    }
    if (best_s < 0) return Aperiodic{horizon};
    ZeroPattern zp;
    zp.preperiod = best_s;
    zp.period = best_l;
    zp.horizon = horizon;
    zp.pattern.assign(z.begin() + best_s, z.begin() + best_s + best_l);
    return zp;
}

const char* certify_stage_name(CertifyStage s) {
    switch (s) {
        case CertifyStage::Membership: return "membership";
        case CertifyStage::Zeros: return "zeros";
        case CertifyStage::Form: return "form";
        case CertifyStage::Verify: return "verify";
    }
    return "?";
}

namespace {

/// Power series of num/den (den(0) != 0) to `n` terms, exactly.
std::vector<Rational> rational_series(const Poly1& num, const Poly1& den, long n) {
    std::vector<Rational> b(n + 1);
    Rational d0 = den.coeff(0);
    for (long k = 0; k <= n; ++k) {
        Rational acc = num.coeff(k);
        for (long i = 1; i <= std::min<long>(k, den.degree()); ++i)
            acc -= den.coeff(i) * b[k - i];
        b[k] = acc / d0;
    }
    return b;
}

}  // namespace

CertifyResult certify_rational(const PRecurrence& rec, const MultSubgroup& g, long n,
                               long l_max) {
    if (n < 4 * l_max + 8)
        throw Error(ErrorCode::TooShort, "need n >= 4*l_max + 8 expanded terms");
    std::vector<Rational> terms = expand(rec, n);
    long len = static_cast<long>(terms.size());

    for (long k = 0; k < len; ++k) {
        if (terms[k] == 0) continue;
        if (!std::holds_alternative<ExponentWitness>(contains(g, terms[k])))
            return CertifyFailure{CertifyStage::Membership, k};
    }

    auto zp_result = zero_pattern(terms, len - 1);
    if (std::holds_alternative<Aperiodic>(zp_result))
        return CertifyFailure{CertifyStage::Zeros, -1};
    const ZeroPattern& zp = std::get<ZeroPattern>(zp_result);
    if (zp.period > l_max) return CertifyFailure{CertifyStage::Zeros, -1};

    for (long period = zp.period; period <= l_max; period += zp.period) {
        // per residue class: all-zero past the preperiod, or constant
        // consecutive ratio from a cutoff within the first half of the class
        std::vector<long> cutoff(period, 0);
        std::vector<Rational> beta(period);
        std::vector<bool> zero_class(period, false);
        bool ok = true;
        for (long j = 0; j < period && ok; ++j) {
            std::vector<Rational> cls;
            for (long t = 0; period * t + j < len; ++t) cls.push_back(terms[period * t + j]);
            long t_min = (zp.preperiod - j + period - 1) / period;
            if (t_min < 0) t_min = 0;
            bool all_zero = true;
            for (size_t t = t_min; t < cls.size(); ++t) all_zero = all_zero && cls[t] == 0;
            if (all_zero) {
                zero_class[j] = true;
                cutoff[j] = t_min;
                continue;
            }
            long t_nz = t_min;  // zero pattern is periodic past zp.preperiod,
                                // so the class is all-nonzero from t_min on
            long last_break = t_nz;
            for (size_t t = t_nz; t + 2 < cls.size(); ++t)
                if (cls[t + 1] / cls[t] != cls[t + 2] / cls[t + 1]) last_break = t + 1;
            long avail = static_cast<long>(cls.size()) - t_nz;
            if (static_cast<long>(cls.size()) - last_break < 3 || last_break - t_nz > avail / 2) {
                ok = false;
                break;
            }
            cutoff[j] = last_break;
            beta[j] = cls[last_break + 1] / cls[last_break];
        }
        if (!ok) continue;

        long preperiod_end = 0;
        for (long j = 0; j < period; ++j)
            if (!zero_class[j]) preperiod_end = std::max(preperiod_end, period * cutoff[j] + j);
        Poly1 numerator, denominator = Poly1::constant(Rational(1));
        for (long j = 0; j < period; ++j) {
            if (zero_class[j]) continue;
            std::vector<Rational> factor_c(period + 1);
            factor_c[0] = 1;
            factor_c[period] = -beta[j];
            denominator = denominator * Poly1(std::move(factor_c));
        }
        for (long k = 0; k < preperiod_end; ++k)
            numerator = numerator + Poly1::monomial(k, terms[k]) * denominator;
        for (long j = 0; j < period; ++j) {
            if (zero_class[j]) continue;
            long t0 = (preperiod_end - j + period - 1) / period;
            if (t0 < 0) t0 = 0;
            long start = period * t0 + j;
            if (start >= len) continue;
            std::vector<Rational> factor_c(period + 1);
            factor_c[0] = 1;
            factor_c[period] = -beta[j];
            Poly1 others = divrem(denominator, Poly1(std::move(factor_c))).first;
            numerator = numerator + Poly1::monomial(start, terms[start]) * others;
        }
        Poly1 common = poly_gcd(numerator, denominator);
        if (common.degree() > 0) {
            numerator = divrem(numerator, common).first;
            denominator = divrem(denominator, common).first;
        }
        Rational d0 = denominator.coeff(0);
        numerator = numerator * (Rational(1) / d0);
        denominator = denominator * (Rational(1) / d0);

        if (rational_series(numerator, denominator, len - 1) != terms)
            return CertifyFailure{CertifyStage::Verify, -1};
        RationalClosedForm form;
        form.numerator = std::move(numerator);
        form.denominator = std::move(denominator);
        form.period = period;
        form.preperiod_end = preperiod_end;
        form.verified_terms = len;
        return form;
    }
    return CertifyFailure{CertifyStage::Form, -1};
}

}  // namespace orbitlab
