#include "orbitlab/holonomic.hpp"

#include <algorithm>

#include "orbitlab/linalg.hpp"

namespace orbitlab {

PRecurrence::PRecurrence(std::vector<RatFunc1> coeffs, long shift, std::vector<Rational> initial)
    : coeffs_(std::move(coeffs)), shift_(shift), initial_(std::move(initial)) {
    if (coeffs_.empty()) throw Error(ErrorCode::BadInput, "recurrence needs r_0");
    if (shift_ < 0) throw Error(ErrorCode::BadInput, "shift must be >= 0");
    if (static_cast<long>(initial_.size()) != order() + 1)
        throw Error(ErrorCode::BadInput, "need exactly order+1 initial terms");
    for (const RatFunc1& r : coeffs_)
        for (const Integer& root : integer_roots(r.den()))
            if (root >= shift_)
                throw Error(ErrorCode::PoleHit,
                            "coefficient pole at n = " + root.get_str() + " >= shift");
}

DFiniteODE::DFiniteODE(std::vector<Poly1> poly_coeffs, std::vector<Rational> initial)
    : poly_coeffs_(std::move(poly_coeffs)), initial_(std::move(initial)) {
    bool all_zero = true;
    for (const Poly1& p : poly_coeffs_) all_zero = all_zero && p.is_zero();
    if (poly_coeffs_.empty() || all_zero)
        throw Error(ErrorCode::DegenerateODE, "all ODE coefficients vanish");
    if (poly_coeffs_.back().is_zero())
        throw Error(ErrorCode::DegenerateODE, "leading ODE coefficient vanishes identically");
}

namespace {

// Coefficient extraction: the relation sum_e Q_e(m) a_{m+e} = 0 holds for
// all m >= 0 (terms with m+e < 0 dropped), where
//   Q_e(m) = sum_{i-j=e} p_{i,j} * (m+e)(m+e-1)...(m+e-i+1).
std::map<long, Poly1> ode_shift_polys(const DFiniteODE& ode) {
    std::map<long, Poly1> q;
    for (long i = 0; i <= ode.order(); ++i) {
        const Poly1& p = ode.poly_coeffs()[i];
        for (long j = 0; j <= p.degree(); ++j) {
            if (p.coeff(j) == 0) continue;
            long e = i - j;
            // falling factorial of length i starting at (m + e)
            Poly1 ff = Poly1::constant(p.coeff(j));
            for (long s = 0; s < i; ++s)
                ff = ff * Poly1({Rational(e - s), Rational(1)});
            auto it = q.find(e);
            if (it == q.end())
                q.emplace(e, ff);
            else
                it->second = it->second + ff;
        }
    }
    for (auto it = q.begin(); it != q.end();)
        it = it->second.is_zero() ? q.erase(it) : std::next(it);
    return q;
}

}  // namespace

std::vector<Rational> expand(const PRecurrence& rec, long n) {
    if (n < 0) throw Error(ErrorCode::BadInput, "n must be >= 0");
    std::vector<Rational> a = rec.initial();
    long d = rec.order();
    while (static_cast<long>(a.size()) <= n) {
        long idx = rec.shift() + static_cast<long>(a.size()) - 1;  // recurrence index
        Rational next;
        for (long i = 0; i <= d; ++i) {
            auto r = rec.coeffs()[i].eval(Rational(idx));
            if (!r) throw Error(ErrorCode::PoleHit, "coefficient pole hit during expansion", idx);
            next += *r * a[a.size() - 1 - i];
        }
        a.push_back(std::move(next));
    }
    a.resize(n + 1);
    return a;
}

std::vector<Rational> expand(const CFiniteRecurrence& rec, long n) {
    if (n < 0) throw Error(ErrorCode::BadInput, "n must be >= 0");
    if (static_cast<long>(rec.initial.size()) != rec.order())
        throw Error(ErrorCode::BadInput, "need exactly `order` initial terms");
    std::vector<Rational> a = rec.initial;
    a.resize(std::max<long>(n + 1, rec.order()), Rational(0));
    for (long k = rec.order(); k <= n; ++k) {
        Rational next;
        for (long i = 1; i <= rec.order(); ++i) next += rec.coeffs[i - 1] * a[k - i];
        a[k] = next;
    }
    a.resize(n + 1);
    return a;
}

std::vector<Rational> expand(const DFiniteODE& ode, long n) {
    auto q = ode_shift_polys(ode);
    long e_max = q.rbegin()->first;
    const Poly1& lead = q.rbegin()->second;
    std::vector<Rational> a = ode.initial();
    for (long t = static_cast<long>(a.size()); t <= n; ++t) {
        long m = t - e_max;
        if (m < 0 || lead.eval(Rational(m)) == 0)
            throw Error(ErrorCode::BadInput,
                        "initial segment does not determine coefficient " + std::to_string(t));
        Rational acc;
        for (const auto& [e, poly] : q) {
            if (e == e_max || m + e < 0) continue;
            acc += poly.eval(Rational(m)) * a[m + e];
        }
        a.push_back(-acc / lead.eval(Rational(m)));
    }
    // consistency of the supplied segment with every fully-covered relation
    for (long m = 0; m + e_max < static_cast<long>(a.size()); ++m) {
        Rational acc;
        for (const auto& [e, poly] : q)
            if (m + e >= 0) acc += poly.eval(Rational(m)) * a[m + e];
        if (acc != 0)
            throw Error(ErrorCode::BadInput,
                        "initial segment inconsistent with the ODE at relation " + std::to_string(m));
    }
    a.resize(n + 1);
    return a;
}

PRecurrence ode_to_recurrence(const DFiniteODE& ode) {
    auto q = ode_shift_polys(ode);
    if (q.empty()) throw Error(ErrorCode::DegenerateODE, "no coefficient relations");
    long e_max = q.rbegin()->first;
    long e_min = q.begin()->first;
    const Poly1& lead = q.rbegin()->second;

    long max_root = -1;
    for (const Integer& r : integer_roots(lead))
        if (r >= 0) max_root = std::max(max_root, static_cast<long>(r.get_si()));

    long d = e_max - 1 - e_min;
    if (d < 0) {
        // relation Q_emax(m) a_{m+emax} = 0: the sequence vanishes from
        // index e_max + max_root + 1 on
        long zero_from = e_max + max_root + 1;
        long shift = std::max<long>(zero_from - 1, 0);
        std::vector<Rational> full = expand(ode, shift);
        return PRecurrence({RatFunc1::constant(Rational(0))}, shift, {full[shift]});
    }

    // a_{n+1} = sum_{i=0}^{d} r_i(n) a_{n-i},  r_i(n) = -Q_{e_max-1-i}(n+1-e_max) / Q_{e_max}(n+1-e_max)
    std::vector<RatFunc1> coeffs;
    Poly1 lead_shifted = lead.shifted(Rational(1 - e_max));
    for (long i = 0; i <= d; ++i) {
        long e = e_max - 1 - i;
        auto it = q.find(e);
        if (it == q.end())
            coeffs.push_back(RatFunc1::constant(Rational(0)));
        else
            coeffs.push_back(RatFunc1(-(it->second.shifted(Rational(1 - e_max))), lead_shifted));
    }
    // shift must clear (a) rows with negative indices, (b) rows where the
    // leading relation coefficient vanishes, (c) every pole of the reduced
    // coefficients at integers >= shift
    long shift = std::max<long>({0, e_min, e_min + max_root + 1});
    for (const RatFunc1& r : coeffs)
        for (const Integer& root : integer_roots(r.den()))
            shift = std::max(shift, static_cast<long>(root.get_si()) + 1);
    std::vector<Rational> full = expand(ode, shift + d);
    std::vector<Rational> init(full.begin() + shift, full.end());
    return PRecurrence(std::move(coeffs), shift, std::move(init));
}

DynSysEncoding recurrence_to_dynsys(const PRecurrence& rec) {
    long d = rec.order();
    int dim = static_cast<int>(d + 2);
    DynSysEncoding enc;
    enc.map.dimension = dim;
    enc.shift = rec.shift();

    auto one = MultiPoly::constant(dim, Rational(1));
    // t -> t + 1
    MultiPoly t_next = MultiPoly::variable(dim, 0) + one;
    enc.map.coordinates.push_back(RatFunc(t_next, one));
    // window shift: t_j -> t_{j+1}
    for (long j = 1; j <= d; ++j)
        enc.map.coordinates.push_back(RatFunc(MultiPoly::variable(dim, static_cast<int>(j) + 1), one));
    // new last term: sum_i r_i(t + d) * t_{d+1-i}; the state window starts
    // at index t, so the recurrence index is t + d
    MultiPoly num(dim), den(dim);
    den = one;
    for (long i = 0; i <= d; ++i) {
        RatFunc1 shifted = rec.coeffs()[i].shifted(Rational(d));
        den = den * MultiPoly::from_poly1(shifted.den(), dim, 0);
    }
    for (long i = 0; i <= d; ++i) {
        RatFunc1 shifted = rec.coeffs()[i].shifted(Rational(d));
        MultiPoly term = MultiPoly::from_poly1(shifted.num(), dim, 0);
        for (long k = 0; k <= d; ++k)
            if (k != i) {
                RatFunc1 other = rec.coeffs()[k].shifted(Rational(d));
                term = term * MultiPoly::from_poly1(other.den(), dim, 0);
            }
        term = term * MultiPoly::variable(dim, static_cast<int>(d + 1 - i));
        num = num + term;
    }
    enc.map.coordinates.push_back(RatFunc(std::move(num), std::move(den)));

    enc.observable = RatFunc::variable(dim, 1);
    enc.start.push_back(Rational(rec.shift()));
    for (const Rational& a : rec.initial()) enc.start.push_back(a);
    return enc;
}

AnnihilatorResult min_cfinite_annihilator(const std::vector<Rational>& terms) {
    long len = static_cast<long>(terms.size());
    if (len < 4) throw Error(ErrorCode::TooShort, "need at least 4 terms");
    bool all_zero = std::all_of(terms.begin(), terms.end(), [](const Rational& t) { return t == 0; });
    if (all_zero) return CFiniteRecurrence{{}, {}};
    long bound = len / 2 - 1;
    for (long r = 1; r <= bound; ++r) {
        RatMat m(len - r, r);
        RatVec b(len - r);
        for (long n = 0; n + r < len; ++n) {
            for (long i = 1; i <= r; ++i) m(n, i - 1) = terms[n + r - i];
            b[n] = terms[n + r];
        }
        auto c = solve_rat(m, b);
        if (!c) continue;
        CFiniteRecurrence rec{*c, {terms.begin(), terms.begin() + r}};
        if (expand(rec, len - 1) == terms) return rec;
    }
    return NoAnnihilator{bound};
}

namespace {

bool annihilates(const CFiniteRecurrence& rec, const std::vector<Rational>& terms) {
    long d = rec.order();
    for (long n = 0; n + d < static_cast<long>(terms.size()); ++n) {
        Rational acc;
        for (long i = 1; i <= d; ++i) acc += rec.coeffs[i - 1] * terms[n + d - i];
        if (acc != terms[n + d]) return false;
    }
    return true;
}

Poly1 characteristic(const CFiniteRecurrence& rec) {
    std::vector<Rational> c(rec.order() + 1);
    c[rec.order()] = 1;
    for (long i = 1; i <= rec.order(); ++i) c[rec.order() - i] = -rec.coeffs[i - 1];
    return Poly1(std::move(c));
}

}  // namespace

FatouResult fatou_normalize(const CFiniteRecurrence& rec, const std::vector<Rational>& terms) {
    if (!annihilates(rec, terms))
        throw Error(ErrorCode::NotAnnihilating, "recurrence does not annihilate the terms");
    bool integral = std::all_of(terms.begin(), terms.end(),
                                [](const Rational& t) { return t.get_den() == 1; });
    auto minimal = min_cfinite_annihilator(terms);
    const CFiniteRecurrence& min_rec =
        std::holds_alternative<CFiniteRecurrence>(minimal) ? std::get<CFiniteRecurrence>(minimal) : rec;
    std::vector<Integer> prim = primitive_integer_form(characteristic(min_rec));
    if (integral && abs(prim.back()) == 1) {
        IntegerMonicRecurrence monic;
        long d = static_cast<long>(prim.size()) - 1;
        for (long i = 1; i <= d; ++i) monic.coeffs.push_back(-prim[d - i] * prim[d]);
        monic.initial.assign(terms.begin(), terms.begin() + std::min<long>(d, terms.size()));
        return monic;
    }
    return QuasilinearOnly{std::move(prim)};
}

CFiniteRecurrence hadamard(const CFiniteRecurrence& a, const CFiniteRecurrence& b) {
    if (a.order() == 0 || b.order() == 0) return CFiniteRecurrence{{}, {}};
    auto companion = [](const CFiniteRecurrence& r) {
        long d = r.order();
        RatMat m(d, d);
        for (long j = 0; j < d; ++j) m(0, j) = r.coeffs[j];
        for (long i = 1; i < d; ++i) m(i, i - 1) = 1;
        return m;
    };
    RatMat m = kronecker(companion(a), companion(b));
    RatVec chi = charpoly(m);
    long order = static_cast<long>(chi.size()) - 1;
    CFiniteRecurrence out;
    for (long i = 1; i <= order; ++i) out.coeffs.push_back(-chi[order - i]);
    std::vector<Rational> ea = expand(a, order + 30), eb = expand(b, order + 30);
    for (long k = 0; k < order; ++k) out.initial.push_back(ea[k] * eb[k]);
    std::vector<Rational> check = expand(out, order + 30);
    for (long k = 0; k <= order + 30; ++k)
        if (check[k] != ea[k] * eb[k])
            throw Error(ErrorCode::BadInput, "hadamard recurrence failed verification", k);
    return out;
}

std::vector<Rational> section(const std::vector<Rational>& terms, long l, long j) {
    if (l < 1 || j < 0 || j >= l) throw Error(ErrorCode::BadResidue, "need 0 <= j < l");
    std::vector<Rational> out;
    for (long n = j; n < static_cast<long>(terms.size()); n += l) out.push_back(terms[n]);
    return out;
}

std::vector<Rational> interleave(const std::vector<std::vector<Rational>>& lists) {
    if (lists.empty()) return {};
    long r = static_cast<long>(lists.size());
    long total = 0;
    for (const auto& l : lists) total += static_cast<long>(l.size());
    std::vector<Rational> out;
    for (long n = 0; n < total; ++n) {
        long k = n % r, t = n / r;
        if (t >= static_cast<long>(lists[k].size()))
            throw Error(ErrorCode::BadInput, "ragged interleave input", n);
        out.push_back(lists[k][t]);
    }
    return out;
}

}  // namespace orbitlab
