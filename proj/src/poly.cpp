#include "orbitlab/poly.hpp"

#include <algorithm>
#include <sstream>

namespace orbitlab {

void Poly1::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly1 Poly1::monomial(long deg, const Rational& coeff) {
    std::vector<Rational> c(deg + 1);
    c[deg] = coeff;
    return Poly1(std::move(c));
}

Poly1 Poly1::operator+(const Poly1& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Poly1(std::move(c));
}

Poly1 Poly1::operator-(const Poly1& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return Poly1(std::move(c));
}

Poly1 Poly1::operator*(const Poly1& o) const {
    if (is_zero() || o.is_zero()) return Poly1();
    std::vector<Rational> c(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return Poly1(std::move(c));
}

Poly1 Poly1::operator*(const Rational& r) const {
    std::vector<Rational> c(c_);
    for (auto& x : c) x *= r;
    return Poly1(std::move(c));
}

Rational Poly1::eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly1 Poly1::derivative() const {
    if (c_.size() <= 1) return Poly1();
    std::vector<Rational> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly1(std::move(c));
}

Poly1 Poly1::shifted(const Rational& shift) const {
    // Horner in (x + shift)
    Poly1 acc;
    Poly1 lin({shift, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * lin + Poly1::constant(*it);
    return acc;
}

Poly1 Poly1::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

std::string Poly1::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        Rational c = coeff(k);
        if (c == 0) continue;
        if (!first) out << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) out << "-";
        Rational a = abs(c);
        if (k == 0 || a != 1) out << rational_to_string(a);
        if (k > 0) {
            if (a != 1) out << "*";
            out << var;
            if (k > 1) out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

std::pair<Poly1, Poly1> divrem(const Poly1& a, const Poly1& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroInput, "polynomial division by zero");
    Poly1 r = a;
    std::vector<Rational> q(std::max<long>(a.degree() - b.degree() + 1, 0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long k = r.degree() - b.degree();
        Rational f = r.leading() / b.leading();
        q[k] = f;
        r = r - Poly1::monomial(k, f) * b;
    }
    return {Poly1(std::move(q)), r};
}

Poly1 poly_gcd(Poly1 a, Poly1 b) {
    while (!b.is_zero()) {
        Poly1 r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<Integer> primitive_integer_form(const Poly1& p) {
    if (p.is_zero()) return {};
    Integer lcm_den(1);
    for (const Rational& c : p.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> z(p.coeffs().size());
    for (size_t i = 0; i < z.size(); ++i) {
        Rational scaled = p.coeffs()[i] * Rational(lcm_den);
        z[i] = scaled.get_num();
    }
    Integer g = 0;
    for (const Integer& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (z.back() < 0) g = -g;
    for (Integer& c : z) c /= g;
    return z;
}

std::vector<Integer> integer_roots(const Poly1& p) {
    if (p.is_zero()) throw Error(ErrorCode::ZeroInput, "integer_roots of the zero polynomial");
    std::vector<Integer> z = primitive_integer_form(p);
    std::vector<Integer> roots;
    size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low + 1 == z.size()) {
        std::sort(roots.begin(), roots.end());
        return roots;  // constant after stripping x^k
    }
    Integer c0 = abs(z[low]);
    auto check = [&](const Integer& r) {
        Integer acc = 0;
        for (size_t i = z.size(); i-- > low;) acc = acc * r + z[i];
        if (acc == 0) roots.push_back(r);
    };
    // enumerate divisors from the factorization
    std::vector<Integer> divisors{1};
    for (const auto& [prime, mult] : factor_integer(c0)) {
        size_t base = divisors.size();
        Integer pe(1);
        for (long e = 1; e <= mult; ++e) {
            pe *= prime;
            for (size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
        }
    }
    for (const Integer& d : divisors) {
        check(d);
        check(-d);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

RatFunc1::RatFunc1(Poly1 num, Poly1 den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::ZeroInput, "zero denominator");
    if (num_.is_zero()) {
        den_ = Poly1::constant(1);
        return;
    }
    Poly1 g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divrem(num_, g).first;
        den_ = divrem(den_, g).first;
    }
    Rational lead = den_.leading();
    num_ = num_ * (Rational(1) / lead);
    den_ = den_ * (Rational(1) / lead);
}

std::optional<Rational> RatFunc1::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) return std::nullopt;
    return num_.eval(x) / d;
}

std::string RatFunc1::to_string(const std::string& var) const {
    if (den_ == Poly1::constant(1)) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

bool GradedLex::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
}

MultiPoly MultiPoly::constant(int nvars, const Rational& r) {
    MultiPoly p(nvars);
    p.add_term(std::vector<int>(nvars, 0), r);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars)
        throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
    MultiPoly p(nvars);
    std::vector<int> e(nvars, 0);
    e[index] = 1;
    p.add_term(e, Rational(1));
    return p;
}

long MultiPoly::total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

void MultiPoly::add_term(const std::vector<int>& exps, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly p = *this;
    for (const auto& [e, c] : o.terms_) p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly p = *this;
    for (const auto& [e, c] : o.terms_) p.add_term(e, -c);
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly p(nvars_);
    std::vector<int> e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
            p.add_term(e, ca * cb);
        }
    return p;
}

MultiPoly MultiPoly::operator*(const Rational& r) const {
    MultiPoly p(nvars_);
    if (r == 0) return p;
    for (const auto& [e, c] : terms_) p.add_term(e, c * r);
    return p;
}

MultiPoly MultiPoly::pow(long e) const {
    if (e < 0) throw Error(ErrorCode::BadInput, "MultiPoly::pow needs e >= 0");
    MultiPoly acc = MultiPoly::constant(nvars_, Rational(1));
    for (long k = 0; k < e; ++k) acc = acc * *this;
    return acc;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
    Rational acc;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) term *= rational_pow(point[v], e[v]);
        acc += term;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending graded-lex for display
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) out << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) out << "-";
        Rational a = abs(c);
        bool has_var = false;
        for (int v = 0; v < nvars_; ++v) has_var = has_var || e[v] > 0;
        if (!has_var || a != 1) out << rational_to_string(a);
        bool printed = !has_var || a != 1;
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (printed) out << "*";
            out << names[v];
            if (e[v] > 1) out << "^" << e[v];
            printed = true;
        }
        first = false;
    }
    return out.str();
}

MultiPoly MultiPoly::from_poly1(const Poly1& p, int nvars, int var) {
    MultiPoly m(nvars);
    std::vector<int> e(nvars, 0);
    for (long k = 0; k <= p.degree(); ++k) {
        e[var] = static_cast<int>(k);
        m.add_term(e, p.coeff(k));
    }
    return m;
}

Poly1 MultiPoly::to_poly1() const {
    std::vector<Rational> c;
    for (const auto& [e, coeff] : terms_) {
        long deg = 0;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0 && v != 0)
                throw Error(ErrorCode::BadInput, "not univariate in the first variable");
            deg += e[v];
        }
        if (static_cast<long>(c.size()) <= deg) c.resize(deg + 1);
        c[deg] = coeff;
    }
    return Poly1(std::move(c));
}

RatFunc::RatFunc(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error(ErrorCode::ZeroInput, "zero denominator");
}

RatFunc RatFunc::pow(long e) const {
    if (e >= 0) return RatFunc(num.pow(e), den.pow(e));
    if (num.is_zero()) throw Error(ErrorCode::ZeroInput, "0 raised to a negative power");
    return RatFunc(den.pow(-e), num.pow(-e));
}

RatFunc::Eval RatFunc::eval(const std::vector<Rational>& point) const {
    Rational d = den.eval(point);
    if (d != 0) return {Kind::Finite, num.eval(point) / d};
    Rational n = num.eval(point);
    if (n != 0) return {Kind::Infinite, Rational(0)};
    return {Kind::Indeterminate, Rational(0)};
}

}  // namespace orbitlab
