#include "orbitlab/dynamics.hpp"

#include <algorithm>

namespace orbitlab {

namespace {

long digits_of(const Rational& x) {
    return static_cast<long>(std::max(mpz_sizeinbase(x.get_num().get_mpz_t(), 10),
                                      mpz_sizeinbase(x.get_den().get_mpz_t(), 10)));
}

bool over_budget(const Point& p, long budget) {
    if (budget <= 0) return false;
    for (const Rational& x : p)
        if (digits_of(x) > budget) return true;
    return false;
}

}  // namespace

MapEval eval_map(const RationalSelfMap& map, const Point& x) {
    if (static_cast<long>(x.size()) != map.dimension)
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the map");
    Point out;
    out.reserve(map.dimension);
    for (long i = 0; i < map.dimension; ++i) {
        RatFunc::Eval e = map.coordinates[i].eval(x);
        if (e.kind != RatFunc::Kind::Finite) return EvalIndeterminate{i};
        out.push_back(std::move(e.value));
    }
    return out;
}

OrbitRecord orbit(const RationalSelfMap& map, const Point& x0, long n, long digit_budget) {
    if (n < 0) throw Error(ErrorCode::BadInput, "orbit length must be >= 0");
    OrbitRecord rec;
    if (over_budget(x0, digit_budget)) {
        rec.halt = {HaltRecord::Kind::BudgetExceeded, 0, -1};
        return rec;
    }
    rec.points.push_back(x0);
    for (long k = 0; k < n; ++k) {
        MapEval e = eval_map(map, rec.points.back());
        if (std::holds_alternative<EvalIndeterminate>(e)) {
            rec.halt = {HaltRecord::Kind::Indeterminate, k + 1,
                        std::get<EvalIndeterminate>(e).coordinate};
            return rec;
        }
        Point next = std::get<Point>(std::move(e));
        if (over_budget(next, digit_budget)) {
            rec.halt = {HaltRecord::Kind::BudgetExceeded, k + 1, -1};
            return rec;
        }
        rec.points.push_back(std::move(next));
    }
    rec.halt = {HaltRecord::Kind::Completed, n, -1};
    return rec;
}

OrbitRecord orbit_sequence(const RationalSelfMap& map, const RatFunc& observable, const Point& x0,
                           long n, long digit_budget) {
    OrbitRecord rec = orbit(map, x0, n, digit_budget);
    std::vector<ExtValue> values;
    for (size_t k = 0; k < rec.points.size(); ++k) {
        RatFunc::Eval e = observable.eval(rec.points[k]);
        if (e.kind == RatFunc::Kind::Indeterminate) {
            rec.points.resize(k);
            rec.halt = {HaltRecord::Kind::Indeterminate, static_cast<long>(k), -1};
            break;
        }
        values.push_back(e.kind == RatFunc::Kind::Finite ? ExtValue::finite(std::move(e.value))
                                                         : ExtValue::inf());
    }
    values.resize(rec.points.size());
    rec.values = std::move(values);
    return rec;
}

RationalSelfMap compose(const RationalSelfMap& a, const RationalSelfMap& b) {
    if (a.dimension != b.dimension)
        throw Error(ErrorCode::DimensionMismatch, "composition dimension mismatch");
    RationalSelfMap out;
    out.dimension = a.dimension;
    RatFunc zero = RatFunc::constant(static_cast<int>(a.dimension), Rational(0));
    RatFunc one = RatFunc::constant(static_cast<int>(a.dimension), Rational(1));
    for (const RatFunc& coord : a.coordinates) {
        RatFunc num = coord.num.eval_generic<RatFunc>(b.coordinates, zero, one);
        RatFunc den = coord.den.eval_generic<RatFunc>(b.coordinates, zero, one);
        out.coordinates.push_back(RatFunc(num.num * den.den, num.den * den.num));
    }
    return out;
}

RationalSelfMap torus_map(const std::vector<Rational>& constants, const IntMat& exponents) {
    long d = static_cast<long>(constants.size());
    if (exponents.rows() != d || exponents.cols() != d)
        throw Error(ErrorCode::DimensionMismatch, "exponent matrix must be d x d");
    for (long i = 0; i < d; ++i)
        if (constants[i] == 0) throw Error(ErrorCode::ZeroConstant, "zero torus constant", i);
    RationalSelfMap map;
    map.dimension = d;
    for (long i = 0; i < d; ++i) {
        std::vector<int> num_exp(d, 0), den_exp(d, 0);
        for (long j = 0; j < d; ++j) {
            long e = exponents(i, j).get_si();
            if (e >= 0)
                num_exp[j] = static_cast<int>(e);
            else
                den_exp[j] = static_cast<int>(-e);
        }
        MultiPoly num(static_cast<int>(d)), den(static_cast<int>(d));
        num.add_term(num_exp, constants[i]);
        den.add_term(den_exp, Rational(1));
        map.coordinates.push_back(RatFunc(std::move(num), std::move(den)));
    }
    return map;
}

std::vector<MultiPoly> vanishing_ideal(std::vector<Point> points, long degree_bound) {
    if (points.empty()) throw Error(ErrorCode::BadInput, "vanishing_ideal needs a point");
    if (degree_bound < 1) throw Error(ErrorCode::BadInput, "degree bound must be >= 1");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    int n = static_cast<int>(points.front().size());
    for (const Point& p : points)
        if (static_cast<int>(p.size()) != n)
            throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");

    // monomials of total degree <= D in descending graded-lex order
    std::vector<std::vector<int>> monomials;
    std::vector<int> e(n, 0);
    auto rec = [&](auto&& self, int var, long remaining) -> void {
        if (var == n) {
            monomials.push_back(e);
            return;
        }
        for (long k = remaining; k >= 0; --k) {
            e[var] = static_cast<int>(k);
            self(self, var + 1, remaining - k);
        }
        e[var] = 0;
    };
    rec(rec, 0, degree_bound);
    std::stable_sort(monomials.begin(), monomials.end(), [](const auto& a, const auto& b) {
        return GradedLex{}(b, a);  // descending
    });

    RatMat m(static_cast<long>(points.size()), static_cast<long>(monomials.size()));
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < monomials.size(); ++j) {
            Rational v(1);
            for (int var = 0; var < n; ++var)
                if (monomials[j][var] > 0) v *= rational_pow(points[i][var], monomials[j][var]);
            m(i, j) = v;
        }

    RatMat basis = rat_kernel(m);
    std::vector<MultiPoly> out;
    for (long r = 0; r < basis.rows(); ++r) {
        MultiPoly p(n);
        for (long c = 0; c < basis.cols(); ++c) p.add_term(monomials[c], basis(r, c));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace orbitlab
