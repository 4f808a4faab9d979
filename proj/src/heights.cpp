#include "orbitlab/heights.hpp"

#include <algorithm>
#include <cmath>

namespace orbitlab {

std::vector<Integer> height_sequence(const std::vector<Rational>& values) {
    std::vector<Integer> out;
    out.reserve(values.size());
    for (size_t n = 0; n < values.size(); ++n) {
        if (values[n] == 0)
            throw Error(ErrorCode::ZeroValue, "height of 0 is undefined", static_cast<long>(n));
        out.push_back(weil_height(values[n]).exact);
    }
    return out;
}

const char* growth_class_name(GrowthClass g) {
    switch (g) {
        case GrowthClass::Bounded: return "bounded";
        case GrowthClass::Linear: return "linear";
        case GrowthClass::NLogN: return "nlogn";
        case GrowthClass::Subquadratic: return "subquadratic";
        case GrowthClass::QuadraticOrMore: return "quadratic_or_more";
    }
    return "?";
}

namespace {

struct Extremes {
    double min_v, max_v;
};

Extremes extremes(const std::vector<double>& v, size_t from) {
    Extremes e{v[from], v[from]};
    for (size_t i = from; i < v.size(); ++i) {
        e.min_v = std::min(e.min_v, v[i]);
        e.max_v = std::max(e.max_v, v[i]);
    }
    return e;
}

bool stable(const Extremes& e) {
    double scale = std::max(std::abs(e.max_v), std::abs(e.min_v));
    return e.max_v - e.min_v <= std::max(0.10 * scale, 1e-9);
}

}  // namespace

GrowthReport growth_classify(const std::vector<Integer>& heights, long horizon) {
    long len = static_cast<long>(heights.size());
    if (len < 32) throw Error(ErrorCode::TooShort, "need at least 32 heights");

    // periodic geometric classes oscillate pointwise, so the stabilization
    // ratios are computed on the monotone envelope of log H
    std::vector<double> envelope(len);
    double running = 0.0;
    for (long n = 0; n < len; ++n) {
        running = std::max(running, log_of_integer(heights[n]));
        envelope[n] = running;
    }
    size_t quarter = static_cast<size_t>(3 * len / 4);
    std::vector<double> r1(len), r2(len), r3(len);
    for (long n = 0; n < len; ++n) {
        double nn = std::max<double>(n, 2);
        r1[n] = envelope[n] / nn;
        r2[n] = envelope[n] / (nn * std::log(nn));
        r3[n] = envelope[n] / (nn * nn);
    }
    Extremes e0 = extremes(envelope, quarter);
    Extremes e1 = extremes(r1, quarter);
    Extremes e2 = extremes(r2, quarter);
    Extremes e3 = extremes(r3, quarter);

    GrowthReport rep;
    rep.horizon = horizon;
    rep.ratio_linear_min = e1.min_v;
    rep.ratio_linear_max = e1.max_v;
    rep.ratio_nlogn_min = e2.min_v;
    rep.ratio_nlogn_max = e2.max_v;
    rep.ratio_quadratic_min = e3.min_v;
    rep.ratio_quadratic_max = e3.max_v;

    if (stable(e0)) {
        rep.label = GrowthClass::Bounded;
    } else if (stable(e1)) {
        rep.label = GrowthClass::Linear;
    } else if (stable(e2)) {
        rep.label = GrowthClass::NLogN;
    } else if (stable(e3)) {
        rep.label = GrowthClass::QuadraticOrMore;
    } else {
        // compare mean quadratic ratio over the last quarter vs the one before
        auto mean = [&](size_t from, size_t to) {
            double acc = 0;
            for (size_t i = from; i < to; ++i) acc += r3[i];
            return acc / std::max<size_t>(to - from, 1);
        };
        size_t half = static_cast<size_t>(len / 2);
        rep.label = mean(quarter, len) > mean(half, quarter) ? GrowthClass::QuadraticOrMore
                                                             : GrowthClass::Subquadratic;
    }
    return rep;
}

ValuationGrowthReport valuation_growth(const std::vector<Rational>& values, const Integer& p) {
    long len = static_cast<long>(values.size());
    std::vector<Integer> nu(len);
    for (long n = 0; n < len; ++n) {
        if (values[n] == 0)
            throw Error(ErrorCode::ZeroValue, "valuation of 0 is undefined", n);
        nu[n] = Integer(valuation(p, values[n]));
        nu[n] = abs(nu[n]);
    }
    ValuationGrowthReport rep;
    rep.tail_slope = 0;
    for (long n = len / 2; n < len; ++n) {
        Rational slope(nu[n], Integer(std::max<long>(n, 1)));
        slope.canonicalize();
        rep.tail_slope = std::max(rep.tail_slope, slope);
    }

    // least squares through the record points, in exact rationals
    std::vector<long> records;
    Integer best(-1);
    for (long n = 0; n < len; ++n)
        if (nu[n] > best) {
            best = nu[n];
            records.push_back(n);
        }
    long k = static_cast<long>(records.size());
    if (k == 1) {
        rep.bound_c = 0;
        rep.bound_b = Rational(nu[records[0]]);
    } else {
        Rational sx, sy, sxy, sxx;
        for (long i : records) {
            Rational x(i), y(nu[i]);
            sx += x;
            sy += y;
            sxy += x * y;
            sxx += x * x;
        }
        Rational kq(k);
        Rational denom = kq * sxx - sx * sx;
        rep.bound_c = (kq * sxy - sx * sy) / denom;
        rep.bound_b = (sy - rep.bound_c * sx) / kq;
    }
    rep.linear_bound_holds = true;
    for (long n = 0; n < len; ++n) {
        if (Rational(nu[n]) > rep.bound_c * Rational(n) + rep.bound_b) {
            rep.linear_bound_holds = false;
            rep.first_violation = n;
            break;
        }
    }
    return rep;
}

}  // namespace orbitlab
