#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "polyrad/polytope.hpp"
#include "polyrad/rational.hpp"

namespace testgen {

using polyrad::Rational;
using polyrad::Vector;

// Independent 2-D oracle: ternary search for the center, then bisection on
// rho with exact rational membership tests of K's vertices in c + rho C.

struct RationalH {
    std::vector<std::array<Rational, 2>> a;
    std::vector<Rational> b;
};

inline bool exact_contained(const std::vector<std::array<Rational, 2>>& verts, const RationalH& c, const Rational& cx,
                            const Rational& cy, const Rational& rho)
{
    for (const auto& v : verts)
        for (std::size_t j = 0; j < c.b.size(); ++j)
            if (c.a[j][0] * (v[0] - cx) + c.a[j][1] * (v[1] - cy) > rho * c.b[j]) return false;
    return true;
}

inline double oracle_circumradius(const std::vector<Vector>& k, const std::vector<Vector>& cn, const std::vector<double>& cb)
{
    auto value_at = [&](double x, double y) {
        double worst = 0.0;
        for (const auto& v : k)
            for (std::size_t j = 0; j < cb.size(); ++j)
                worst = std::max(worst, (cn[j][0] * (v[0] - x) + cn[j][1] * (v[1] - y)) / cb[j]);
        return worst;
    };
    double lox = 1e9, hix = -1e9, loy = 1e9, hiy = -1e9;
    for (const auto& v : k) {
        lox = std::min(lox, v[0]);
        hix = std::max(hix, v[0]);
        loy = std::min(loy, v[1]);
        hiy = std::max(hiy, v[1]);
    }
    const double pad = 8 * (std::max(hix - lox, hiy - loy) + 1);

    // nested ternary search; both levels are convex
    auto ternary = [](double lo, double hi, auto&& f) {
        for (int it = 0; it < 200; ++it) {
            const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
            if (f(a) <= f(b))
                hi = b;
            else
                lo = a;
        }
        return (lo + hi) / 2;
    };
    auto best_y = [&](double x) { return ternary(loy - pad, hiy + pad, [&](double y) { return value_at(x, y); }); };
    const double cx = ternary(lox - pad, hix + pad, [&](double x) { return value_at(x, best_y(x)); });
    const double cy = best_y(cx);

    RationalH ch;
    for (std::size_t j = 0; j < cb.size(); ++j) {
        ch.a.push_back({polyrad::exact_from_double(cn[j][0]), polyrad::exact_from_double(cn[j][1])});
        ch.b.push_back(polyrad::exact_from_double(cb[j]));
    }
    std::vector<std::array<Rational, 2>> verts;
    for (const auto& v : k) verts.push_back({polyrad::exact_from_double(v[0]), polyrad::exact_from_double(v[1])});
    const Rational ex = polyrad::exact_from_double(cx), ey = polyrad::exact_from_double(cy);
    Rational lo = 0, hi = 1;
    while (!exact_contained(verts, ch, ex, ey, hi)) hi *= 2;
    for (int it = 0; it < 45; ++it) {
        Rational mid = (lo + hi) / 2;
        if (exact_contained(verts, ch, ex, ey, mid))
            hi = mid;
        else
            lo = mid;
    }
    return polyrad::to_double(hi);
}

}  // namespace testgen
