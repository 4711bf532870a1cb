#pragma once

#include <cmath>
#include <cstdint>

#include "specpred/errors.hpp"

namespace specpred {

/// Composite trapezoid on n panels.
template <class F>
double trapezoid(F&& f, double a, double b, std::int64_t n) {
    const double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (std::int64_t i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

/// Trapezoid with dyadic refinement, stopping once two consecutive
/// levels agree to rel_tol.  Integrands here are smooth inside their
/// regions (boundaries are split exactly by the callers), so plain
/// interval halving converges quickly.
template <class F>
double refine_trapezoid(F&& f, double a, double b, double rel_tol = 1e-7,
                        std::int64_t n0 = 64, int max_doublings = 16) {
    if (!(b >= a)) throw validation_error("refine_trapezoid: inverted interval");
    if (b == a) return 0.0;
    std::int64_t n = n0;
    double prev = trapezoid(f, a, b, n);
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        // reuse previous nodes: new sum adds the midpoints only
        const double h = (b - a) / n;
        double mids = 0.0;
        for (std::int64_t i = 1; i < n; i += 2) mids += f(a + i * h);
        const double cur = 0.5 * prev + mids * h;
        if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur) + 1e-300) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace specpred
