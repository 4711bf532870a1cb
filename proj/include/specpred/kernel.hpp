#pragma once

// Synthesis of the truncated causal predictor kernel khat = Z^{-1} Khat
// by sampling Khat on the unit circle and inverse-transforming, plus the
// scalar diagnostics kappa, psi and the I1 bound factor.
//
// Precision tiers: the taps of this family grow to ~kappa in l1 norm
// before the geometric decay at rate ~alpha wins, so once
// kappa * eps(double) is no longer negligible against the tap scale the
// synthesis (and any later convolution) must run in binary128.
// build_kernel_auto picks the tier from log kappa; past the binary128
// budget only log-domain diagnostics remain meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "specpred/errors.hpp"
#include "specpred/fft.hpp"
#include "specpred/params.hpp"
#include "specpred/quadrature.hpp"
#include "specpred/real.hpp"
#include "specpred/spectral.hpp"

namespace specpred {

template <class Real>
struct PredictorKernel {
    std::vector<Real> coeffs; ///< khat(0..T)
    PredictorParams params;
    double alpha = 0.0;
    int fft_size = 0;
    int truncation = 0;            ///< T
    double causality_defect = 0.0; ///< max |raw coefficient| at negative lags
    double imag_residue = 0.0;     ///< max |Im| of the inverse transform
    double tail_bound = 0.0;       ///< estimate of sum_{t > T} |khat(t)|
    double l1_norm = 0.0;          ///< sum_{t = 0..T} |khat(t)|

    /// sum_{M < s <= T} |khat(s)| plus the beyond-T tail estimate.
    double tail_l1(int memory) const {
        double s = 0.0;
        for (int t = truncation; t > memory; --t) s += double(real_math<Real>::fabs(coeffs[t]));
        return s + tail_bound;
    }
};

using Kernel = PredictorKernel<double>;
using KernelQ = PredictorKernel<float128>;

namespace detail {

/// Upper proxy for log kappa: |Re w| is maximal at omega = pi where it
/// equals gamma / (1 - alpha), and |Khat| <= e^{|Re w|} + 1.
inline double log_kappa_bound(double gamma, double alpha) { return gamma / (1.0 - alpha); }

template <class Real>
double tap_accuracy_floor(double log_kappa) {
    return std::exp(log_kappa) * double(real_math<Real>::eps());
}

} // namespace detail

template <class Real>
PredictorKernel<Real> build_kernel(const PredictorParams& p, int fft_size, int truncation = 0) {
    using m = real_math<Real>;
    const double a = alpha(p);

    if (!detail::is_pow2(std::size_t(fft_size)) || fft_size < 16)
        throw validation_error("build_kernel: fft_size must be a power of two >= 16");
    if (truncation < 0 || 2 * truncation > fft_size)
        throw validation_error("build_kernel: need fft_size >= 2 * truncation");

    const double logk = detail::log_kappa_bound(p.gamma, a);
    const double exp_limit = std::is_same_v<Real, double> ? kExpArgLimit : 11300.0;
    if (logk > exp_limit)
        throw overflow_error("build_kernel: transfer function overflows this precision near omega = pi");
    // Early reject when the tap noise floor provably swamps the khat(0)
    // invariant; the measured post-check below is the authoritative gate.
    if (detail::tap_accuracy_floor<Real>(logk) > 1e-4 * std::max(1.0, p.gamma))
        throw overflow_error(
            "build_kernel: gamma too large for this precision (log kappa = " +
            std::to_string(logk) + "); use log-domain diagnostics instead");

    const std::size_t n = std::size_t(fft_size);
    std::vector<cplx<Real>> buf(n);
    const Real ga = Real(p.gamma), al = Real(a);
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const Real omega = 2 * m::pi() * Real(j) / Real(n);
        const cplx<Real> w = exp_arg(omega, ga, al);
        const Real mag = m::exp(w.re);
        const cplx<Real> v{1 - mag * m::cos(w.im), -mag * m::sin(w.im)};
        const cplx<Real> rot{m::cos(omega), m::sin(omega)};
        buf[j] = rot * v;
        if (j > 0 && j < n / 2) buf[n - j] = {buf[j].re, -buf[j].im};
    }
    detail::fft_radix2(buf, +1);

    double max_abs = 0.0, defect = 0.0, imag_res = 0.0;
    std::vector<Real> raw(n / 2);
    for (std::size_t t = 0; t < n; ++t) {
        const double re = double(buf[t].re) / fft_size;
        imag_res = std::max(imag_res, std::fabs(double(buf[t].im)) / fft_size);
        if (t < n / 2) {
            raw[t] = buf[t].re / Real(fft_size);
            max_abs = std::max(max_abs, std::fabs(re));
        } else {
            defect = std::max(defect, std::fabs(re));
        }
    }

    if (imag_res > 1e-12 * std::max(max_abs, 1e-300))
        throw noncausal_error("build_kernel: inverse transform not real to tolerance");
    if (defect > 1e-9 * std::max(max_abs, 1e-300))
        throw noncausal_error("build_kernel: causality defect " + std::to_string(defect) +
                              " above 1e-9 * max|khat|; increase fft_size");

    const double k0 = double(raw[0]);
    if (std::fabs(k0 - p.gamma) > 1e-6 * std::max(1.0, p.gamma))
        throw overflow_error("build_kernel: khat(0) = " + std::to_string(k0) +
                             " deviates from gamma; dynamic range exceeded at this precision");

    // Cumulative tails over the trusted positive-lag half.
    std::vector<double> tail(raw.size() + 1, 0.0);
    for (std::size_t t = raw.size(); t-- > 0;)
        tail[t] = tail[t + 1] + std::fabs(double(raw[t]));

    int T = truncation;
    if (T == 0) {
        // Default rule: smallest lag whose remaining tail drops below
        // 1e-12 of the total l1 mass, capped at fft_size / 4.
        const double target = 1e-12 * tail[0];
        T = fft_size / 4;
        for (std::size_t t0 = 0; t0 + 1 < tail.size(); ++t0)
            if (tail[t0 + 1] <= target) {
                T = int(t0);
                break;
            }
        T = std::min(T, fft_size / 4);
        T = std::max(T, 1);
    }

    // Geometric extrapolation of the beyond-grid remainder, ratio from
    // the last decade of computed lags.
    const std::size_t last = raw.size() - 1;
    double ratio = a > 0.0 ? a : 0.5;
    {
        const std::size_t span = std::min<std::size_t>(10, last);
        const double hi = std::fabs(double(raw[last])), lo = std::fabs(double(raw[last - span]));
        if (lo > 0.0 && hi > 0.0 && span > 0) {
            const double r = std::pow(hi / lo, 1.0 / double(span));
            if (r > 0.0 && r < 0.9999) ratio = r;
        }
    }
    const double beyond = std::fabs(double(raw[last])) * ratio / (1.0 - std::min(ratio, 0.9999));

    PredictorKernel<Real> k;
    k.params = p;
    k.alpha = a;
    k.fft_size = fft_size;
    k.truncation = T;
    k.causality_defect = defect;
    k.imag_residue = imag_res;
    k.coeffs.assign(raw.begin(), raw.begin() + T + 1);
    k.tail_bound = tail[std::size_t(T) + 1] + beyond;
    double l1 = 0.0;
    for (const Real& c : k.coeffs) l1 += double(m::fabs(c));
    k.l1_norm = l1;
    return k;
}

using AnyKernel = std::variant<Kernel, KernelQ>;

inline bool needs_float128(const PredictorParams& p) {
    const double logk = detail::log_kappa_bound(p.gamma, alpha(p));
    return detail::tap_accuracy_floor<double>(logk) > 1e-10 * std::max(1.0, p.gamma);
}

/// Synthesize at the cheapest precision that keeps the taps accurate.
inline AnyKernel build_kernel_auto(const PredictorParams& p, int fft_size, int truncation = 0) {
    if (!needs_float128(p)) return build_kernel<double>(p, fft_size, truncation);
    return build_kernel<float128>(p, fft_size, truncation);
}

inline int kernel_truncation(const AnyKernel& k) {
    return std::visit([](const auto& kk) { return kk.truncation; }, k);
}
inline double kernel_alpha(const AnyKernel& k) {
    return std::visit([](const auto& kk) { return kk.alpha; }, k);
}
inline double kernel_tail_l1(const AnyKernel& k, int memory) {
    return std::visit([&](const auto& kk) { return kk.tail_l1(memory); }, k);
}
inline double kernel_l1(const AnyKernel& k) {
    return std::visit([](const auto& kk) { return kk.l1_norm; }, k);
}
inline double kernel_coeff(const AnyKernel& k, int t) {
    return std::visit([&](const auto& kk) { return double(kk.coeffs[std::size_t(t)]); }, k);
}
inline double kernel_causality_defect(const AnyKernel& k) {
    return std::visit([](const auto& kk) { return kk.causality_defect; }, k);
}
inline double kernel_tail_bound(const AnyKernel& k) {
    return std::visit([](const auto& kk) { return kk.tail_bound; }, k);
}

/// Smallest memory M <= T whose tap tail (incl. the beyond-T estimate)
/// is at or below abs_target; falls back to T.
template <class Real>
int choose_memory(const PredictorKernel<Real>& k, double abs_target) {
    double s = k.tail_bound;
    int best = k.truncation;
    for (int t = k.truncation; t >= 1; --t) {
        s += double(real_math<Real>::fabs(k.coeffs[std::size_t(t)]));
        if (s > abs_target) return best;
        best = t - 1;
    }
    return best;
}

inline int choose_memory(const AnyKernel& k, double abs_target) {
    return std::visit([&](const auto& kk) { return choose_memory(kk, abs_target); }, k);
}

// ---------------------------------------------------------------------------
// Scalar diagnostics
// ---------------------------------------------------------------------------

/// log sup |Khat(e^{i omega})|: grid scan refined by golden-section
/// search around the argmax.  Safe for any gamma.
inline double log_kappa(const PredictorParams& p, const FrequencyGrid& grid) {
    const double a = alpha(p);
    double best = -std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (int j = 0; j < grid.size; ++j) {
        const double v = log_abs_Khat(grid.node(j), p.gamma, a);
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    const double step = 2.0 * M_PI / grid.size;
    double lo = grid.node(best_j) - step, hi = grid.node(best_j) + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = log_abs_Khat(x1, p.gamma, a), f2 = log_abs_Khat(x2, p.gamma, a);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = log_abs_Khat(x2, p.gamma, a);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = log_abs_Khat(x1, p.gamma, a);
        }
    }
    return std::max(best, std::max(f1, f2));
}

/// kappa = sup |Khat| on the unit circle; +inf if it exceeds the double
/// range (callers that sweep far keep to log_kappa).
inline double kappa(const PredictorParams& p, const FrequencyGrid& grid) {
    return std::exp(log_kappa(p, grid));
}

/// psi(gamma) = integral over D+(alpha) of |Khat (1 - V)|^rho.  On the
/// unit circle |K| = 1 and |1 - V| = e^{Re w} <= 1 inside D+, so the
/// integrand is exp(rho Re w); even in omega.
inline double psi(const PredictorParams& p, int rho, const FrequencyGrid& grid) {
    if (rho != 1 && rho != 2) throw validation_error("psi: rho must be 1 or 2");
    const double a = alpha(p);
    const RegionSplit rs = region_split(a);
    const auto f = [&](double w) {
        return std::exp(rho * exp_arg<double>(w, p.gamma, a).re);
    };
    const std::int64_t n0 = std::max<std::int64_t>(64, grid.size / 64);
    return 2.0 * refine_trapezoid(f, 0.0, rs.omega_boundary, 1e-7, n0);
}

/// (2 arccos(alpha))^{1/rho}: the measure factor bounding the D(alpha)
/// part of the error decomposition.
inline double i1_bound_factor(double alpha_, int rho) {
    if (!(std::fabs(alpha_) < 1.0)) throw validation_error("i1_bound_factor: |alpha| < 1");
    if (rho < 1) throw validation_error("i1_bound_factor: rho >= 1");
    return std::pow(2.0 * std::acos(alpha_), 1.0 / rho);
}

/// integral over D(alpha) of |V - 1|^rho h(omega, c)^{-rho}: the
/// quantity the region bound 2 arccos(alpha) dominates for gamma past
/// the (non-constructive) threshold gamma_0.  Evaluated entirely in the
/// log domain; the integrand vanishes at omega = pi.
inline double d_region_integral(const PredictorParams& p, const WeightParams& w, int rho,
                                const FrequencyGrid& grid) {
    w.validate();
    if (rho < 1) throw validation_error("d_region_integral: rho >= 1");
    const double a = alpha(p);
    const RegionSplit rs = region_split(a);
    const auto f = [&](double om) {
        const double lo = std::fabs(exp_arg<double>(om, p.gamma, a).re) - weight_exponent(om, w);
        return std::isinf(lo) ? 0.0 : std::exp(rho * lo);
    };
    const std::int64_t n0 = std::max<std::int64_t>(64, grid.size / 64);
    return 2.0 * refine_trapezoid(f, rs.omega_boundary, M_PI, 1e-7, n0);
}

} // namespace specpred
