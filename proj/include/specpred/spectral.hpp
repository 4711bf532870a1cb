#pragma once

// Closed-form frequency-domain quantities: the weight h, the predictor
// transfer functions V(z) = 1 - exp(-gamma/(z + alpha)) and
// Khat(z) = z V(z) on the unit circle, and the D+/D region split at
// Omega(alpha) = arccos(-alpha).

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "specpred/errors.hpp"
#include "specpred/params.hpp"
#include "specpred/real.hpp"

namespace specpred {

/// Largest |Re w| fed to exp() by the complex evaluators before they
/// refuse; magnitude-only consumers go through log_abs_khat instead.
inline constexpr double kExpArgLimit = 700.0;

/// Exponent c / |e^{i omega} + 1|^q of the weight h.  +infinity at
/// omega = +-pi.
inline double weight_exponent(double omega, const WeightParams& w) {
    const double d = 2.0 + 2.0 * std::cos(omega); // |e^{iw} + 1|^2
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return w.c / std::pow(d, 0.5 * w.q);
}

/// h(omega, c) = exp(c / |e^{i omega} + 1|^q).  Returns +infinity at
/// omega = +-pi; h appears only in products/denominators where that
/// limit has well-defined semantics.
inline double weight_h(double omega, const WeightParams& w) {
    w.validate();
    return std::exp(weight_exponent(omega, w));
}

/// w = -gamma / (e^{i omega} + alpha), evaluated through the identity
/// Re w = -gamma (cos omega + alpha) / |e^{i omega} + alpha|^2 so the
/// real part never suffers complex-division cancellation.
template <class Real>
cplx<Real> exp_arg(Real omega, Real gamma, Real alpha) {
    using m = real_math<Real>;
    const Real c = m::cos(omega), s = m::sin(omega);
    const Real den = (c + alpha) * (c + alpha) + s * s; // |e^{iw}+alpha|^2
    return {-gamma * (c + alpha) / den, gamma * s / den};
}

/// V(e^{i omega}) = 1 - exp(w).  Throws overflow_error once |Re w|
/// exceeds the safe exp() range.
inline std::complex<double> transfer_V(double omega, double gamma, double alpha) {
    if (!(std::fabs(alpha) < 1.0)) throw validation_error("transfer_V: |alpha| must be < 1");
    const cplx<double> w = exp_arg(omega, gamma, alpha);
    if (std::fabs(w.re) > kExpArgLimit)
        throw overflow_error("transfer_V: |Re w| = " + std::to_string(std::fabs(w.re)) +
                             " beyond safe exp range (gamma too large near omega = pi)");
    const double mag = std::exp(w.re);
    return {1.0 - mag * std::cos(w.im), -mag * std::sin(w.im)};
}

/// Khat(e^{i omega}) = e^{i omega} V(e^{i omega}).
inline std::complex<double> transfer_Khat(double omega, double gamma, double alpha) {
    const std::complex<double> v = transfer_V(omega, gamma, alpha);
    return std::polar(1.0, omega) * v;
}

/// log |1 - e^w|, stable for any Re w: factored as
/// Re w + log|1 - e^{-w}| once the exponential dominates.
inline double log_abs_one_minus_exp(const cplx<double>& w) {
    if (w.re > 0.0) {
        const double m = std::exp(-w.re);
        const double re = 1.0 - m * std::cos(-w.im);
        const double im = -m * std::sin(-w.im);
        return w.re + 0.5 * std::log(re * re + im * im);
    }
    const double m = std::exp(w.re);
    const double re = 1.0 - m * std::cos(w.im);
    const double im = -m * std::sin(w.im);
    return 0.5 * std::log(re * re + im * im);
}

/// log |Khat(e^{i omega})| = log |V(e^{i omega})| without forming exp of
/// large arguments; defined for every gamma > 0.
inline double log_abs_Khat(double omega, double gamma, double alpha) {
    if (!(std::fabs(alpha) < 1.0)) throw validation_error("log_abs_Khat: |alpha| must be < 1");
    return log_abs_one_minus_exp(exp_arg<double>(omega, gamma, alpha));
}

/// Uniform grid omega_j = -pi + 2 pi j / N, j = 0..N-1, covering [-pi, pi).
struct FrequencyGrid {
    int size = 8192;

    explicit FrequencyGrid(int n) : size(n) {
        if (n < 8) throw validation_error("FrequencyGrid: need at least 8 nodes");
    }

    double node(int j) const { return -M_PI + 2.0 * M_PI * j / size; }
};

/// D+(alpha) = (-Omega, Omega) with Omega = arccos(-alpha); the
/// complement D(alpha) of [-pi, pi] has measure 2 arccos(alpha).
struct RegionSplit {
    double omega_boundary;  ///< Omega(alpha)
    double d_plus_lo;       ///< -Omega
    double d_plus_hi;       ///< +Omega
    double d_minus_measure; ///< 2 arccos(alpha) = 2 pi - 2 Omega
};

inline RegionSplit region_split(double alpha) {
    if (!(std::fabs(alpha) < 1.0)) throw validation_error("region_split: |alpha| must be < 1");
    const double omega = std::acos(-alpha);
    return {omega, -omega, omega, 2.0 * std::acos(alpha)};
}

} // namespace specpred
