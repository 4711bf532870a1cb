#pragma once

// Finite-memory causal convolution prediction and the per-frequency
// reference path.  xhat(t) = sum_{s=0..M} khat(s) x(t-s) estimates
// x(t+1); the first M outputs are undefined rather than zero-padded, so
// error measurement never sees an implicit truncated history.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "specpred/errors.hpp"
#include "specpred/kernel.hpp"
#include "specpred/series.hpp"
#include "specpred/signals.hpp"

namespace specpred {

struct PredictionRun {
    Series input;
    int memory = 0;   ///< M
    Series predicted; ///< xhat(t) for t in [t0 + M, t1 - 1]

    std::int64_t valid_t0() const { return predicted.t0(); }
    std::int64_t valid_t1() const { return predicted.t1(); }
};

namespace detail {

/// Neumaier-compensated accumulator.  Taps can dwarf the predicted
/// value by many orders of magnitude, so the running sum keeps the
/// rounding residue explicitly.
template <class Real>
struct CompensatedSum {
    Real sum{}, comp{};

    void add(Real v) {
        const Real t = sum + v;
        if (real_math<Real>::fabs(sum) >= real_math<Real>::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

} // namespace detail

template <class Real>
PredictionRun predict(const Series& x, const PredictorKernel<Real>& kernel, int memory) {
    if (memory < 0 || memory > kernel.truncation)
        throw validation_error("predict: need 0 <= M <= kernel truncation");
    if (std::int64_t(x.size()) <= std::int64_t(memory) + 1)
        throw window_error("predict: series window too short for memory " +
                           std::to_string(memory));

    const std::int64_t t_first = x.t0() + memory, t_last = x.t1() - 1;
    std::vector<double> xhat(std::size_t(t_last - t_first + 1));
    for (std::int64_t t = t_first; t <= t_last; ++t) {
        detail::CompensatedSum<Real> acc;
        for (int s = 0; s <= memory; ++s)
            acc.add(kernel.coeffs[std::size_t(s)] * Real(x.at(t - s)));
        xhat[std::size_t(t - t_first)] = double(acc.value());
    }

    PredictionRun run;
    run.input = x;
    run.memory = memory;
    run.predicted = Series(t_first, std::move(xhat));
    return run;
}

inline PredictionRun predict(const Series& x, const AnyKernel& kernel, int memory) {
    return std::visit([&](const auto& k) { return predict(x, k, memory); }, kernel);
}

/// Per-component transfer values for a pure line spectrum: Khat at the
/// line and the exact one-step error gain (Khat - K)(e^{i omega}) =
/// e^{i omega} (V - 1).
struct SpectralGain {
    double omega = 0.0;
    std::complex<double> khat;
    std::complex<double> error_gain;
};

inline std::vector<SpectralGain> predict_spectral(const std::vector<SinusoidComponent>& lines,
                                                  const PredictorParams& p) {
    const double a = alpha(p);
    std::vector<SpectralGain> out;
    out.reserve(lines.size());
    for (const auto& ln : lines) {
        const std::complex<double> v = transfer_V(ln.omega, p.gamma, a);
        const std::complex<double> rot = std::polar(1.0, ln.omega);
        out.push_back({ln.omega, rot * v, rot * (v - 1.0)});
    }
    return out;
}

enum class ErrorNorm { Linf, L2 };

struct ErrorStats {
    double linf = 0.0;
    double l2 = 0.0;  ///< raw: sqrt(sum e^2); grows with window length
    double rms = 0.0; ///< per-sample
    std::int64_t count = 0;
};

/// One-step errors x(t+1) - xhat(t) over [from_t, valid end].
inline ErrorStats error_stats_from(const PredictionRun& run, std::int64_t from_t) {
    const std::int64_t lo = std::max(from_t, run.valid_t0()), hi = run.valid_t1();
    if (lo > hi) throw window_error("error_stats: empty evaluation window");
    ErrorStats st;
    double ss = 0.0;
    for (std::int64_t t = lo; t <= hi; ++t) {
        const double e = run.input.at(t + 1) - run.predicted.at(t);
        st.linf = std::max(st.linf, std::fabs(e));
        ss += e * e;
    }
    st.count = hi - lo + 1;
    st.l2 = std::sqrt(ss);
    st.rms = std::sqrt(ss / double(st.count));
    return st;
}

inline ErrorStats error_stats(const PredictionRun& run) {
    return error_stats_from(run, run.valid_t0());
}

inline double prediction_error(const PredictionRun& run, ErrorNorm norm) {
    const ErrorStats st = error_stats(run);
    return norm == ErrorNorm::Linf ? st.linf : st.l2;
}

} // namespace specpred
