#pragma once

// Test-process generators and the class-membership diagnostic.
//
// Generated signals are trigonometric polynomials.  A line at omega with
// amplitude a and phase phi contributes a cos(omega t + phi); as a
// spectral measure this is point mass, so the L1 convention used by the
// noise generator is ||X||_L1 = 2 pi * sum |amplitudes|.  The energy-
// decay generator also exposes the continuous amplitude profile
// |X|(omega) = |G(omega)| / h(omega, c) that its lines sample, for the
// frequency-domain error decomposition.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "specpred/errors.hpp"
#include "specpred/params.hpp"
#include "specpred/series.hpp"
#include "specpred/spectral.hpp"

namespace specpred {

struct SinusoidComponent {
    double omega = 0.0;     ///< radian frequency, |omega| <= pi
    double amplitude = 1.0; ///< >= 0 after generation
    double phase = 0.0;
};

struct SpectrumSpec {
    enum class Kind { Sinusoids, BandlimitedNoise, EnergyDecay, NoiseL1 };

    Kind kind = Kind::Sinusoids;
    std::vector<SinusoidComponent> components; ///< Sinusoids
    double omega1 = 2.0;                       ///< BandlimitedNoise cutoff
    int n_components = 24;                     ///< BandlimitedNoise / NoiseL1 draws
    double c = 2.0, q = 2.0;                   ///< EnergyDecay class
    int n_lines = 256;                         ///< EnergyDecay line count
    double nu = 0.0;                           ///< NoiseL1 intensity
    std::uint64_t seed = 1;

    void validate() const {
        switch (kind) {
        case Kind::Sinusoids:
            for (const auto& s : components)
                if (!(std::fabs(s.omega) <= M_PI))
                    throw validation_error("spectrum: |omega| must be <= pi");
            break;
        case Kind::BandlimitedNoise:
            if (!(omega1 > 0.0 && omega1 < M_PI))
                throw validation_error("spectrum: omega1 must be in (0, pi)");
            if (n_components < 1) throw validation_error("spectrum: n_components >= 1");
            break;
        case Kind::EnergyDecay:
            WeightParams{c, q}.validate();
            if (n_lines < 8) throw validation_error("spectrum: n_lines >= 8");
            break;
        case Kind::NoiseL1:
            if (!(nu >= 0.0)) throw validation_error("spectrum: nu must be >= 0");
            if (n_components < 1) throw validation_error("spectrum: n_components >= 1");
            break;
        }
    }
};

inline const char* to_string(SpectrumSpec::Kind k) {
    switch (k) {
    case SpectrumSpec::Kind::Sinusoids: return "sinusoids";
    case SpectrumSpec::Kind::BandlimitedNoise: return "bandlimited_noise";
    case SpectrumSpec::Kind::EnergyDecay: return "energy_decay";
    case SpectrumSpec::Kind::NoiseL1: return "noise_l1";
    }
    return "?";
}

inline SpectrumSpec::Kind spectrum_kind_from_string(const std::string& s) {
    if (s == "sinusoids") return SpectrumSpec::Kind::Sinusoids;
    if (s == "bandlimited_noise") return SpectrumSpec::Kind::BandlimitedNoise;
    if (s == "energy_decay") return SpectrumSpec::Kind::EnergyDecay;
    if (s == "noise_l1") return SpectrumSpec::Kind::NoiseL1;
    throw validation_error("unknown signal kind '" + s + "'");
}

namespace detail {

/// Seeded generator producing uniforms from raw mt19937_64 output, so
/// streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 eng_;
};

/// Random smooth Hermitian function on [-pi, pi] with |G| <= 1 at the
/// line nodes: G(w) = sum_m a_m cos(m w) + i b_m sin(m w).
struct SmoothProfile {
    std::vector<double> a, b;

    std::complex<double> operator()(double w) const {
        double re = 0.0, im = 0.0;
        for (std::size_t m = 0; m < a.size(); ++m) {
            re += a[m] * std::cos(double(m) * w);
            im += b[m] * std::sin(double(m) * w);
        }
        return {re, im};
    }

    static SmoothProfile draw(Rng& rng, int order, const std::vector<double>& norm_nodes) {
        SmoothProfile g;
        g.a.resize(std::size_t(order) + 1);
        g.b.resize(std::size_t(order) + 1);
        for (auto& v : g.a) v = rng.uniform(-1.0, 1.0);
        for (auto& v : g.b) v = rng.uniform(-1.0, 1.0);
        double peak = 0.0;
        for (double w : norm_nodes) peak = std::max(peak, std::abs(g(w)));
        if (peak > 0.0)
            for (std::size_t m = 0; m < g.a.size(); ++m) {
                g.a[m] /= peak;
                g.b[m] /= peak;
            }
        return g;
    }
};

} // namespace detail

/// x(t) = sum_k a_k cos(omega_k t + phi_k) over [t0, t1].
inline Series synth_lines(const std::vector<SinusoidComponent>& lines, std::int64_t t0,
                          std::int64_t t1) {
    if (t1 < t0) throw validation_error("synth_lines: t1 < t0");
    std::vector<double> x(std::size_t(t1 - t0 + 1), 0.0);
    for (const auto& ln : lines) {
        if (ln.amplitude == 0.0) continue;
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += ln.amplitude * std::cos(ln.omega * double(t0 + std::int64_t(i)) + ln.phase);
    }
    return Series(t0, std::move(x));
}

/// Generated signal together with its line representation and, when the
/// spec defines one, the continuous spectral amplitude profile.
struct ResolvedSignal {
    Series series;
    std::vector<SinusoidComponent> lines;
    std::function<double(double)> density; ///< |X|(omega); empty unless defined
};

inline ResolvedSignal resolve(const SpectrumSpec& spec, std::int64_t t0, std::int64_t t1) {
    spec.validate();
    ResolvedSignal out;
    switch (spec.kind) {
    case SpectrumSpec::Kind::Sinusoids: {
        for (auto s : spec.components) {
            if (s.omega < 0.0) { // fold: cos(-wt + p) = cos(wt - p)
                s.omega = -s.omega;
                s.phase = -s.phase;
            }
            out.lines.push_back(s);
        }
        break;
    }
    case SpectrumSpec::Kind::BandlimitedNoise: {
        detail::Rng rng(spec.seed);
        for (int k = 0; k < spec.n_components; ++k) {
            SinusoidComponent s;
            s.omega = std::fabs(rng.uniform(-spec.omega1, spec.omega1));
            s.amplitude = rng.uniform(0.2, 1.0);
            s.phase = rng.uniform(0.0, 2.0 * M_PI);
            out.lines.push_back(s);
        }
        // normalize to sup-norm 1 on the window
        Series probe = synth_lines(out.lines, t0, t1);
        const double peak = probe.linf();
        if (peak > 0.0)
            for (auto& s : out.lines) s.amplitude /= peak;
        // idealized continuous profile: smooth bump supported on
        // [-omega1, omega1]
        const double w1 = spec.omega1;
        out.density = [w1](double w) -> double {
            if (std::fabs(w) >= w1) return 0.0;
            const double ch = std::cos(0.5 * M_PI * w / w1);
            return ch * ch;
        };
        break;
    }
    case SpectrumSpec::Kind::EnergyDecay: {
        detail::Rng rng(spec.seed);
        const WeightParams wp{spec.c, spec.q};
        const int K = spec.n_lines;
        std::vector<double> nodes(std::size_t(K) + 1);
        for (int k = 0; k <= K; ++k) nodes[std::size_t(k)] = M_PI * k / K;
        const auto g = detail::SmoothProfile::draw(rng, 8, nodes);
        double amax = 0.0;
        for (int k = 0; k <= K; ++k) {
            const double w = nodes[std::size_t(k)];
            const std::complex<double> gv = g(w);
            const double we = weight_exponent(w, wp);
            SinusoidComponent s;
            s.omega = w;
            s.amplitude = std::isinf(we) ? 0.0 : std::abs(gv) * std::exp(-we);
            s.phase = std::arg(gv);
            amax = std::max(amax, s.amplitude);
            out.lines.push_back(s);
        }
        // drop lines buried below the representable band edge
        for (auto& s : out.lines)
            if (s.amplitude < 1e-12 * amax) s.amplitude = 0.0;
        out.density = [g, wp](double w) -> double {
            const double we = weight_exponent(w, wp);
            return std::isinf(we) ? 0.0 : std::abs(g(w)) * std::exp(-we);
        };
        break;
    }
    case SpectrumSpec::Kind::NoiseL1: {
        detail::Rng rng(spec.seed);
        std::vector<SinusoidComponent> unit(std::size_t(spec.n_components));
        double sum = 0.0;
        for (auto& s : unit) {
            const double u = rng.uniform();
            s.omega = M_PI * (1.0 - u * u); // draw weighted toward pi
            s.amplitude = rng.uniform(0.5, 1.5);
            s.phase = rng.uniform(0.0, 2.0 * M_PI);
            sum += s.amplitude;
        }
        // unit draw carries ||X||_L1 = 1, then scales linearly in nu so
        // every nu reuses the same seed-determined shape; the series is
        // scaled samplewise to make x(2 nu) = 2 x(nu) bit-exact
        for (auto& s : unit) s.amplitude /= 2.0 * M_PI * sum;
        out.series = synth_lines(unit, t0, t1);
        for (double& v : out.series.samples) v *= spec.nu;
        out.lines = unit;
        for (auto& s : out.lines) s.amplitude *= spec.nu;
        return out;
    }
    }
    out.series = synth_lines(out.lines, t0, t1);
    return out;
}

inline Series gen_sinusoids(const std::vector<SinusoidComponent>& comps, std::int64_t t0,
                            std::int64_t t1) {
    SpectrumSpec s;
    s.kind = SpectrumSpec::Kind::Sinusoids;
    s.components = comps;
    return resolve(s, t0, t1).series;
}

inline Series gen_bandlimited_noise(double omega1, std::uint64_t seed, std::int64_t t0,
                                    std::int64_t t1, int n_components = 24) {
    SpectrumSpec s;
    s.kind = SpectrumSpec::Kind::BandlimitedNoise;
    s.omega1 = omega1;
    s.seed = seed;
    s.n_components = n_components;
    return resolve(s, t0, t1).series;
}

inline Series gen_energy_decay(double c, double q, std::uint64_t seed, std::int64_t t0,
                               std::int64_t t1) {
    SpectrumSpec s;
    s.kind = SpectrumSpec::Kind::EnergyDecay;
    s.c = c;
    s.q = q;
    s.seed = seed;
    return resolve(s, t0, t1).series;
}

inline Series gen_noise_l1(double nu, std::uint64_t seed, std::int64_t t0, std::int64_t t1,
                           int n_components = 24) {
    SpectrumSpec s;
    s.kind = SpectrumSpec::Kind::NoiseL1;
    s.nu = nu;
    s.seed = seed;
    s.n_components = n_components;
    return resolve(s, t0, t1).series;
}

// ---------------------------------------------------------------------------
// Windowed spectral estimation and the class diagnostic
// ---------------------------------------------------------------------------

/// Hann-windowed amplitude estimate at omega: for x containing
/// a cos(omega t + phi) this returns ~a (lines at 0 and +-pi count once,
/// interior lines twice in the two-sided sum).
inline double amplitude_estimate(const Series& x, double omega) {
    const std::size_t n = x.size();
    if (n < 8) throw validation_error("amplitude_estimate: window too short");
    double wsum = 0.0, acc_re = 0.0, acc_im = 0.0;
    // incremental rotation e^{-i omega i}
    const double cr = std::cos(-omega), ci = std::sin(-omega);
    double rr = 1.0, ri = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * double(i) / double(n - 1)));
        wsum += w;
        acc_re += w * x.samples[i] * rr;
        acc_im += w * x.samples[i] * ri;
        const double nr = rr * cr - ri * ci;
        ri = rr * ci + ri * cr;
        rr = nr;
    }
    const double bin_half = M_PI / double(n);
    const double aw = std::fabs(omega);
    const double factor = (aw <= bin_half || aw >= M_PI - bin_half) ? 1.0 : 2.0;
    return factor * std::hypot(acc_re, acc_im) / wsum;
}

/// Exact-path diagnostic: sup over spectral lines of amplitude * h.
/// A zero-amplitude line contributes nothing even where h = +inf.
/// Saturates at exp(709) so non-membership reports stay finite.
inline double class_diagnostic(const std::vector<SinusoidComponent>& lines,
                               const WeightParams& wp) {
    wp.validate();
    double best = 0.0;
    for (const auto& ln : lines) {
        if (ln.amplitude <= 0.0) continue;
        const double lv = std::log(ln.amplitude) + weight_exponent(ln.omega, wp);
        best = std::max(best, std::exp(std::min(lv, 709.0)));
    }
    return best;
}

/// Windowed-estimate diagnostic: max over grid nodes of the Hann
/// amplitude estimate times h(omega, c).  This is an estimate of the
/// ess sup, not the ess sup itself: estimates below 1e-10 of the peak
/// are treated as zero (the window cannot distinguish them from
/// leakage), the +-pi node is excluded (h = +inf there), and values
/// saturate at exp(709).
inline double class_diagnostic(const Series& x, const WeightParams& wp,
                               const FrequencyGrid& grid) {
    wp.validate();
    std::vector<double> est(std::size_t(grid.size));
    double peak = 0.0;
    for (int j = 0; j < grid.size; ++j) {
        est[std::size_t(j)] = amplitude_estimate(x, grid.node(j));
        peak = std::max(peak, est[std::size_t(j)]);
    }
    if (peak == 0.0) return 0.0;
    const double floor = 1e-10 * peak;
    double best = 0.0;
    for (int j = 0; j < grid.size; ++j) {
        const double we = weight_exponent(grid.node(j), wp);
        if (std::isinf(we) || est[std::size_t(j)] < floor) continue;
        best = std::max(best, std::exp(std::min(std::log(est[std::size_t(j)]) + we, 709.0)));
    }
    return best;
}

} // namespace specpred
