#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "specpred/signals.hpp"

using namespace specpred;
using Catch::Approx;

namespace {

/// independent windowed-DFT oracle (plain loop, no rotation recurrence)
double hann_dft_amp(const Series& x, double omega) {
    const std::size_t n = x.size();
    std::complex<double> acc = 0.0;
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * double(i) / double(n - 1)));
        wsum += w;
        acc += w * x.samples[i] * std::polar(1.0, -omega * double(i));
    }
    const double factor = (std::fabs(omega) < M_PI / double(n)) ? 1.0 : 2.0;
    return factor * std::abs(acc) / wsum;
}

} // namespace

TEST_CASE("sinusoid generator closed forms") {
    const Series constant = gen_sinusoids({{0.0, 1.0, 0.0}}, 0, 9);
    for (double v : constant.samples) CHECK(v == 1.0);

    const Series c3 = gen_sinusoids({{M_PI / 3, 1.0, 0.0}}, 0, 5);
    const double expect[] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
    for (int t = 0; t < 6; ++t)
        CHECK(c3.samples[std::size_t(t)] == Approx(expect[t]).margin(1e-14));

    const Series zero = gen_sinusoids({}, -3, 3);
    for (double v : zero.samples) CHECK(v == 0.0);
    CHECK(zero.t0() == -3);
    CHECK(zero.size() == 7);
}

TEST_CASE("negative frequencies fold onto their mirror line") {
    const Series a = gen_sinusoids({{-1.3, 0.7, 0.4}}, 0, 63);
    const Series b = gen_sinusoids({{1.3, 0.7, -0.4}}, 0, 63);
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("band-limited noise: determinism, normalization, reduction") {
    const Series x1 = gen_bandlimited_noise(2.0, 42, 0, 4095);
    const Series x2 = gen_bandlimited_noise(2.0, 42, 0, 4095);
    for (std::size_t i = 0; i < x1.samples.size(); ++i) CHECK(x1.samples[i] == x2.samples[i]);
    CHECK(gen_bandlimited_noise(2.0, 43, 0, 4095).samples != x1.samples);

    CHECK(x1.linf() == Approx(1.0).margin(1e-12));

    SpectrumSpec one;
    one.kind = SpectrumSpec::Kind::BandlimitedNoise;
    one.omega1 = 0.5;
    one.seed = 7;
    one.n_components = 1;
    const ResolvedSignal r = resolve(one, 0, 255);
    REQUIRE(r.lines.size() == 1);
    const Series direct = gen_sinusoids(r.lines, 0, 255);
    for (std::size_t i = 0; i < direct.samples.size(); ++i)
        CHECK(r.series.samples[i] == direct.samples[i]);
}

TEST_CASE("band-limited noise leaks only through the window") {
    const double omega1 = 1.2;
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::BandlimitedNoise;
    spec.omega1 = omega1;
    spec.seed = 5;
    const ResolvedSignal sig = resolve(spec, 0, 4095);
    for (const auto& ln : sig.lines) CHECK(std::fabs(ln.omega) < omega1);

    double peak = 0.0;
    for (int j = 0; j <= 64; ++j)
        peak = std::max(peak, hann_dft_amp(sig.series, omega1 * j / 64.0));
    const double guard = omega1 + 2.0 * M_PI * 4.0 / 4096.0;
    for (int j = 0; j <= 48; ++j) {
        const double w = guard + (M_PI - guard) * j / 48.0;
        CHECK(hann_dft_amp(sig.series, w) <= 0.05 * peak);
    }
}

TEST_CASE("energy-decay signal membership by construction") {
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::EnergyDecay;
    spec.c = 2.0;
    spec.q = 2.0;
    spec.seed = 11;
    const ResolvedSignal sig = resolve(spec, 0, 8191);
    const WeightParams wp{2.0, 2.0};

    // exact path: sup_k amplitude * h at the synthesis lines
    const double exact = class_diagnostic(sig.lines, wp);
    CHECK(exact <= 1.0 + 1e-6);
    CHECK(exact > 0.9);

    // windowed path carries leakage; tolerance 0.1
    const double windowed = class_diagnostic(sig.series, wp, FrequencyGrid(4096));
    CHECK(windowed <= 1.1);
    CHECK(windowed > 0.5);

    // the line at pi vanishes identically
    bool saw_pi = false;
    for (const auto& ln : sig.lines)
        if (ln.omega == M_PI) {
            saw_pi = true;
            CHECK(ln.amplitude == 0.0);
        }
    CHECK(saw_pi);
}

TEST_CASE("class nesting: smaller c weakens the diagnostic") {
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::EnergyDecay;
    spec.c = 2.0;
    spec.q = 2.0;
    spec.seed = 3;
    const ResolvedSignal sig = resolve(spec, 0, 4095);
    const FrequencyGrid grid(2048);
    for (double cp : {0.5, 1.0, 1.5}) {
        CHECK(class_diagnostic(sig.lines, {cp, 2.0}) <=
              class_diagnostic(sig.lines, {2.0, 2.0}) + 1e-12);
        CHECK(class_diagnostic(sig.series, {cp, 2.0}, grid) <=
              class_diagnostic(sig.series, {2.0, 2.0}, grid) + 1e-12);
    }
}

TEST_CASE("energy-decay density matches its lines") {
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::EnergyDecay;
    spec.c = 1.5;
    spec.q = 2.2;
    spec.seed = 9;
    const ResolvedSignal sig = resolve(spec, 0, 63);
    REQUIRE(sig.density);
    for (const auto& ln : sig.lines) {
        if (ln.amplitude == 0.0) continue;
        CHECK(sig.density(ln.omega) == Approx(ln.amplitude).epsilon(1e-12));
    }
    CHECK(sig.density(M_PI) == 0.0);
}

TEST_CASE("noise with prescribed spectral L1 mass") {
    const double nu = 0.07;
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::NoiseL1;
    spec.nu = nu;
    spec.seed = 21;
    const ResolvedSignal sig = resolve(spec, 0, 2047);

    double mass = 0.0;
    for (const auto& ln : sig.lines) mass += ln.amplitude;
    CHECK(2.0 * M_PI * mass == Approx(nu).margin(1e-9));

    // sharp inverse-transform bound nu/(2 pi), and the cruder nu
    CHECK(sig.series.linf() <= nu / (2.0 * M_PI) + 1e-12);
    CHECK(sig.series.linf() <= nu);

    // nu = 0 is the zero series
    spec.nu = 0.0;
    const ResolvedSignal z = resolve(spec, 0, 255);
    for (double v : z.series.samples) CHECK(v == 0.0);
    CHECK(class_diagnostic(z.series, {2.0, 2.0}, FrequencyGrid(512)) == 0.0);

    // doubling nu doubles every sample bit-exactly
    spec.nu = 2.0 * nu;
    const ResolvedSignal d = resolve(spec, 0, 2047);
    for (std::size_t i = 0; i < d.series.samples.size(); ++i)
        CHECK(d.series.samples[i] == 2.0 * sig.series.samples[i]);
}

TEST_CASE("noise near pi is flagged as outside the class") {
    SpectrumSpec spec;
    spec.kind = SpectrumSpec::Kind::NoiseL1;
    spec.nu = 0.1;
    spec.seed = 4;
    const ResolvedSignal sig = resolve(spec, 0, 4095);
    CHECK(class_diagnostic(sig.lines, {2.0, 2.0}) > 1e3);
    const double windowed = class_diagnostic(sig.series, {2.0, 2.0}, FrequencyGrid(2048));
    CHECK(windowed > 1e3);
    CHECK(std::isfinite(windowed));
}

TEST_CASE("windowed amplitude estimate is even and matches single lines") {
    std::mt19937_64 rng(31);
    auto u = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 6; ++trial) {
        const double w0 = 0.2 + 2.6 * u(), amp = 0.3 + u(), ph = 2 * M_PI * u();
        const Series x = gen_sinusoids({{w0, amp, ph}}, 0, 4095);
        CHECK(amplitude_estimate(x, w0) == Approx(amp).epsilon(2e-3));
        for (int j = 1; j < 8; ++j) {
            const double w = 3.1 * j / 8.0;
            CHECK(amplitude_estimate(x, -w) == Approx(amplitude_estimate(x, w)).margin(1e-12));
        }
    }
}

TEST_CASE("spectrum spec validation") {
    SpectrumSpec s;
    s.kind = SpectrumSpec::Kind::Sinusoids;
    s.components = {{4.0, 1.0, 0.0}};
    CHECK_THROWS_AS(s.validate(), validation_error);

    s = SpectrumSpec{};
    s.kind = SpectrumSpec::Kind::BandlimitedNoise;
    s.omega1 = M_PI;
    CHECK_THROWS_AS(s.validate(), validation_error);

    s = SpectrumSpec{};
    s.kind = SpectrumSpec::Kind::NoiseL1;
    s.nu = -0.1;
    CHECK_THROWS_AS(s.validate(), validation_error);

    s = SpectrumSpec{};
    s.kind = SpectrumSpec::Kind::EnergyDecay;
    s.q = 1.0;
    CHECK_THROWS_AS(s.validate(), validation_error);
}
