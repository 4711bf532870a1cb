#pragma once

// In-place iterative radix-2 transform over the minimal complex type.
// Only power-of-two sizes are ever needed here (unit-circle sampling of
// transfer functions), so a dependency-free implementation keeps the
// library header-only.  Cross-checked against a direct DFT in the tests.

#include <cstddef>
#include <utility>
#include <vector>

#include "specpred/errors.hpp"
#include "specpred/real.hpp"

namespace specpred::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// sign = -1: forward DFT  X_j = sum_t x_t e^{-2 pi i j t / N}
/// sign = +1: inverse sum (caller divides by N).
template <class Real>
void fft_radix2(std::vector<cplx<Real>>& a, int sign) {
    using m = real_math<Real>;
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw validation_error("fft: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const Real ang = Real(sign) * 2 * m::pi() / Real(len);
        const std::size_t half = len / 2;
        // Twiddles from direct trig per butterfly column: costs a few
        // percent over the recurrence but keeps rounding at eps per
        // twiddle, which the binary128 path relies on.
        std::vector<cplx<Real>> tw(half);
        for (std::size_t k = 0; k < half; ++k)
            tw[k] = {m::cos(ang * Real(k)), m::sin(ang * Real(k))};
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx<Real> u = a[i + k];
                const cplx<Real> v = a[i + k + half] * tw[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

} // namespace specpred::detail
