#pragma once

// Floating-point abstraction for the synthesis pipeline.  The spectral
// sampling, inverse transform and convolution are templated on the real
// type so that kernels whose transfer function peaks beyond the double
// dynamic range (kappa * eps_double no longer small against the taps)
// can be produced in IEEE binary128 instead.  std::complex is not
// specified for __float128, so a minimal complex value type is used.

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace specpred {

using float128 = __float128;

template <class Real>
struct real_math {
    static Real cos(Real x) { return std::cos(x); }
    static Real sin(Real x) { return std::sin(x); }
    static Real exp(Real x) { return std::exp(x); }
    static Real fabs(Real x) { return std::fabs(x); }
    static Real eps() { return std::numeric_limits<Real>::epsilon(); }
    static Real pi() { return Real(3.14159265358979323846264338327950288L); }
};

template <>
struct real_math<float128> {
    static float128 cos(float128 x) { return ::cosq(x); }
    static float128 sin(float128 x) { return ::sinq(x); }
    static float128 exp(float128 x) { return ::expq(x); }
    static float128 fabs(float128 x) { return ::fabsq(x); }
    static float128 eps() { return ::ldexpq(1.0, -112); } // 2^-112, binary128 ulp of 1
    static float128 pi() { return 2 * ::acosq(0.0); }
};

template <class Real>
struct cplx {
    Real re{}, im{};

    friend cplx operator+(cplx a, cplx b) { return {a.re + b.re, a.im + b.im}; }
    friend cplx operator-(cplx a, cplx b) { return {a.re - b.re, a.im - b.im}; }
    friend cplx operator*(cplx a, cplx b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

} // namespace specpred
