#pragma once

#include <cmath>
#include <complex>
#include <limits>

// Shared kernels for the two affine activity cgfs (integrated CIR and the
// Heston variance leg). Everything is a function of gamma^2, which keeps the
// square-root branch out of the picture: the combinations
//   gamma * coth(gamma t/2)   and   cosh(gamma t/2) + (b/gamma) sinh(gamma t/2)
// are even in gamma, hence analytic in gamma^2 across zero.

namespace smilewing::detail {

// Series in z2 = (gamma t/2)^2, used for |z2| below kSeriesCut where the
// closed forms lose digits. Relative truncation error ~ z2^4 / 4725.
inline constexpr double kSeriesCut = 1e-3;

template <class T> T zcothz_series(T z2) {
    return 1.0 + z2 * (1.0 / 3.0) - z2 * z2 * (1.0 / 45.0) + z2 * z2 * z2 * (2.0 / 945.0);
}
template <class T> T cosh_series(T z2) {
    return 1.0 + z2 * 0.5 + z2 * z2 * (1.0 / 24.0) + z2 * z2 * z2 * (1.0 / 720.0);
}
template <class T> T sinhc_series(T z2) { // sinh(z)/z
    return 1.0 + z2 * (1.0 / 6.0) + z2 * z2 * (1.0 / 120.0) + z2 * z2 * z2 * (1.0 / 5040.0);
}

/// gamma * coth(gamma t / 2) for real gamma^2. In the oscillatory regime
/// (gamma^2 < 0) this is s * cot(s t / 2), s = sqrt(-gamma^2), valid on the
/// first branch only; returns -infinity once s t / 2 reaches pi (callers
/// treat that as past the explosion point).
inline double gamma_coth_real(double gamma_sq, double t) {
    const double z2 = gamma_sq * t * t * 0.25;
    if (std::fabs(z2) < kSeriesCut) return (2.0 / t) * zcothz_series(z2);
    if (gamma_sq > 0.0) {
        const double g = std::sqrt(gamma_sq);
        const double e = std::exp(-g * t);
        return g * (1.0 + e) / (1.0 - e);
    }
    const double s = std::sqrt(-gamma_sq);
    const double half = 0.5 * s * t;
    if (half >= M_PI) return -std::numeric_limits<double>::infinity();
    return s * std::cos(half) / std::sin(half);
}

/// log[cosh(gamma t/2) + (b/gamma) sinh(gamma t/2)] for real gamma^2 and
/// real b. Returns NaN when the bracket is nonpositive (explosion reached).
inline double log_affine_A_real(double gamma_sq, double b, double t) {
    const double z2 = gamma_sq * t * t * 0.25;
    if (std::fabs(z2) < kSeriesCut) {
        const double A = cosh_series(z2) + 0.5 * b * t * sinhc_series(z2);
        return A > 0.0 ? std::log(A) : std::numeric_limits<double>::quiet_NaN();
    }
    if (gamma_sq > 0.0) {
        const double g = std::sqrt(gamma_sq);
        const double e = std::exp(-g * t);
        const double bracket = 0.5 * (1.0 + b / g) + 0.5 * (1.0 - b / g) * e;
        if (!(bracket > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return 0.5 * g * t + std::log(bracket);
    }
    const double s = std::sqrt(-gamma_sq);
    const double half = 0.5 * s * t;
    if (half >= M_PI) return std::numeric_limits<double>::quiet_NaN();
    const double A = std::cos(half) + (b / s) * std::sin(half);
    return A > 0.0 ? std::log(A) : std::numeric_limits<double>::quiet_NaN();
}

/// sinh(gamma t/2) / gamma for real gamma^2 (even in gamma), t/2 absorbed:
/// returns sinh(g t/2)/g, or sin(s t/2)/s in the oscillatory regime.
inline double sinhc_half_real(double gamma_sq, double t) {
    const double z2 = gamma_sq * t * t * 0.25;
    if (std::fabs(z2) < kSeriesCut) return 0.5 * t * sinhc_series(z2);
    if (gamma_sq > 0.0) {
        const double g = std::sqrt(gamma_sq);
        return std::sinh(0.5 * g * t) / g;
    }
    const double s = std::sqrt(-gamma_sq);
    return std::sin(0.5 * s * t) / s;
}

inline double cosh_half_real(double gamma_sq, double t) {
    const double z2 = gamma_sq * t * t * 0.25;
    if (std::fabs(z2) < kSeriesCut) return cosh_series(z2);
    if (gamma_sq > 0.0) return std::cosh(0.5 * std::sqrt(gamma_sq) * t);
    return std::cos(0.5 * std::sqrt(-gamma_sq) * t);
}

/// gamma * coth(gamma t/2) for complex gamma^2 off the negative real axis
/// (principal sqrt has Re(gamma) > 0 there, so |e^{-gamma t}| < 1).
inline std::complex<double> gamma_coth_cplx(std::complex<double> gamma_sq, double t) {
    const std::complex<double> z2 = gamma_sq * (t * t * 0.25);
    if (std::abs(z2) < kSeriesCut) return (2.0 / t) * zcothz_series(z2);
    const std::complex<double> g = std::sqrt(gamma_sq);
    const std::complex<double> e = std::exp(-g * t);
    return g * (1.0 + e) / (1.0 - e);
}

/// log[cosh(gamma t/2) + (b/gamma) sinh(gamma t/2)] for complex gamma^2 off
/// the negative real axis and b with Re(gamma conj(b)) > 0. Decomposed as
///   gamma t/2 + log((gamma+b)/(2 gamma)) + log(1 + (gamma-b)/(gamma+b) e^{-gamma t}),
/// each piece provably clear of the principal branch cut under that
/// condition. Returns NaN when the condition fails (caller falls back to a
/// path-tracked logarithm).
inline std::complex<double> log_affine_A_cplx(std::complex<double> gamma_sq,
                                              std::complex<double> b, double t) {
    const std::complex<double> z2 = gamma_sq * (t * t * 0.25);
    if (std::abs(z2) < kSeriesCut) {
        const std::complex<double> A = cosh_series(z2) + 0.5 * b * t * sinhc_series(z2);
        return std::log(A); // A near 1 + bt/2, far from the cut for small z2
    }
    const std::complex<double> g = std::sqrt(gamma_sq);
    if (!((g * std::conj(b)).real() > 0.0))
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    const std::complex<double> e = std::exp(-g * t);
    const std::complex<double> ratio = (g - b) / (g + b);
    return 0.5 * g * t + std::log((g + b) / (2.0 * g)) + std::log(1.0 + ratio * e);
}

} // namespace smilewing::detail
