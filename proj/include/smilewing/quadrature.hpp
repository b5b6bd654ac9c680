#pragma once

#include <cstddef>
#include <functional>

namespace smilewing {

struct QuadratureOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    std::size_t max_segments = 1 << 17;
    /// Truncation control for semi-infinite integrals: U_max doubles until
    /// envelope(U_max) < envelope_tol, capped at u_cap.
    double envelope_tol = 1e-14;
    double u_cap = double(1 << 20);
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    double u_max = 0.0; ///< truncation point actually used (semi-infinite case)
};

/// Adaptive Gauss-Kronrod 15(7) on [a, b]. osc_scale > 0 seeds the initial
/// segmentation with segments a few oscillation periods wide (for integrands
/// containing cos(osc_scale * u) factors); pass 0 for smooth integrands.
/// Throws NumericalFailure (reporting the achieved error estimate) when the
/// tolerance cannot be met within max_segments.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {}, double osc_scale = 0.0);

/// Integral of f over [0, infinity) for integrands with a decaying envelope.
/// The truncation point starts at u0 and doubles until
/// envelope(U) < envelope_tol (cap opts.u_cap), then [0, U] is integrated
/// adaptively.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const std::function<double(double)>& envelope,
                                         double u0, const QuadratureOptions& opts = {},
                                         double osc_scale = 0.0);

} // namespace smilewing
