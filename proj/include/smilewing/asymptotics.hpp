#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace smilewing {

/// Asymptotic slope of total implied variance against log-strike.
/// Invariant: 0 <= value <= 2.
struct SlopeValue {
    double value;
};

/// The map psi(x) = 2 - 4(sqrt(x^2 + x) - x) taking a moment/tail exponent
/// to an implied-variance wing slope. Strictly decreasing, psi(0) = 2,
/// psi(x) -> 0 as x -> infinity.
///
/// Throws DomainViolation for negative or non-finite input.
SlopeValue psi(double x);

/// Right-wing slope psi(r_star - 1). Requires r_star > 1.
SlopeValue right_slope(double r_star);

/// Left-wing slope psi(q_star). Requires q_star > 0.
SlopeValue left_slope(double q_star);

/// Finite-strike transfer from a log-tail to a wing slope:
/// psi(neg_log_tail / k - 1). Requires k > 0, neg_log_tail > 0 and
/// neg_log_tail / k > 1 (tails fatter than that are outside the
/// formula's domain).
SlopeValue tail_to_wing_right(double k, double neg_log_tail);

/// Regular-variation index fitted from samples of a blowing-up quantity.
struct RvIndexEstimate {
    double rho;       ///< fitted index, > 0
    double std_error; ///< standard error of the fitted slope
    std::pair<double, double> window; ///< (smallest s, largest s) used
};

/// Least-squares estimate of rho from samples (s_i, y_i) assumed to follow
/// y ~ s^-rho * (slowly varying). Fits log y against log(1/s); slowly
/// varying corrections are absorbed into the standard error.
///
/// Requires at least 8 samples, s strictly decreasing toward 0, all values
/// positive. Throws NumericalFailure if the fitted index is not positive.
RvIndexEstimate estimate_rv_index(std::span<const std::pair<double, double>> samples);

/// Convenience: geometric sample grid s_i = s0 * 2^-i, y_i = f(s_i),
/// ready for estimate_rv_index.
std::vector<std::pair<double, double>>
geometric_samples(double s0, std::size_t count, const std::function<double(double)>& f);

} // namespace smilewing
