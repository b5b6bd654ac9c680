#include "smilewing/asymptotics.hpp"

#include <cmath>
#include <string>

#include "smilewing/errors.hpp"

namespace smilewing {

SlopeValue psi(double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw DomainViolation("psi: argument must be finite and >= 0, got " + std::to_string(x));
    if (x == 0.0) return {2.0};
    // Exact rearrangement of 2 - 4(sqrt(x^2 + x) - x): no cancellation for
    // any x > 0, which the round-trip identity needs already around x ~ 100.
    const double s = std::sqrt(1.0 + 1.0 / x);
    return {2.0 / (x * (1.0 + s) * (1.0 + s))};
}

SlopeValue right_slope(double r_star) {
    if (!std::isfinite(r_star) || !(r_star > 1.0))
        throw DomainViolation("right_slope: requires r* > 1 (p* = r* - 1 > 0), got r* = " +
                              std::to_string(r_star));
    return psi(r_star - 1.0);
}

SlopeValue left_slope(double q_star) {
    if (!std::isfinite(q_star) || !(q_star > 0.0))
        throw DomainViolation("left_slope: requires q* > 0, got q* = " + std::to_string(q_star));
    return psi(q_star);
}

SlopeValue tail_to_wing_right(double k, double neg_log_tail) {
    if (!std::isfinite(k) || !(k > 0.0))
        throw DomainViolation("tail_to_wing_right: requires k > 0");
    if (!std::isfinite(neg_log_tail) || !(neg_log_tail > 0.0))
        throw DomainViolation("tail_to_wing_right: requires -log Fbar > 0");
    const double ratio = neg_log_tail / k;
    if (!(ratio > 1.0))
        throw DomainViolation("tail_to_wing_right: -log Fbar(k)/k = " + std::to_string(ratio) +
                              " <= 1, tail too fat for the transfer");
    return psi(ratio - 1.0);
}

RvIndexEstimate estimate_rv_index(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 8)
        throw InvalidParameter("estimate_rv_index: need at least 8 samples, got " +
                               std::to_string(samples.size()));
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [s, y] = samples[i];
        if (!std::isfinite(s) || !(s > 0.0))
            throw InvalidParameter("estimate_rv_index: s values must be positive");
        if (!std::isfinite(y) || !(y > 0.0))
            throw InvalidParameter("estimate_rv_index: y values must be positive");
        if (i > 0 && !(s < samples[i - 1].first))
            throw InvalidParameter("estimate_rv_index: s values must be strictly decreasing");
    }

    // OLS of log y on log(1/s).
    double mx = 0.0, my = 0.0;
    for (const auto& [s, y] : samples) {
        mx += std::log(1.0 / s);
        my += std::log(y);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [s, y] : samples) {
        const double dx = std::log(1.0 / s) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ssr = 0.0;
    for (const auto& [s, y] : samples) {
        const double r = std::log(y) - (intercept + slope * std::log(1.0 / s));
        ssr += r * r;
    }
    const double stderr_slope =
        std::sqrt(ssr / (static_cast<double>(n) - 2.0) / sxx);

    if (!(slope > 0.0))
        throw NumericalFailure("estimate_rv_index: fitted index " + std::to_string(slope) +
                               " is not positive; samples do not blow up");
    return RvIndexEstimate{slope, stderr_slope,
                           {samples[n - 1].first, samples[0].first}};
}

std::vector<std::pair<double, double>>
geometric_samples(double s0, std::size_t count, const std::function<double(double)>& f) {
    if (!(s0 > 0.0)) throw InvalidParameter("geometric_samples: s0 must be > 0");
    std::vector<std::pair<double, double>> out;
    out.reserve(count);
    double s = s0;
    for (std::size_t i = 0; i < count; ++i, s *= 0.5) out.emplace_back(s, f(s));
    return out;
}

} // namespace smilewing
