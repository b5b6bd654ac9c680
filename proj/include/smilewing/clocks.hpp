#pragma once

#include <memory>
#include <string>

#include "smilewing/criterion.hpp"

namespace smilewing {

/// Gamma-Ornstein-Uhlenbeck integrated activity: the clock is the integral
/// of an OU process driven by a compound-Poisson gamma subordinator.
struct GammaOuParams {
    double lambda; ///< mean-reversion rate, > 0
    double a;      ///< jump intensity scale, > 0
    double b;      ///< jump size rate, > 0
    double y0;     ///< initial activity, > 0
};

/// Integrated Cox-Ingersoll-Ross activity, dy = kappa(eta - y)dt + lambda sqrt(y) dW.
struct CirParams {
    double kappa;  ///< mean reversion, >= 0
    double eta;    ///< long-run level, > 0
    double lambda; ///< vol-of-vol of the clock, > 0
    double y0;     ///< initial activity, > 0
};

/// Cgf of a random clock T at horizon t, with its explosion point p_T(t).
/// K_T(0; t) = 0; K_T is finite, convex and strictly increasing on [0, p_T).
/// Real-argument evaluation only; the analytic continuation to complex
/// arguments used for transform pricing lives with the composition layer.
class ClockCgf {
public:
    enum class Kind { GammaOu, Cir, Deterministic };

    ClockCgf() = default;

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const std::string& name() const;

    /// K_T(v; t). Throws DomainViolation when v >= p_T(t).
    [[nodiscard]] double cgf(double v, double t) const;

    /// p_T(t) = sup{v : M_T(v; t) < inf}; +infinity for the deterministic clock.
    [[nodiscard]] double explosion_point(double t) const;

    /// Blow-up classification of M_T at p_T(t). Depends on t through p_T.
    [[nodiscard]] CriterionClass criterion(double t) const;

    [[nodiscard]] const GammaOuParams& gamma_ou_params() const;
    [[nodiscard]] const CirParams& cir_params() const;
    [[nodiscard]] double deterministic_rate() const;

private:
    friend ClockCgf make_gamma_ou(const GammaOuParams&);
    friend ClockCgf make_cir(const CirParams&);
    friend ClockCgf make_deterministic(double);

    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

ClockCgf make_gamma_ou(const GammaOuParams& p);
ClockCgf make_cir(const CirParams& p);

/// Test fixture clock: K_T(v; t) = v * rate * t, never explodes.
ClockCgf make_deterministic(double rate);

} // namespace smilewing
