#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>

#include "smilewing/criterion.hpp"

namespace smilewing {

/// Cumulant generating function of a risk-neutral return distribution,
/// evaluated on its strip of analyticity. Immutable after construction;
/// all evaluations are pure, so values can be shared freely across threads.
///
/// K(0) = 0 for every model. Complex arguments are admitted whenever the
/// real part lies strictly inside the strip.
class ModelCgf {
public:
    using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;
    /// Closed-form derivative evaluator: (order in [1,4], v) -> K^(order)(v).
    using DerivFn = std::function<double(int, double)>;

    ModelCgf() = default;

    /// Assembles a model. boundary_left/right are the limits of K(v) as v
    /// approaches the strip endpoints (may be +-infinity); they drive the
    /// time-change case analysis. closed_derivs may be empty, in which case
    /// derivatives fall back to complex-step / central differences.
    static ModelCgf make(std::string name, AnalyticStrip strip, CriterionClass criterion,
                         ComplexFn eval, double boundary_left, double boundary_right,
                         DerivFn closed_derivs = {});

    [[nodiscard]] bool valid() const { return impl_ != nullptr; }
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const AnalyticStrip& strip() const;
    [[nodiscard]] const CriterionClass& criterion() const;

    /// K at a complex argument. Throws DomainViolation (carrying Re(u) and
    /// the strip) when Re(u) is not strictly inside the strip.
    [[nodiscard]] std::complex<double> cgf(std::complex<double> u) const;

    /// K at a real argument.
    [[nodiscard]] double cgf(double v) const;

    /// Limit of K(v) as v tends to the left/right strip endpoint.
    [[nodiscard]] double boundary_value_left() const;
    [[nodiscard]] double boundary_value_right() const;

    [[nodiscard]] bool has_closed_derivatives() const;
    [[nodiscard]] double closed_derivative(int order, double v) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Checked evaluation of K(u); identical to model.cgf(u).
std::complex<double> cgf_eval(const ModelCgf& model, std::complex<double> u);

/// nth derivative of K at a real point strictly inside the strip,
/// order in [1,4]. Uses closed forms where the model provides them;
/// otherwise complex-step differentiation for order 1 and central
/// differences of the first derivative for orders 2-4, with the step
/// scaled to the distance to the strip boundary.
double cgf_deriv(const ModelCgf& model, int order, double v);

/// The cgf of -X: K(-u), with strip and boundary values mirrored.
ModelCgf reflect(const ModelCgf& model);

/// Cgf of a Levy process at horizon t: v -> t * K(v). The strip is
/// unchanged; criterion metadata is quoted at unit time.
ModelCgf at_horizon(const ModelCgf& levy_unit_time, double t);

/// Shifts the cgf by a linear drift so that K(1) = 0 (unit-mean e^X under
/// the pricing measure). Requires 1 inside the strip. Strip, criterion and
/// wing slopes are unaffected by the shift.
ModelCgf martingale_normalize(const ModelCgf& model);

} // namespace smilewing
