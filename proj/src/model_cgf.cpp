#include "smilewing/model_cgf.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "smilewing/errors.hpp"

namespace smilewing {

struct ModelCgf::Impl {
    std::string name;
    AnalyticStrip strip;
    CriterionClass criterion;
    ComplexFn eval;
    double boundary_left = 0.0;
    double boundary_right = 0.0;
    DerivFn closed_derivs;
};

namespace {

[[noreturn]] void throw_strip_violation(const std::string& name, double re,
                                        const AnalyticStrip& strip) {
    std::ostringstream os;
    os << name << ": Re(u) = " << re << " outside the analyticity strip (" << strip.lower << ", "
       << strip.upper << ")";
    throw DomainViolation(os.str());
}

void require_built(const void* impl) {
    if (!impl) throw InvalidParameter("ModelCgf: used before construction");
}

} // namespace

ModelCgf ModelCgf::make(std::string name, AnalyticStrip strip, CriterionClass criterion,
                        ComplexFn eval, double boundary_left, double boundary_right,
                        DerivFn closed_derivs) {
    strip.validate();
    if (!eval) throw InvalidParameter("ModelCgf: evaluator must be callable");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->strip = strip;
    impl->criterion = criterion;
    impl->eval = std::move(eval);
    impl->boundary_left = boundary_left;
    impl->boundary_right = boundary_right;
    impl->closed_derivs = std::move(closed_derivs);
    ModelCgf m;
    m.impl_ = std::move(impl);
    return m;
}

const std::string& ModelCgf::name() const { require_built(impl_.get()); return impl_->name; }
const AnalyticStrip& ModelCgf::strip() const { require_built(impl_.get()); return impl_->strip; }
const CriterionClass& ModelCgf::criterion() const { require_built(impl_.get()); return impl_->criterion; }
double ModelCgf::boundary_value_left() const { require_built(impl_.get()); return impl_->boundary_left; }
double ModelCgf::boundary_value_right() const { require_built(impl_.get()); return impl_->boundary_right; }
bool ModelCgf::has_closed_derivatives() const { require_built(impl_.get()); return bool(impl_->closed_derivs); }

double ModelCgf::closed_derivative(int order, double v) const {
    require_built(impl_.get());
    if (!impl_->closed_derivs)
        throw InvalidParameter(impl_->name + ": no closed-form derivatives");
    return impl_->closed_derivs(order, v);
}

std::complex<double> ModelCgf::cgf(std::complex<double> u) const {
    require_built(impl_.get());
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || !impl_->strip.contains(u.real()))
        throw_strip_violation(impl_->name, u.real(), impl_->strip);
    return impl_->eval(u);
}

double ModelCgf::cgf(double v) const {
    require_built(impl_.get());
    if (!std::isfinite(v) || !impl_->strip.contains(v))
        throw_strip_violation(impl_->name, v, impl_->strip);
    return impl_->eval(std::complex<double>(v, 0.0)).real();
}

std::complex<double> cgf_eval(const ModelCgf& model, std::complex<double> u) {
    return model.cgf(u);
}

double cgf_deriv(const ModelCgf& model, int order, double v) {
    if (order < 1 || order > 4)
        throw InvalidParameter("cgf_deriv: order must be in [1, 4], got " + std::to_string(order));
    const AnalyticStrip& s = model.strip();
    if (!std::isfinite(v) || !s.contains(v))
        throw DomainViolation(model.name() + ": cgf_deriv point " + std::to_string(v) +
                              " outside the strip");
    if (model.has_closed_derivatives()) return model.closed_derivative(order, v);

    double dist = std::min(std::isfinite(s.lower) ? v - s.lower
                                                  : std::numeric_limits<double>::infinity(),
                           std::isfinite(s.upper) ? s.upper - v
                                                  : std::numeric_limits<double>::infinity());
    if (!std::isfinite(dist)) dist = std::max(1.0, std::fabs(v));
    const double h = 1e-6 * dist;

    // Complex-step first derivative. The step cannot be taken arbitrarily
    // small: evaluation paths with O(1) imaginary intermediates (the
    // oscillatory clock regime) leave roundoff of order eps * |K| in Im(K),
    // so h must stay large enough for the signal h K' to dominate it.
    const auto d1 = [&model, h](double x) {
        return model.cgf(std::complex<double>(x, h)).imag() / h;
    };
    if (order == 1) return d1(v);
    switch (order) {
    case 2: return (d1(v + h) - d1(v - h)) / (2.0 * h);
    case 3: return (d1(v + h) - 2.0 * d1(v) + d1(v - h)) / (h * h);
    default:
        return (d1(v + 2 * h) - 2.0 * d1(v + h) + 2.0 * d1(v - h) - d1(v - 2 * h)) /
               (2.0 * h * h * h);
    }
}

ModelCgf reflect(const ModelCgf& model) {
    const AnalyticStrip s = model.strip();
    AnalyticStrip mirrored{-s.upper, -s.lower};
    ModelCgf::DerivFn derivs;
    if (model.has_closed_derivatives())
        derivs = [model](int order, double v) {
            const double d = model.closed_derivative(order, -v);
            return (order % 2 == 1) ? -d : d;
        };
    return ModelCgf::make("reflect(" + model.name() + ")", mirrored, model.criterion(),
                          [model](std::complex<double> u) { return model.cgf(-u); },
                          model.boundary_value_right(), model.boundary_value_left(),
                          std::move(derivs));
}

ModelCgf at_horizon(const ModelCgf& levy_unit_time, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw InvalidParameter("at_horizon: maturity must be positive and finite");
    ModelCgf::DerivFn derivs;
    if (levy_unit_time.has_closed_derivatives())
        derivs = [levy_unit_time, t](int order, double v) {
            return t * levy_unit_time.closed_derivative(order, v);
        };
    return ModelCgf::make(levy_unit_time.name(), levy_unit_time.strip(),
                          levy_unit_time.criterion(),
                          [levy_unit_time, t](std::complex<double> u) {
                              return t * levy_unit_time.cgf(u);
                          },
                          t * levy_unit_time.boundary_value_left(),
                          t * levy_unit_time.boundary_value_right(), std::move(derivs));
}

ModelCgf martingale_normalize(const ModelCgf& model) {
    const AnalyticStrip s = model.strip();
    if (!s.contains(1.0))
        throw DomainViolation(model.name() +
                              ": cannot normalize, 1 is outside the strip (r* <= 1)");
    const double drift = -model.cgf(1.0);
    const auto shift_boundary = [&](double value, double endpoint) {
        if (!std::isfinite(value)) return value;
        return value + drift * endpoint;
    };
    ModelCgf::DerivFn derivs;
    if (model.has_closed_derivatives())
        derivs = [model, drift](int order, double v) {
            const double d = model.closed_derivative(order, v);
            return order == 1 ? d + drift : d;
        };
    return ModelCgf::make(model.name(), s, model.criterion(),
                          [model, drift](std::complex<double> u) {
                              return model.cgf(u) + drift * u;
                          },
                          shift_boundary(model.boundary_value_left(), s.lower),
                          shift_boundary(model.boundary_value_right(), s.upper),
                          std::move(derivs));
}

} // namespace smilewing
