#include "smilewing/clocks.hpp"

#include <cmath>
#include <sstream>

#include "detail/affine_kernels.hpp"
#include "smilewing/errors.hpp"
#include "smilewing/root_finding.hpp"

namespace smilewing {

struct ClockCgf::Impl {
    Kind kind = Kind::Deterministic;
    std::string name;
    GammaOuParams gou{};
    CirParams cir{};
    double rate = 0.0;
};

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_horizon(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw InvalidParameter("clock: horizon t must be positive and finite, got " + fmt(t));
}

double gamma_ou_decay(const GammaOuParams& p, double t) {
    // lambda^{-1}(1 - e^{-lambda t})
    return -std::expm1(-p.lambda * t) / p.lambda;
}

/// K_T for the Gamma-OU clock; the 4-term series bridges the removable
/// singularity at v = lambda b.
double gamma_ou_cgf(const GammaOuParams& p, double v, double t) {
    const double c = gamma_ou_decay(p, t);
    const double p_t = p.b / c;
    if (!(v < p_t))
        throw DomainViolation("gamma_ou: v = " + fmt(v) + " >= explosion point p_T = " + fmt(p_t) +
                              " at t = " + fmt(t));
    const double vb = p.lambda * p.b;
    const double linear = v * p.y0 * c;
    if (std::fabs(v - vb) < 1e-4 * vb) {
        const double el = std::exp(p.lambda * t);
        const double f1 = c * el - t;
        const double f2 = c * c * el * el / p.b;
        const double f3 = 2.0 * c * c * c * el * el * el / (p.b * p.b);
        const double f4 = 6.0 * c * c * c * c * el * el * el * el / (p.b * p.b * p.b);
        const double dv = v - vb;
        return linear + p.lambda * p.a * (f1 + dv * (f2 / 2.0 + dv * (f3 / 6.0 + dv * f4 / 24.0)));
    }
    const double bracket = p.b * std::log(p.b / (p.b - v * c)) - v * t;
    return linear + p.lambda * p.a / (v - vb) * bracket;
}

double cir_explosion_point(const CirParams& p, double t) {
    // First root of kappa + s cot(s t / 2) = 0 in theta = s t / 2,
    // bracketed on the first branch of the cotangent.
    const double lo = 0.5 * M_PI * 1e-6;
    const double hi = M_PI - 1e-9;
    auto f = [&](double theta) {
        const double s = 2.0 * theta / t;
        return p.kappa + s * std::cos(theta) / std::sin(theta);
    };
    double theta_star;
    try {
        theta_star = bisect(f, lo, hi, 1e-15, 300);
    } catch (const NumericalFailure&) {
        throw NumericalFailure("cir: explosion-point bracketing failed on theta in (" + fmt(lo) +
                               ", " + fmt(hi) + ") at t = " + fmt(t));
    }
    const double s = 2.0 * theta_star / t;
    return (p.kappa * p.kappa + s * s) / (2.0 * p.lambda * p.lambda);
}

double cir_cgf(const CirParams& p, double v, double t) {
    const double gamma_sq = p.kappa * p.kappa - 2.0 * p.lambda * p.lambda * v;
    const double i_v = p.kappa + detail::gamma_coth_real(gamma_sq, t);
    const double log_a = detail::log_affine_A_real(gamma_sq, p.kappa, t);
    if (!(i_v > 0.0) || std::isnan(log_a))
        throw DomainViolation("cir: v = " + fmt(v) + " >= explosion point p_T = " +
                              fmt(cir_explosion_point(p, t)) + " at t = " + fmt(t));
    const double kh = p.kappa * p.eta / (p.lambda * p.lambda);
    return p.kappa * kh * t + 2.0 * p.y0 * v / i_v - 2.0 * kh * log_a;
}

} // namespace

ClockCgf::Kind ClockCgf::kind() const { return impl_->kind; }
const std::string& ClockCgf::name() const { return impl_->name; }

double ClockCgf::cgf(double v, double t) const {
    require_horizon(t);
    if (!std::isfinite(v)) throw InvalidParameter(impl_->name + ": v must be finite");
    switch (impl_->kind) {
    case Kind::Deterministic: return impl_->rate * t * v;
    case Kind::GammaOu: return gamma_ou_cgf(impl_->gou, v, t);
    case Kind::Cir: return cir_cgf(impl_->cir, v, t);
    }
    throw Error("clock: unreachable");
}

double ClockCgf::explosion_point(double t) const {
    require_horizon(t);
    switch (impl_->kind) {
    case Kind::Deterministic: return std::numeric_limits<double>::infinity();
    case Kind::GammaOu: return impl_->gou.b / gamma_ou_decay(impl_->gou, t);
    case Kind::Cir: return cir_explosion_point(impl_->cir, t);
    }
    throw Error("clock: unreachable");
}

CriterionClass ClockCgf::criterion(double t) const {
    require_horizon(t);
    switch (impl_->kind) {
    case Kind::Deterministic: return CriterionClass::no_blowup();
    case Kind::GammaOu: {
        const auto& p = impl_->gou;
        const double p_t = p.b / gamma_ou_decay(p, t);
        return CriterionClass::type1(0, p.lambda * p.a * p.b / (p_t - p.lambda * p.b));
    }
    case Kind::Cir: return CriterionClass::type2(1.0);
    }
    throw Error("clock: unreachable");
}

const GammaOuParams& ClockCgf::gamma_ou_params() const {
    if (impl_->kind != Kind::GammaOu) throw InvalidParameter(impl_->name + ": not a Gamma-OU clock");
    return impl_->gou;
}
const CirParams& ClockCgf::cir_params() const {
    if (impl_->kind != Kind::Cir) throw InvalidParameter(impl_->name + ": not a CIR clock");
    return impl_->cir;
}
double ClockCgf::deterministic_rate() const {
    if (impl_->kind != Kind::Deterministic)
        throw InvalidParameter(impl_->name + ": not a deterministic clock");
    return impl_->rate;
}

ClockCgf make_gamma_ou(const GammaOuParams& p) {
    if (!(p.lambda > 0.0)) throw InvalidParameter("gamma_ou: requires lambda > 0");
    if (!(p.a > 0.0)) throw InvalidParameter("gamma_ou: requires a > 0");
    if (!(p.b > 0.0)) throw InvalidParameter("gamma_ou: requires b > 0");
    if (!(p.y0 > 0.0)) throw InvalidParameter("gamma_ou: requires y0 > 0");
    ClockCgf c;
    auto impl = std::make_shared<ClockCgf::Impl>();
    impl->kind = ClockCgf::Kind::GammaOu;
    impl->gou = p;
    impl->name = "gamma_ou(lambda=" + fmt(p.lambda) + ",a=" + fmt(p.a) + ",b=" + fmt(p.b) +
                 ",y0=" + fmt(p.y0) + ")";
    c.impl_ = std::move(impl);
    return c;
}

ClockCgf make_cir(const CirParams& p) {
    // kappa = 0 is admitted: the clock degenerates but still explodes at
    // p_T = pi^2 / (2 lambda^2 t^2).
    if (!(p.kappa >= 0.0)) throw InvalidParameter("cir: requires kappa >= 0");
    if (!(p.eta > 0.0)) throw InvalidParameter("cir: requires eta > 0");
    if (!(p.lambda > 0.0)) throw InvalidParameter("cir: requires lambda > 0");
    if (!(p.y0 > 0.0)) throw InvalidParameter("cir: requires y0 > 0");
    ClockCgf c;
    auto impl = std::make_shared<ClockCgf::Impl>();
    impl->kind = ClockCgf::Kind::Cir;
    impl->cir = p;
    impl->name = "cir(kappa=" + fmt(p.kappa) + ",eta=" + fmt(p.eta) + ",lambda=" + fmt(p.lambda) +
                 ",y0=" + fmt(p.y0) + ")";
    c.impl_ = std::move(impl);
    return c;
}

ClockCgf make_deterministic(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw InvalidParameter("deterministic clock: requires rate > 0");
    ClockCgf c;
    auto impl = std::make_shared<ClockCgf::Impl>();
    impl->kind = ClockCgf::Kind::Deterministic;
    impl->rate = rate;
    impl->name = "deterministic(rate=" + fmt(rate) + ")";
    c.impl_ = std::move(impl);
    return c;
}

} // namespace smilewing
