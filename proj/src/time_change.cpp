#include "smilewing/time_change.hpp"

#include <cmath>
#include <sstream>

#include "detail/affine_kernels.hpp"
#include "detail/heston_log.hpp"
#include "smilewing/asymptotics.hpp"
#include "smilewing/errors.hpp"
#include "smilewing/root_finding.hpp"

namespace smilewing {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

cd gamma_ou_cgf_cplx(const GammaOuParams& p, cd w, double t) {
    const double c = -std::expm1(-p.lambda * t) / p.lambda;
    const double vb = p.lambda * p.b;
    const cd linear = w * p.y0 * c;
    if (std::abs(w - vb) < 1e-4 * vb) {
        const double el = std::exp(p.lambda * t);
        const double f1 = c * el - t;
        const double f2 = c * c * el * el / p.b;
        const double f3 = 2.0 * c * c * c * el * el * el / (p.b * p.b);
        const double f4 = 6.0 * c * c * c * c * el * el * el * el / (p.b * p.b * p.b);
        const cd dv = w - vb;
        return linear + p.lambda * p.a * (f1 + dv * (f2 / 2.0 + dv * (f3 / 6.0 + dv * (f4 / 24.0))));
    }
    // b - w c has positive real part for Re(w) < p_T, so the principal log
    // never meets its cut along pricing contours.
    const cd bracket = p.b * std::log(p.b / (p.b - w * c)) - w * t;
    return linear + p.lambda * p.a / (w - vb) * bracket;
}

cd cir_cgf_cplx(const CirParams& p, cd w, double t) {
    const cd gamma_sq = p.kappa * p.kappa - 2.0 * p.lambda * p.lambda * w;
    const cd i_v = p.kappa + detail::gamma_coth_cplx(gamma_sq, t);
    const double kh = p.kappa * p.eta / (p.lambda * p.lambda);
    cd log_term = 0.0;
    if (p.kappa > 0.0) {
        const cd log_a = detail::log_affine_A_cplx(gamma_sq, cd(p.kappa, 0.0), t);
        if (std::isnan(log_a.real()))
            throw NumericalFailure("cir: branch condition failed off the real axis at w = (" +
                                   fmt(w.real()) + ", " + fmt(w.imag()) + ")");
        log_term = -2.0 * kh * log_a;
    }
    return p.kappa * kh * t + 2.0 * p.y0 * w / i_v + log_term;
}

} // namespace

std::complex<double> clock_cgf_analytic(const ClockCgf& clock, cd w, double t) {
    if (w.imag() == 0.0) return cd(clock.cgf(w.real(), t), 0.0);
    switch (clock.kind()) {
    case ClockCgf::Kind::Deterministic: return clock.deterministic_rate() * t * w;
    case ClockCgf::Kind::GammaOu:
    case ClockCgf::Kind::Cir: {
        const double p_t = clock.explosion_point(t);
        if (!(w.real() < p_t))
            throw DomainViolation(clock.name() + ": Re(w) = " + fmt(w.real()) +
                                  " >= explosion point p_T = " + fmt(p_t));
        if (clock.kind() == ClockCgf::Kind::GammaOu)
            return gamma_ou_cgf_cplx(clock.gamma_ou_params(), w, t);
        return cir_cgf_cplx(clock.cir_params(), w, t);
    }
    }
    throw Error("clock_cgf_analytic: unreachable");
}

std::string to_string(const TcltCase& c) {
    std::ostringstream os;
    switch (c.kind) {
    case TcltCase::Kind::InteriorRoot: os << "interior_root"; break;
    case TcltCase::Kind::BoundaryRoot: os << "boundary_root"; break;
    case TcltCase::Kind::LevyDominates: os << "levy_dominates"; break;
    }
    os << "(p=" << c.p << ")";
    return os.str();
}

TcltCase right_critical_moment(const ModelCgf& base, const ClockCgf& clock, double t) {
    const double p_t = clock.explosion_point(t);
    const double upper = base.strip().upper;
    if (!std::isfinite(p_t)) return TcltCase{TcltCase::Kind::LevyDominates, upper};
    if (!(p_t > 0.0)) throw NumericalFailure("right_critical_moment: p_T must be positive");

    const double k_sup = base.boundary_value_right();
    if (std::isfinite(k_sup) && std::fabs(k_sup - p_t) <= 1e-8 * p_t)
        return TcltCase{TcltCase::Kind::BoundaryRoot, upper};
    if (k_sup < p_t) {
        if (!std::isfinite(upper))
            throw NumericalFailure(
                "right_critical_moment: bounded cgf on an unbounded strip is not supported");
        return TcltCase{TcltCase::Kind::LevyDominates, upper};
    }

    // Interior root: K_L is convex with K_L(0) = 0, so K_L = p_T > 0 has a
    // single crossing on the positive strip.
    auto f = [&](double v) { return base.cgf(v) - p_t; };
    double hi = 0.0;
    bool bracketed = false;
    if (std::isfinite(upper)) {
        for (int j = 1; j <= 40; ++j) {
            hi = upper * (1.0 - std::pow(2.0, -j));
            if (hi <= 0.0) continue;
            if (f(hi) > 0.0) {
                bracketed = true;
                break;
            }
        }
        if (!bracketed) {
            // K_sup > p_T guarantees a crossing in (hi, upper); it is within
            // 2^-40 of the endpoint, below double resolution at this scale,
            // so the cap point stands in for it.
            return TcltCase{TcltCase::Kind::InteriorRoot, hi};
        }
    } else {
        for (int j = 0; j <= 60; ++j) {
            hi = std::pow(2.0, j);
            if (f(hi) > 0.0) {
                bracketed = true;
                break;
            }
        }
        if (!bracketed)
            throw NumericalFailure("right_critical_moment: no crossing of p_T = " + fmt(p_t) +
                                   " found up to the search cap v = 2^60");
    }
    const double p = bisect(f, 0.0, hi, 1e-15, 300);
    return TcltCase{TcltCase::Kind::InteriorRoot, p};
}

TcltCase left_critical_moment(const ModelCgf& base, const ClockCgf& clock, double t) {
    return right_critical_moment(reflect(base), clock, t);
}

ComposedModel compose(const ModelCgf& base, const ClockCgf& clock, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw InvalidParameter("compose: maturity must be positive and finite");

    const TcltCase right = right_critical_moment(base, clock, t);
    const TcltCase left = left_critical_moment(base, clock, t);
    const AnalyticStrip strip{-left.p, right.p};

    const bool clock_driven = right.kind != TcltCase::Kind::LevyDominates;
    const CriterionClass crit = clock_driven ? clock.criterion(t) : base.criterion();

    const double p_t = clock.explosion_point(t);
    auto boundary = [&](const TcltCase& c, double base_boundary) {
        if (c.kind != TcltCase::Kind::LevyDominates) return kInf;
        if (!std::isfinite(base_boundary))
            return std::isfinite(p_t) ? kInf : base_boundary; // deterministic clock keeps the sup
        return clock.cgf(base_boundary, t);
    };
    const double bright = boundary(right, base.boundary_value_right());
    const double bleft = boundary(left, base.boundary_value_left());

    const ClockCgf::Kind kind = clock.kind();
    auto eval = [base, clock, t, p_t, kind](cd u) -> cd {
        const cd w = base.cgf(u);
        if (w.imag() == 0.0) return cd(clock.cgf(w.real(), t), 0.0);
        switch (kind) {
        case ClockCgf::Kind::Deterministic: return clock.deterministic_rate() * t * w;
        case ClockCgf::Kind::GammaOu: return gamma_ou_cgf_cplx(clock.gamma_ou_params(), w, t);
        default: return cir_cgf_cplx(clock.cir_params(), w, t);
        }
    };

    ComposedModel out;
    out.base = base;
    out.clock = clock;
    out.horizon = t;
    out.right_case = right;
    out.left_case = left;
    out.model = ModelCgf::make(base.name() + " @ " + clock.name() + " (t=" + fmt(t) + ")", strip,
                               crit, eval, bleft, bright);
    return out;
}

namespace {

// d^2(v) = (kappa - rho theta v)^2 - theta^2 (v^2 - v), quadratic in v.
struct HestonQuad {
    double a, b, c;
    double operator()(double v) const { return (a * v + b) * v + c; }
};

HestonQuad heston_d2(const HestonParams& p) {
    return HestonQuad{p.theta * p.theta * (p.rho * p.rho - 1.0),
                      p.theta * (p.theta - 2.0 * p.kappa * p.rho), p.kappa * p.kappa};
}

/// Root of d2(v) = target on the requested side of the origin, or NaN.
double quad_root(const HestonQuad& q, double target, bool positive_side) {
    const double c = q.c - target;
    if (q.a == 0.0) {
        if (q.b == 0.0) return std::numeric_limits<double>::quiet_NaN();
        const double r = -c / q.b;
        return (positive_side ? r > 0.0 : r < 0.0) ? r
                                                   : std::numeric_limits<double>::quiet_NaN();
    }
    const double disc = q.b * q.b - 4.0 * q.a * c;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double sq = std::sqrt(disc);
    const double r1 = (-q.b + sq) / (2.0 * q.a);
    const double r2 = (-q.b - sq) / (2.0 * q.a);
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double r : {r1, r2}) {
        if (positive_side ? r > 0.0 : r < 0.0) {
            if (std::isnan(best) || std::fabs(r) < std::fabs(best)) best = r;
        }
    }
    return best;
}

/// First explosion of the Heston mgf along the ray v = dir * s, s >= start_abs:
/// smallest s with (kappa - rho theta v) + sqrt(D) cot(sqrt(D) t/2) = 0 at
/// v = dir * s, where D = -d2. Returns +infinity when the mgf never explodes
/// in that direction.
double heston_first_root(const HestonParams& p, double t, double start_abs, double dir) {
    const HestonQuad d2 = heston_d2(p);
    auto g_out = [&](double s) {
        const double v = dir * s;
        const double b = p.kappa - p.rho * p.theta * v;
        return b + detail::gamma_coth_real(d2(v), t);
    };
    const double s_lo = start_abs + 1e-10 * std::max(1.0, start_abs);

    // Cap the scan where the cot argument reaches its first pole.
    const double target = -std::pow(2.0 * M_PI / t, 2);
    const double v_cap = quad_root(d2, target, dir > 0.0);
    if (std::isnan(v_cap)) {
        // No oscillatory regime in this direction; explosion can still occur
        // in the hyperbolic regime if the linear term turns negative.
        if (!(g_out(s_lo) > 0.0)) return start_abs;
        double s = std::max(1.0, 2.0 * start_abs);
        for (int j = 0; j < 45; ++j, s *= 2.0) {
            if (s > 1e12) return kInf;
            if (!(g_out(s) > 0.0)) return bisect(g_out, s_lo, s, 1e-13, 300);
        }
        return kInf;
    }

    const double s_hi = std::fabs(v_cap) * (1.0 - 1e-12);
    if (!(s_hi > s_lo)) return s_hi;
    auto br = find_first_sign_change(g_out, s_lo, s_hi, 4000);
    if (!br) return s_hi; // root pinned against the cot pole within scan resolution
    return bisect(g_out, br->first, br->second, 1e-13, 300);
}

void validate_heston(const HestonParams& p) {
    if (!(p.kappa > 0.0)) throw InvalidParameter("heston: requires kappa > 0");
    if (!(p.eta > 0.0)) throw InvalidParameter("heston: requires eta > 0");
    if (!(p.theta > 0.0)) throw InvalidParameter("heston: requires theta > 0");
    if (!(p.rho >= -1.0 && p.rho <= 1.0)) throw InvalidParameter("heston: requires rho in [-1, 1]");
    if (!(p.v0 > 0.0)) throw InvalidParameter("heston: requires v0 > 0");
}

} // namespace

namespace detail {

cd tracked_log_affine_A(const HestonParams& p, double t, cd u) {
    auto a_value = [&](cd z) -> cd {
        const cd b = p.kappa - p.rho * p.theta * z;
        const cd d2 = b * b - p.theta * p.theta * (z * z - z);
        const cd zz = d2 * (t * t * 0.25);
        if (std::abs(zz) < detail::kSeriesCut)
            return detail::cosh_series(zz) + 0.5 * b * t * detail::sinhc_series(zz);
        const cd d = std::sqrt(d2);
        if (std::fabs((0.5 * d * t).real()) > 300.0)
            throw NumericalFailure("heston: winding tracking overflow");
        return std::cosh(0.5 * d * t) + b * std::sinh(0.5 * d * t) / d;
    };
    const double x = u.real();
    double winding_prev = std::numeric_limits<double>::quiet_NaN();
    for (int n = 64; n <= (1 << 14); n *= 2) {
        double winding = 0.0;
        cd prev = a_value(cd(x, 0.0));
        bool ok = true;
        for (int j = 1; j <= n; ++j) {
            const cd cur = a_value(cd(x, u.imag() * static_cast<double>(j) / n));
            const double step = std::arg(cur / prev);
            if (std::fabs(step) > 0.5 * M_PI) {
                ok = false;
                break;
            }
            winding += step;
            prev = cur;
        }
        if (ok && !std::isnan(winding_prev) && std::fabs(winding - winding_prev) < 1e-9) {
            const cd a_end = a_value(u);
            return cd(std::log(std::abs(a_end)), winding);
        }
        if (ok) winding_prev = winding;
    }
    throw NumericalFailure("heston: argument tracking did not stabilize at u = (" + fmt(u.real()) +
                           ", " + fmt(u.imag()) + ")");
}

} // namespace detail

std::complex<double> heston_cgf(const HestonParams& p, double t, cd u) {
    validate_heston(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("heston: requires t > 0");
    const double coef = p.kappa * p.eta / (p.theta * p.theta);

    if (u.imag() == 0.0) {
        const double v = u.real();
        const double b = p.kappa - p.rho * p.theta * v;
        const double d2 = heston_d2(p)(v);
        const double log_a = detail::log_affine_A_real(d2, b, t);
        if (std::isnan(log_a))
            throw DomainViolation("heston: u = " + fmt(v) +
                                  " is outside the moment-explosion strip at t = " + fmt(t));
        const double sh = detail::sinhc_half_real(d2, t);
        const double ch = detail::cosh_half_real(d2, t);
        const double denom = ch + b * sh; // = exp(log_a)
        const double dd = (v * v - v) * sh / denom;
        return cd(coef * (b * t - 2.0 * log_a) + p.v0 * dd, 0.0);
    }

    const cd b = p.kappa - p.rho * p.theta * u;
    const cd d2 = b * b - p.theta * p.theta * (u * u - u);
    cd log_a = detail::log_affine_A_cplx(d2, b, t);
    if (std::isnan(log_a.real())) log_a = detail::tracked_log_affine_A(p, t, u);

    // D = (u^2 - u) T / (d + b T), T = tanh(d t/2): even in d, bounded as
    // Re(d t) grows.
    const cd zz = d2 * (t * t * 0.25);
    cd dd;
    if (std::abs(zz) < detail::kSeriesCut) {
        const cd sh = 0.5 * t * detail::sinhc_series(zz);
        const cd ch = detail::cosh_series(zz);
        dd = (u * u - u) * sh / (ch + b * sh);
    } else {
        const cd d = std::sqrt(d2);
        const cd half = 0.5 * d * t;
        const cd tanh_half = half.real() > 350.0 ? cd(1.0, 0.0) : std::tanh(half);
        dd = (u * u - u) * tanh_half / (d + b * tanh_half);
    }
    return coef * (b * t - 2.0 * log_a) + p.v0 * dd;
}

double heston_critical_moment(const HestonParams& p, double t) {
    validate_heston(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("heston: requires t > 0");
    // Moments of order in [0, 1] always exist; the explosion sits above 1.
    return heston_first_root(p, t, 1.0, +1.0);
}

double heston_critical_moment_left(const HestonParams& p, double t) {
    validate_heston(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("heston: requires t > 0");
    return heston_first_root(p, t, 0.0, -1.0);
}

HestonModel make_heston(const HestonParams& p, double t) {
    validate_heston(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("heston: requires t > 0");
    const double r_star = heston_critical_moment(p, t);
    const double q_star = heston_critical_moment_left(p, t);
    std::ostringstream name;
    name << "heston(kappa=" << p.kappa << ",eta=" << p.eta << ",theta=" << p.theta
         << ",rho=" << p.rho << ",v0=" << p.v0 << ") (t=" << t << ")";
    auto eval = [p, t](cd u) { return heston_cgf(p, t, u); };
    HestonModel out;
    out.params = p;
    out.horizon = t;
    out.model = ModelCgf::make(name.str(), AnalyticStrip{-q_star, r_star},
                               CriterionClass::type2(1.0), eval, kInf, kInf);
    return out;
}

WingReport wing_report(const ModelCgf& model) {
    WingReport r;
    r.q_star = model.strip().q_star();
    r.r_star = model.strip().r_star();
    r.criterion = model.criterion();
    r.right_applicable = r.r_star > 1.0;
    if (r.right_applicable)
        r.right_slope = std::isfinite(r.r_star) ? psi(r.r_star - 1.0).value : 0.0;
    r.left_applicable = r.q_star > 0.0;
    if (r.left_applicable) r.left_slope = std::isfinite(r.q_star) ? psi(r.q_star).value : 0.0;
    return r;
}

WingReport wing_report(const ComposedModel& composed) {
    WingReport r = wing_report(composed.model);
    r.right_case = composed.right_case;
    r.left_case = composed.left_case;
    return r;
}

WingReport wing_report(const HestonModel& heston) { return wing_report(heston.model); }

} // namespace smilewing
