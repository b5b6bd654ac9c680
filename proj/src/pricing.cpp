#include "smilewing/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "smilewing/errors.hpp"
#include "smilewing/root_finding.hpp"

namespace smilewing {

namespace {

using cd = std::complex<double>;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double intrinsic_call(double k) { return std::max(0.0, -std::expm1(k)); }

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidParameter(std::string(what) + " must be finite");
}

/// Damping defaults per the strip; clipped strictly inside (0, width).
double default_damping(double width) {
    if (!std::isfinite(width)) return 1.0;
    const double a = std::min(0.75 * width, 0.5 * width + 0.25);
    return std::clamp(a, 1e-6 * width, (1.0 - 1e-6) * width);
}

/// e^{-(re_z - 1) k} / pi * Int_0^inf Re[e^{-iuk} M(re_z + iu)
/// / ((re_z - 1 + iu)(re_z + iu))] du: the call payoff transform along the
/// vertical contour Re(z) = re_z. Contours right of both poles (re_z > 1)
/// give the call, contours left of both (re_z < 0) the put.
double payoff_transform(const ModelCgf& m, double k, double re_z, const QuadratureOptions& quad) {
    auto integrand = [&](double u) {
        const cd z(re_z, u);
        return (std::exp(m.cgf(z) - cd(0.0, u * k)) / ((z - 1.0) * z)).real();
    };
    auto envelope = [&](double u) {
        return std::exp(m.cgf(cd(re_z, u)).real()) / (u * u);
    };
    const QuadratureResult r =
        integrate_semi_infinite(integrand, envelope, 32.0, quad, std::fabs(k));
    return std::exp(-(re_z - 1.0) * k) * r.value / M_PI;
}

/// Saddlepoint damping for tail inversion: a with K'(a) = x, clamped inside
/// (0, r*). Falls back to a fixed moderate damping when x is at or below the
/// mean.
double saddle_damping(const ModelCgf& m, double x) {
    const double r_star = m.strip().upper;
    const double fallback = std::isfinite(r_star) ? 0.5 * r_star : 1.0;
    double hi;
    if (std::isfinite(r_star)) {
        hi = r_star * (1.0 - 1e-9);
    } else {
        hi = 1.0;
        while (cgf_deriv(m, 1, hi) < x && hi < 1e12) hi *= 2.0;
    }
    const double lo = std::isfinite(r_star) ? 1e-8 * r_star : 1e-8;
    if (!(cgf_deriv(m, 1, lo) < x)) return fallback;
    if (!(cgf_deriv(m, 1, hi) > x)) return hi;
    return bisect([&](double a) { return cgf_deriv(m, 1, a) - x; }, lo, hi, 1e-12, 200);
}

void require_normalized(const ModelCgf& m) {
    if (!(m.strip().upper > 1.0))
        throw DomainViolation(m.name() + ": strip too narrow for pricing (r* <= 1)");
    const double k1 = m.cgf(1.0);
    if (!(std::fabs(k1) <= 1e-8))
        throw InvalidParameter(m.name() + ": not martingale-normalized, K(1) = " + fmt(k1));
}

} // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double bs_call(double k, double total_vol) {
    require_finite(k, "bs_call: k");
    if (!std::isfinite(total_vol) || total_vol < 0.0)
        throw InvalidParameter("bs_call: total volatility must be finite and >= 0");
    const double intrinsic = intrinsic_call(k);
    if (total_vol == 0.0) return intrinsic;
    const double d1 = -k / total_vol + 0.5 * total_vol;
    const double d2 = d1 - total_vol;
    double price;
    if (k > 0.0) {
        price = normal_cdf(d1) - std::exp(k) * normal_cdf(d2);
    } else {
        // Complementary form keeps full relative accuracy deep in the money.
        price = -std::expm1(k) + std::exp(k) * normal_cdf(-d2) - normal_cdf(-d1);
    }
    return std::clamp(price, intrinsic, 1.0);
}

double implied_total_vol(double k, double price) {
    require_finite(k, "implied_total_vol: k");
    require_finite(price, "implied_total_vol: price");
    const double intrinsic = intrinsic_call(k);
    if (!(price > intrinsic))
        throw DomainViolation("implied_total_vol: price " + fmt(price) +
                              " violates the lower arbitrage bound (1 - e^k)^+ = " +
                              fmt(intrinsic));
    if (!(price < 1.0))
        throw DomainViolation("implied_total_vol: price " + fmt(price) +
                              " violates the upper arbitrage bound 1");
    double lo = 1e-12, hi = 1.0;
    while (bs_call(k, hi) < price) {
        hi *= 2.0;
        if (hi > 1024.0)
            throw NumericalFailure("implied_total_vol: bracketing failed at V = " + fmt(hi));
    }
    // Bisect to the floating-point limit; the objective is monotone in V.
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (bs_call(k, mid) < price)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double call_price(const ModelCgf& model, double k, const TransformOptions& opts) {
    require_finite(k, "call_price: k");
    require_normalized(model);
    const AnalyticStrip s = model.strip();
    const double intrinsic = intrinsic_call(k);

    double price;
    if (k >= 0.0) {
        const double alpha = opts.alpha ? *opts.alpha : default_damping(s.upper - 1.0);
        if (!(alpha > 0.0 && alpha < s.upper - 1.0))
            throw InvalidParameter("call_price: damping alpha = " + fmt(alpha) +
                                   " outside (0, r* - 1)");
        price = payoff_transform(model, k, 1.0 + alpha, opts.quad);
    } else {
        const double a = opts.alpha_left ? *opts.alpha_left : default_damping(s.q_star());
        if (!(a > 0.0 && a < s.q_star()))
            throw InvalidParameter("call_price: put damping a = " + fmt(a) + " outside (0, q*)");
        const double put = payoff_transform(model, k, -a, opts.quad);
        price = put - std::expm1(k);
    }
    if (price < intrinsic - 1e-6 || price > 1.0 + 1e-6)
        throw NumericalFailure("call_price: value " + fmt(price) +
                               " breaches the no-arbitrage bounds beyond quadrature slack");
    return std::clamp(price, intrinsic, 1.0);
}

double survival(const ModelCgf& model, double x, const TransformOptions& opts) {
    require_finite(x, "survival: x");
    const double r_star = model.strip().upper;
    const double a = opts.survival_damping
                         ? *opts.survival_damping
                         : (std::isfinite(r_star) ? 0.5 * r_star : saddle_damping(model, x));
    if (!(a > 0.0 && a < r_star))
        throw InvalidParameter("survival: damping a = " + fmt(a) + " outside (0, r*)");
    auto integrand = [&](double u) {
        const cd z(a, u);
        return (std::exp(model.cgf(z) - cd(0.0, u * x)) / z).real();
    };
    auto envelope = [&](double u) { return std::exp(model.cgf(cd(a, u)).real()) / u; };
    const QuadratureResult r =
        integrate_semi_infinite(integrand, envelope, 32.0, opts.quad, std::fabs(x));
    const double f_bar = std::exp(-a * x) * r.value / M_PI;
    if (f_bar < -1e-6 || f_bar > 1.0 + 1e-6)
        throw NumericalFailure("survival: value " + fmt(f_bar) + " outside [0, 1] beyond slack");
    return std::clamp(f_bar, 0.0, 1.0);
}

double distribution(const ModelCgf& model, double y, const TransformOptions& opts) {
    return survival(reflect(model), -y, opts);
}

double neg_log_survival(const ModelCgf& model, double x, const TransformOptions& opts) {
    require_finite(x, "neg_log_survival: x");
    const double a = opts.survival_damping ? *opts.survival_damping : saddle_damping(model, x);
    const double r_star = model.strip().upper;
    if (!(a > 0.0 && a < r_star))
        throw InvalidParameter("neg_log_survival: damping a = " + fmt(a) + " outside (0, r*)");
    const double k_a = model.cgf(a);
    const double k2 = std::max(cgf_deriv(model, 2, a), 1e-300);
    const double scale0 = 1.0 / ((1.0 + a) * std::sqrt(2.0 * M_PI * k2));

    QuadratureOptions quad = opts.quad;
    quad.abs_tol = std::max(1e-280, 1e-10 * scale0);
    quad.rel_tol = 1e-9;
    quad.envelope_tol = std::max(1e-280, 1e-13 * scale0);

    auto integrand = [&](double u) {
        const cd z(a, u);
        return (std::exp(model.cgf(z) - k_a - cd(0.0, u * x)) / z).real();
    };
    auto envelope = [&](double u) {
        return std::exp(model.cgf(cd(a, u)).real() - k_a) / u;
    };
    const QuadratureResult r = integrate_semi_infinite(integrand, envelope, 32.0, quad,
                                                       std::fabs(x));
    const double i_hat = r.value / M_PI;
    if (!(i_hat > 0.0))
        throw NumericalFailure("neg_log_survival: scaled inversion integral " + fmt(i_hat) +
                               " is not positive at x = " + fmt(x));
    return a * x - k_a - std::log(i_hat);
}

double neg_log_distribution(const ModelCgf& model, double x, const TransformOptions& opts) {
    return neg_log_survival(reflect(model), x, opts);
}

std::vector<double> Grid::points() const {
    if (count < 2 || !(min < max) || !std::isfinite(min) || !std::isfinite(max))
        throw InvalidParameter("grid: requires finite min < max and count >= 2");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

SmileCurve smile_curve(const ModelCgf& model, double maturity, const Grid& k_grid,
                       const TransformOptions& opts) {
    require_normalized(model);
    SmileCurve curve;
    curve.maturity = maturity;
    for (double k : k_grid.points()) {
        try {
            const double price = call_price(model, k, opts);
            const double intrinsic = intrinsic_call(k);
            if (price < 1e-14) {
                curve.dropped.push_back({k, "price below 1e-14"});
                continue;
            }
            if (price - intrinsic < 1e-14) {
                curve.dropped.push_back({k, "price within 1e-14 of the intrinsic bound"});
                continue;
            }
            if (1.0 - price < 1e-14) {
                curve.dropped.push_back({k, "price within 1e-14 of the upper bound"});
                continue;
            }
            const double v = implied_total_vol(k, price);
            curve.points.push_back({k, v * v});
        } catch (const Error& e) {
            curve.dropped.push_back({k, e.what()});
        }
    }
    return curve;
}

TailCurve tail_slope_curve(const ModelCgf& model, const Grid& x_grid, TailSide side,
                           const TransformOptions& opts) {
    TailCurve curve;
    curve.side = side;
    const ModelCgf target = side == TailSide::Left ? reflect(model) : model;
    for (double x : x_grid.points()) {
        if (!(x > 0.0)) {
            curve.dropped.push_back({x, "x must be positive"});
            continue;
        }
        try {
            const double nls = neg_log_survival(target, x, opts);
            if (!(nls > 0.0)) {
                curve.dropped.push_back({x, "-log Fbar not positive"});
                continue;
            }
            curve.points.push_back({x, nls / x});
        } catch (const Error& e) {
            curve.dropped.push_back({x, e.what()});
        }
    }
    return curve;
}

WingFit wing_fit(const std::vector<std::pair<double, double>>& points, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw InvalidParameter("wing_fit: fraction must be in (0, 1)");
    if (points.size() < 4) throw InvalidParameter("wing_fit: need at least 4 points");
    std::vector<std::pair<double, double>> pts = points;
    std::sort(pts.begin(), pts.end());
    const double x_min = pts.front().first, x_max = pts.back().first;
    const double threshold = x_max - fraction * (x_max - x_min) - 1e-12 * (x_max - x_min);

    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const auto& [x, y] : pts)
        if (x >= threshold) {
            sx += x;
            sy += y;
            ++n;
        }
    if (n < 4)
        throw InvalidParameter("wing_fit: only " + std::to_string(n) +
                               " points in the top-fraction window, need >= 4");
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts)
        if (x >= threshold) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
    WingFit fit;
    fit.fitted_slope = sxy / sxx;
    fit.intercept = my - fit.fitted_slope * mx;
    double ssr = 0.0;
    double w_lo = x_max;
    for (const auto& [x, y] : pts)
        if (x >= threshold) {
            const double r = y - (fit.intercept + fit.fitted_slope * x);
            ssr += r * r;
            w_lo = std::min(w_lo, x);
        }
    fit.rms_residual = std::sqrt(ssr / static_cast<double>(n));
    fit.window = {w_lo, x_max};
    return fit;
}

WingFit wing_fit(const SmileCurve& curve, double fraction) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.points.size());
    for (const auto& p : curve.points) pts.emplace_back(p.k, p.total_variance);
    return wing_fit(pts, fraction);
}

WingFit wing_fit(const TailCurve& curve, double fraction) {
    // Fit -log Fbar(x) = ratio * x against x; the slope estimates the
    // critical exponent.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.points.size());
    for (const auto& p : curve.points) pts.emplace_back(p.x, p.ratio * p.x);
    return wing_fit(pts, fraction);
}

std::vector<std::pair<double, double>> left_wing_points(const SmileCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curve.points)
        if (p.k <= 0.0) pts.emplace_back(-p.k, p.total_variance);
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<std::pair<double, double>> right_wing_points(const SmileCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curve.points)
        if (p.k >= 0.0) pts.emplace_back(p.k, p.total_variance);
    std::sort(pts.begin(), pts.end());
    return pts;
}

} // namespace smilewing
