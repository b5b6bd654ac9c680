#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smilewing/model_cgf.hpp"
#include "smilewing/quadrature.hpp"

namespace smilewing {

/// Standard normal CDF via the complementary error function, accurate in
/// relative terms deep into the tails.
double normal_cdf(double z);

/// Normalized Black-Scholes call: c(k, V) = Phi(d1) - e^k Phi(d2) with
/// d_{1,2} = -k/V +- V/2 and V the total volatility sigma * sqrt(t).
/// V = 0 returns the intrinsic value (1 - e^k)^+.
double bs_call(double k, double total_vol);

/// Unique V with bs_call(k, V) = price. Requires
/// (1 - e^k)^+ < price < 1; throws DomainViolation naming the violated
/// arbitrage bound otherwise.
double implied_total_vol(double k, double price);

/// Damping and quadrature knobs for the transform layer.
struct TransformOptions {
    std::optional<double> alpha;        ///< call damping; default from the strip
    std::optional<double> alpha_left;   ///< put-side damping for k < 0
    std::optional<double> survival_damping; ///< default 0.5 r*
    QuadratureOptions quad;
};

/// Call price from the damped Fourier representation
///   c(k) = e^{-alpha k}/pi * Int_0^inf Re[e^{-iuk} M(1+alpha+iu)
///           / ((alpha+iu)(1+alpha+iu))] du,  alpha in (0, r*-1).
/// The model must be martingale-normalized (K(1) = 0) with r* > 1.
/// Strikes k < 0 are priced through the put side plus parity.
double call_price(const ModelCgf& model, double k, const TransformOptions& opts = {});

/// Survival probability Fbar(x) = P(X > x) by damped inversion,
///   Fbar(x) = e^{-a x}/pi * Int_0^inf Re[e^{-iux} M(a+iu)/(a+iu)] du,
/// with damping a in (0, r*). Clamped into [0, 1] within quadrature slack.
double survival(const ModelCgf& model, double x, const TransformOptions& opts = {});

/// Left-tail analogue: P(X <= y), evaluated as the survival of -X at -y.
double distribution(const ModelCgf& model, double y, const TransformOptions& opts = {});

/// -log Fbar(x), computed on a saddlepoint-damped contour so that deep
/// tails are recovered at O(1) relative accuracy even where Fbar(x)
/// underflows. Used by the tail curves.
double neg_log_survival(const ModelCgf& model, double x, const TransformOptions& opts = {});

/// Left-tail analogue: -log F(-x).
double neg_log_distribution(const ModelCgf& model, double x, const TransformOptions& opts = {});

/// Uniform grid, min < max, count >= 2.
struct Grid {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    [[nodiscard]] std::vector<double> points() const;
};

struct SmilePoint {
    double k;
    double total_variance; ///< V^2(k, t)
};

struct DroppedPoint {
    double coordinate;
    std::string reason;
};

/// Total implied variance against log-strike at one maturity. Points where
/// the price hits its numerical bounds are dropped and reported, not fatal.
struct SmileCurve {
    double maturity = 0.0;
    std::vector<SmilePoint> points;
    std::vector<DroppedPoint> dropped;
};

enum class TailSide { Right, Left };

struct TailPoint {
    double x;
    double ratio; ///< -log Fbar(x)/x (right) or -log F(-x)/x (left)
};

struct TailCurve {
    TailSide side = TailSide::Right;
    std::vector<TailPoint> points;
    std::vector<DroppedPoint> dropped;
};

SmileCurve smile_curve(const ModelCgf& model, double maturity, const Grid& k_grid,
                       const TransformOptions& opts = {});

TailCurve tail_slope_curve(const ModelCgf& model, const Grid& x_grid, TailSide side,
                           const TransformOptions& opts = {});

/// Least-squares line through the top fraction of the coordinate range.
struct WingFit {
    double fitted_slope = 0.0;
    double intercept = 0.0;
    std::pair<double, double> window{0.0, 0.0}; ///< (k_lo, k_hi) actually fitted
    double rms_residual = 0.0;
};

/// Fits y against x over the points whose x lies in the top `fraction` of
/// the full x range. Requires at least 4 points in the window.
WingFit wing_fit(const std::vector<std::pair<double, double>>& points, double fraction);

WingFit wing_fit(const SmileCurve& curve, double fraction);
WingFit wing_fit(const TailCurve& curve, double fraction);

/// Right-wing points (k, V^2) of a smile reflected for left-wing fitting:
/// (k, V^2) -> (-k, V^2) over k <= 0, sorted ascending.
std::vector<std::pair<double, double>> left_wing_points(const SmileCurve& curve);
std::vector<std::pair<double, double>> right_wing_points(const SmileCurve& curve);

} // namespace smilewing
