#pragma once

#include <complex>
#include <optional>
#include <string>

#include "smilewing/clocks.hpp"
#include "smilewing/model_cgf.hpp"

namespace smilewing {

/// Where the critical moment of a time-changed model comes from.
/// InteriorRoot: the unique p with K_L(p) = p_T strictly inside the base
/// strip (clock-driven explosion). BoundaryRoot: the crossing sits exactly
/// at the base strip endpoint. LevyDominates: K_L never reaches p_T and the
/// base strip endpoint is the critical moment.
struct TcltCase {
    enum class Kind { InteriorRoot, BoundaryRoot, LevyDominates };
    Kind kind;
    double p; ///< critical moment, > 0 (may be +infinity when nothing explodes)
};

std::string to_string(const TcltCase& c);

/// Solves the right-tail case analysis for base cgf K_L under clock K_T at
/// horizon t. Throws NumericalFailure when the base strip is unbounded and
/// the crossing is not found within the search cap.
TcltCase right_critical_moment(const ModelCgf& base, const ClockCgf& clock, double t);

/// Same case analysis on the negative axis: the returned p is q > 0 with
/// K_L(-q) = p_T (or the left strip endpoint magnitude).
TcltCase left_critical_moment(const ModelCgf& base, const ClockCgf& clock, double t);

/// Analytic continuation of the clock cgf to complex arguments with
/// Re(w) < p_T(t), with branch handling isolated here.
std::complex<double> clock_cgf_analytic(const ClockCgf& clock, std::complex<double> w, double t);

/// A base Levy model run on an independent random clock:
/// K(v; t) = K_T(K_L(v); t). The derived strip is (-left.p, right.p).
struct ComposedModel {
    ModelCgf base;
    ClockCgf clock;
    double horizon = 0.0;
    ModelCgf model; ///< composed cgf at the horizon
    TcltCase right_case{TcltCase::Kind::LevyDominates, 0.0};
    TcltCase left_case{TcltCase::Kind::LevyDominates, 0.0};
};

ComposedModel compose(const ModelCgf& base, const ClockCgf& clock, double t);

/// Heston stochastic volatility: dS/S = sqrt(v) dW1,
/// dv = kappa(eta - v)dt + theta sqrt(v) dW2, d<W1,W2> = rho dt.
struct HestonParams {
    double kappa; ///< mean reversion, > 0
    double eta;   ///< long-run variance, > 0
    double theta; ///< vol-of-vol, > 0
    double rho;   ///< correlation, in [-1, 1]
    double v0;    ///< initial variance, > 0
};

/// Cgf of log S_t / S_0 at horizon t. Martingale by construction
/// (value 0 at u = 1). Requires Re(u) strictly inside the moment-explosion
/// strip at horizon t. Branch-tracked complex logarithm throughout.
std::complex<double> heston_cgf(const HestonParams& p, double t, std::complex<double> u);

/// Smallest v > 1 at which the Heston mgf explodes at horizon t: the first
/// root of (kappa - rho v theta) + sqrt(D(v)) cot(sqrt(D(v)) t/2) = 0 with
/// D(v) = theta^2 (v^2 - v) - (kappa - rho v theta)^2, bracketed on the
/// first branch of the cotangent. Returns +infinity when the equation has
/// no root (the mgf never explodes on the right).
double heston_critical_moment(const HestonParams& p, double t);

/// Left-side analogue: the smallest q > 0 such that the mgf explodes at -q.
double heston_critical_moment_left(const HestonParams& p, double t);

/// Heston packaged as a ModelCgf with the strip computed at horizon t.
struct HestonModel {
    HestonParams params;
    double horizon = 0.0;
    ModelCgf model;
};

HestonModel make_heston(const HestonParams& p, double t);

/// Critical exponents, classification and predicted wing slopes of a model.
struct WingReport {
    double q_star = 0.0;
    double r_star = 0.0;
    CriterionClass criterion;
    std::optional<TcltCase> right_case; ///< present for composed models
    std::optional<TcltCase> left_case;
    bool right_applicable = false; ///< r* > 1 required for the right wing
    double right_slope = 0.0;      ///< psi(r* - 1) when applicable
    bool left_applicable = false;  ///< q* > 0 required for the left wing
    double left_slope = 0.0;       ///< psi(q*)
};

WingReport wing_report(const ModelCgf& model);
WingReport wing_report(const ComposedModel& composed);
WingReport wing_report(const HestonModel& heston);

} // namespace smilewing
