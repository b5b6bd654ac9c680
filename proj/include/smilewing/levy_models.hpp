#pragma once

#include "smilewing/model_cgf.hpp"

namespace smilewing {

/// Variance Gamma: M(s) = (gm / ((m - s)(s + g)))^C, strip (-g, m).
struct VgParams {
    double m; ///< right critical exponent, > 0
    double g; ///< left critical exponent, > 0
    double c; ///< gamma-time shape, > 0
};

/// Normal Inverse Gaussian:
/// K(s) = delta * (sqrt(alpha^2 - beta^2) - sqrt(alpha^2 - (beta+s)^2)) + mu s,
/// strip (-(alpha+beta), alpha-beta).
struct NigParams {
    double alpha;     ///< tail steepness, > 0
    double beta;      ///< asymmetry, |beta| < alpha
    double mu = 0.0;  ///< location
    double delta;     ///< scale, > 0
};

/// Kou double exponential jump diffusion:
/// log M(s) = sigma^2 s^2 / 2 + mu s
///          + lambda (p eta1/(eta1 - s) + q eta2/(eta2 + s) - 1),
/// strip (-eta2, eta1). q defaults to 1 - p when NaN.
struct DeParams {
    double sigma;  ///< diffusion volatility, >= 0
    double mu;     ///< drift
    double lambda; ///< jump intensity, > 0
    double p;      ///< up-jump probability, in [0, 1]
    double q = std::numeric_limits<double>::quiet_NaN(); ///< down-jump probability, 1 - p
    double eta1;   ///< up-jump rate, > 1 (so that E[e^X] is finite)
    double eta2;   ///< down-jump rate, > 0
};

ModelCgf make_vg(const VgParams& p);
ModelCgf make_nig(const NigParams& p);
ModelCgf make_de(const DeParams& p);

/// Brownian motion with drift -1/2 at unit time: K(v) = (v^2 - v)/2.
/// The strip is the whole line; no finite critical point.
ModelCgf make_bm_drift();

} // namespace smilewing
