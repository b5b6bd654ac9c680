#include "smilewing/levy_models.hpp"

#include <cmath>
#include <sstream>

#include "smilewing/errors.hpp"

namespace smilewing {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

ModelCgf make_vg(const VgParams& p) {
    if (!(p.m > 0.0)) throw InvalidParameter("vg: requires m > 0");
    if (!(p.g > 0.0)) throw InvalidParameter("vg: requires g > 0");
    if (!(p.c > 0.0)) throw InvalidParameter("vg: requires C > 0");
    const double m = p.m, g = p.g, c = p.c;
    const double log_gm = std::log(g * m);
    const std::string name = "vg(m=" + fmt(m) + ",g=" + fmt(g) + ",C=" + fmt(c) + ")";

    auto eval = [m, g, c, log_gm](cd u) {
        // K(u) = C log(gm / ((m - u)(u + g))); both factors stay in the
        // right half-plane for Re(u) in (-g, m).
        return c * (log_gm - std::log(m - u) - std::log(u + g));
    };
    auto derivs = [m, g, c](int order, double v) {
        const double am = m - v, ag = v + g;
        switch (order) {
        case 1: return c * (1.0 / am - 1.0 / ag);
        case 2: return c * (1.0 / (am * am) + 1.0 / (ag * ag));
        case 3: return c * (2.0 / (am * am * am) - 2.0 / (ag * ag * ag));
        default: return c * (6.0 / (am * am * am * am) + 6.0 / (ag * ag * ag * ag));
        }
    };
    return ModelCgf::make(name, AnalyticStrip{-g, m}, CriterionClass::type1(0, c), eval, kInf,
                          kInf, derivs);
}

ModelCgf make_nig(const NigParams& p) {
    if (!(p.alpha > 0.0)) throw InvalidParameter("nig: requires alpha > 0");
    if (!(std::fabs(p.beta) < p.alpha)) throw InvalidParameter("nig: requires |beta| < alpha");
    if (!(p.delta > 0.0)) throw InvalidParameter("nig: requires delta > 0");
    if (!std::isfinite(p.mu)) throw InvalidParameter("nig: requires finite mu");
    const double a = p.alpha, b = p.beta, mu = p.mu, d = p.delta;
    const double gamma0 = std::sqrt(a * a - b * b);
    const std::string name = "nig(alpha=" + fmt(a) + ",beta=" + fmt(b) + ",mu=" + fmt(mu) +
                             ",delta=" + fmt(d) + ")";

    auto eval = [a, b, mu, d, gamma0, name](cd u) {
        const cd w = b + u;
        const cd z = a * a - w * w;
        // Principal square root; for Re(u) strictly inside the strip z has a
        // positive real part, so the branch cut is never touched.
        if (z.real() <= 0.0 && std::fabs(z.imag()) <= 1e-14 * std::fabs(z.real()))
            throw DomainViolation(name + ": sqrt argument on the branch cut at u = (" +
                                  fmt(u.real()) + ", " + fmt(u.imag()) + ")");
        return d * (gamma0 - std::sqrt(z)) + mu * u;
    };
    auto derivs = [a, b, mu, d](int order, double v) {
        const double w = b + v;
        const double r = a * a - w * w;
        const double sr = std::sqrt(r);
        switch (order) {
        case 1: return d * w / sr + mu;
        case 2: return d * a * a / (r * sr);
        case 3: return 3.0 * d * a * a * w / (r * r * sr);
        default: return 3.0 * d * a * a * (a * a + 4.0 * w * w) / (r * r * r * sr);
        }
    };
    const double right_end = a - b, left_end = a + b;
    return ModelCgf::make(name, AnalyticStrip{-left_end, right_end},
                          CriterionClass::type1(1, 0.5), eval,
                          d * gamma0 - mu * left_end, d * gamma0 + mu * right_end, derivs);
}

ModelCgf make_de(const DeParams& p_in) {
    DeParams p = p_in;
    if (!(p.sigma >= 0.0)) throw InvalidParameter("de: requires sigma >= 0");
    if (!std::isfinite(p.mu)) throw InvalidParameter("de: requires finite mu");
    if (!(p.lambda > 0.0)) throw InvalidParameter("de: requires lambda > 0");
    if (!(p.p >= 0.0 && p.p <= 1.0)) throw InvalidParameter("de: requires p in [0, 1]");
    if (std::isnan(p.q)) p.q = 1.0 - p.p;
    if (std::fabs(p.p + p.q - 1.0) > 1e-12) throw InvalidParameter("de: requires q = 1 - p");
    if (!(p.eta1 > 1.0)) throw InvalidParameter("de: requires eta1 > 1 so that E[e^X] is finite");
    if (!(p.eta2 > 0.0)) throw InvalidParameter("de: requires eta2 > 0");

    const double sg = p.sigma, mu = p.mu, lam = p.lambda, pp = p.p, q = p.q, e1 = p.eta1,
                 e2 = p.eta2;
    const std::string name = "de(sigma=" + fmt(sg) + ",mu=" + fmt(mu) + ",lambda=" + fmt(lam) +
                             ",p=" + fmt(pp) + ",eta1=" + fmt(e1) + ",eta2=" + fmt(e2) + ")";

    auto eval = [sg, mu, lam, pp, q, e1, e2](cd u) {
        return 0.5 * sg * sg * u * u + mu * u +
               lam * (pp * e1 / (e1 - u) + q * e2 / (e2 + u) - 1.0);
    };
    auto derivs = [sg, mu, lam, pp, q, e1, e2](int order, double v) {
        const double a1 = e1 - v, a2 = e2 + v;
        auto ipow = [](double x, int n) {
            double r = x;
            for (int i = 1; i < n; ++i) r *= x;
            return r;
        };
        switch (order) {
        case 1: return sg * sg * v + mu + lam * (pp * e1 / (a1 * a1) - q * e2 / (a2 * a2));
        case 2: return sg * sg + lam * (2.0 * pp * e1 / ipow(a1, 3) + 2.0 * q * e2 / ipow(a2, 3));
        case 3: return lam * (6.0 * pp * e1 / ipow(a1, 4) - 6.0 * q * e2 / ipow(a2, 4));
        default: return lam * (24.0 * pp * e1 / ipow(a1, 5) + 24.0 * q * e2 / ipow(a2, 5));
        }
    };
    const double upper = pp > 0.0 ? e1 : kInf;
    const double lower = q > 0.0 ? -e2 : -kInf;
    const CriterionClass crit =
        pp > 0.0 ? CriterionClass::type2(1.0) : CriterionClass::no_blowup();
    return ModelCgf::make(name, AnalyticStrip{lower, upper}, crit, eval, kInf, kInf, derivs);
}

ModelCgf make_bm_drift() {
    auto eval = [](cd u) { return 0.5 * (u * u - u); };
    auto derivs = [](int order, double v) {
        switch (order) {
        case 1: return v - 0.5;
        case 2: return 1.0;
        default: return 0.0;
        }
    };
    return ModelCgf::make("bm_drift", AnalyticStrip{-kInf, kInf}, CriterionClass::no_blowup(),
                          eval, kInf, kInf, derivs);
}

} // namespace smilewing
