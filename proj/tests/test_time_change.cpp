#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "smilewing/asymptotics.hpp"
#include "smilewing/errors.hpp"
#include "smilewing/levy_models.hpp"
#include "smilewing/time_change.hpp"

using namespace smilewing;
using cd = std::complex<double>;

namespace {

const VgParams kVg{11.0, 9.0, 7.0};
const GammaOuParams kGou{1.68, 0.5, 4.0, 1.0};
const NigParams kNig{6.0, -2.0, 0.0, 0.5};
const CirParams kCirWide{1.2, 1.0, 0.8, 1.0};   // p_T ~ 12 > sup K_L of kNig
const CirParams kCirTight{0.5, 0.3, 2.0, 0.5};  // p_T ~ 1.5 < sup K_L of kNig

double vg_closed_form_p(double m, double g, double c, double lambda, double b, double t) {
    const double pt = lambda * b / (1.0 - std::exp(-lambda * t));
    const double q = 4.0 * g * m * (1.0 - std::exp(-pt / c));
    return 0.5 * (m - g + std::sqrt((m - g) * (m - g) + q));
}

double vg_closed_form_q(double m, double g, double c, double lambda, double b, double t) {
    const double pt = lambda * b / (1.0 - std::exp(-lambda * t));
    const double q = 4.0 * g * m * (1.0 - std::exp(-pt / c));
    return 0.5 * (g - m + std::sqrt((g - m) * (g - m) + q));
}

} // namespace

TEST_CASE("compose with the unit deterministic clock reproduces t K_L") {
    const ModelCgf base = make_vg(kVg);
    for (double t : {0.4, 1.0, 1.7}) {
        const ComposedModel cm = compose(base, make_deterministic(1.0), t);
        for (double v : {-5.0, -1.0, 0.0, 2.0, 8.0})
            CHECK(cm.model.cgf(v) == doctest::Approx(t * base.cgf(v)).epsilon(1e-13));
        CHECK(cm.right_case.kind == TcltCase::Kind::LevyDominates);
        CHECK(cm.right_case.p == doctest::Approx(11.0));
        CHECK(cm.model.criterion().kind == CriterionClass::Kind::TypeI);
        // Complex arguments too.
        const cd u(3.0, 7.0);
        const cd k = cm.model.cgf(u);
        const cd expected = t * base.cgf(u);
        CHECK(k.real() == doctest::Approx(expected.real()).epsilon(1e-13));
        CHECK(k.imag() == doctest::Approx(expected.imag()).epsilon(1e-13));
    }
}

TEST_CASE("VG on gamma-OU: solver p equals the closed form") {
    const ModelCgf base = make_vg(kVg);
    const ClockCgf clock = make_gamma_ou(kGou);
    for (double t : {0.4, 0.9, 1.3}) {
        const TcltCase right = right_critical_moment(base, clock, t);
        REQUIRE(right.kind == TcltCase::Kind::InteriorRoot);
        const double closed = vg_closed_form_p(11.0, 9.0, 7.0, 1.68, 4.0, t);
        CHECK(std::fabs(right.p - closed) < 1e-10);

        const TcltCase left = left_critical_moment(base, clock, t);
        REQUIRE(left.kind == TcltCase::Kind::InteriorRoot);
        const double closed_q = vg_closed_form_q(11.0, 9.0, 7.0, 1.68, 4.0, t);
        CHECK(std::fabs(left.p - closed_q) < 1e-10);

        // Root residual.
        const double pt = clock.explosion_point(t);
        CHECK(std::fabs(base.cgf(right.p) - pt) < 1e-10 * (1.0 + pt));
    }
}

TEST_CASE("BM-drift on CIR: quadratic closed forms for both wings") {
    const ModelCgf bm = make_bm_drift();
    const ClockCgf cir = make_cir(kCirWide);
    for (double t : {0.4, 0.9, 1.3}) {
        const double pt = cir.explosion_point(t);
        const TcltCase right = right_critical_moment(bm, cir, t);
        REQUIRE(right.kind == TcltCase::Kind::InteriorRoot);
        CHECK(right.p == doctest::Approx(0.5 * (1.0 + std::sqrt(1.0 + 8.0 * pt))).epsilon(1e-12));

        const TcltCase left = left_critical_moment(bm, cir, t);
        REQUIRE(left.kind == TcltCase::Kind::InteriorRoot);
        CHECK(left.p == doctest::Approx(0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * pt))).epsilon(1e-12));
    }
}

TEST_CASE("NIG on CIR: both branches of the sup condition") {
    const ModelCgf nig = make_nig(kNig);
    const double sup_kl = nig.boundary_value_right();
    REQUIRE(sup_kl == doctest::Approx(0.5 * std::sqrt(32.0)));

    const ClockCgf wide = make_cir(kCirWide);
    REQUIRE(wide.explosion_point(1.0) > sup_kl);
    const TcltCase dominated = right_critical_moment(nig, wide, 1.0);
    CHECK(dominated.kind == TcltCase::Kind::LevyDominates);
    CHECK(dominated.p == doctest::Approx(8.0)); // alpha - beta

    const ClockCgf tight = make_cir(kCirTight);
    REQUIRE(tight.explosion_point(1.0) < sup_kl);
    const TcltCase interior = right_critical_moment(nig, tight, 1.0);
    CHECK(interior.kind == TcltCase::Kind::InteriorRoot);
    CHECK(interior.p < 8.0);
    CHECK(nig.cgf(interior.p) == doctest::Approx(tight.explosion_point(1.0)).epsilon(1e-10));

    // Composed classification: clock-driven -> type II; Levy-driven -> the
    // NIG type I with n = 1.
    const ComposedModel cm_dom = compose(nig, wide, 1.0);
    CHECK(cm_dom.model.criterion().kind == CriterionClass::Kind::TypeI);
    CHECK(cm_dom.model.criterion().derivative_order == 1);
    const ComposedModel cm_int = compose(nig, tight, 1.0);
    CHECK(cm_int.model.criterion().kind == CriterionClass::Kind::TypeII);
}

TEST_CASE("symmetric base: left and right critical moments coincide") {
    const ModelCgf nig0 = make_nig({5.0, 0.0, 0.0, 0.7});
    const ClockCgf clock = make_cir(kCirTight);
    const TcltCase right = right_critical_moment(nig0, clock, 0.9);
    const TcltCase left = left_critical_moment(nig0, clock, 0.9);
    CHECK(right.kind == left.kind);
    CHECK(right.p == doctest::Approx(left.p).epsilon(1e-14));
}

TEST_CASE("boundary-root case detected within tolerance") {
    const ClockCgf clock = make_cir(kCirWide);
    const double pt = clock.explosion_point(1.0);
    // Synthetic base whose sup K_L equals p_T to within 1e-9 relative.
    auto eval = [pt](cd u) { return pt * u * u; };
    const ModelCgf base = ModelCgf::make("synthetic", AnalyticStrip{-1.0, 1.0},
                                         CriterionClass::type1(1, 0.5), eval,
                                         pt * (1.0 + 0.5e-9), pt * (1.0 + 0.5e-9));
    const TcltCase c = right_critical_moment(base, clock, 1.0);
    CHECK(c.kind == TcltCase::Kind::BoundaryRoot);
    CHECK(c.p == doctest::Approx(1.0));
}

TEST_CASE("uniqueness: interior crossings change sign exactly once") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int found = 0;
    while (found < 50) {
        const double m = 2.0 + 10.0 * uni(rng);
        const double g = 1.0 + 9.0 * uni(rng);
        const double c = 0.5 + 7.5 * uni(rng);
        const ModelCgf base = make_vg({m, g, c});
        ClockCgf clock = (uni(rng) < 0.5)
                             ? make_gamma_ou({0.5 + 2.5 * uni(rng), 0.1 + 0.9 * uni(rng),
                                              0.5 + 11.5 * uni(rng), 0.3 + 1.7 * uni(rng)})
                             : make_cir({2.0 * uni(rng), 0.1 + 0.9 * uni(rng),
                                         0.3 + 1.7 * uni(rng), 0.3 + 1.7 * uni(rng)});
        const double t = 0.3 + 1.7 * uni(rng);
        const TcltCase right = right_critical_moment(base, clock, t);
        if (right.kind != TcltCase::Kind::InteriorRoot) continue;
        // Roots the scan grid cannot resolve from the endpoint are excluded.
        if (m - right.p <= 1e-8 * m) continue;
        ++found;

        const double pt = clock.explosion_point(t);
        const double hi = m * (1.0 - 1e-9);
        int sign_changes = 0;
        double prev = base.cgf(hi / 2000.0) - pt;
        for (int i = 2; i <= 2000; ++i) {
            const double cur = base.cgf(hi * i / 2000.0) - pt;
            if (std::signbit(cur) != std::signbit(prev)) ++sign_changes;
            prev = cur;
        }
        CHECK(sign_changes == 1);
        // Residual check is meaningful only when the root is resolvable away
        // from the strip endpoint (the solver clamps roots hugging it).
        if (m - right.p > 1e-11 * m)
            CHECK(std::fabs(base.cgf(right.p) - pt) < 1e-10 * (1.0 + pt));
    }
}

TEST_CASE("heston cgf: martingale anchors") {
    const HestonParams hp{1.15, 0.04, 0.39, -0.64, 0.04};
    for (double t : {0.4, 0.9, 1.3}) {
        CHECK(std::abs(heston_cgf(hp, t, cd(0.0, 0.0))) < 1e-13);
        CHECK(std::abs(heston_cgf(hp, t, cd(1.0, 0.0))) < 1e-13);
        // Conjugate symmetry off the axis.
        const cd k1 = heston_cgf(hp, t, cd(0.5, 3.0));
        const cd k2 = heston_cgf(hp, t, cd(0.5, -3.0));
        CHECK(k1.real() == doctest::Approx(k2.real()).epsilon(1e-12));
        CHECK(k1.imag() == doctest::Approx(-k2.imag()).epsilon(1e-12));
    }
}

TEST_CASE("heston at rho = 0 equals BM-drift composed on the matching CIR clock") {
    const HestonParams hp{1.2, 0.04, 0.5, 0.0, 0.035};
    const ClockCgf cir = make_cir({1.2, 0.04, 0.5, 0.035});
    const ModelCgf bm = make_bm_drift();
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    for (double t : {0.4, 0.9, 1.3}) {
        const ComposedModel cm = compose(bm, cir, t);
        const double r_star = cm.right_case.p;
        const double q_star = cm.left_case.p;
        // Critical moments agree to 1e-8.
        CHECK(std::fabs(heston_critical_moment(hp, t) - r_star) < 1e-8);
        CHECK(std::fabs(heston_critical_moment_left(hp, t) - q_star) < 1e-8);

        // 50 real points through both formula families.
        for (int i = 0; i < 50; ++i) {
            const double v = -0.9 * q_star + (0.9 * q_star + 0.9 * r_star) * (i + 0.5) / 50.0;
            const double kh = heston_cgf(hp, t, cd(v, 0.0)).real();
            const double kc = cm.model.cgf(v);
            CHECK(std::fabs(kh - kc) < 1e-9 * (1.0 + std::fabs(kc)));
        }
        // And 50 complex points along pricing-style contours.
        int checked = 0;
        while (checked < 50) {
            const double re = -0.9 * q_star + (0.9 * q_star + 0.9 * r_star) * uni(rng);
            const double im = -40.0 + 80.0 * uni(rng);
            const cd u(re, im);
            const cd kh = heston_cgf(hp, t, u);
            const cd kc = cm.model.cgf(u);
            CHECK(std::abs(kh - kc) < 1e-9 * (1.0 + std::abs(kc)));
            ++checked;
        }
    }
}

TEST_CASE("heston critical moment grows as the horizon shrinks") {
    const HestonParams hp{1.15, 0.04, 0.39, -0.64, 0.04};
    const double v_long = heston_critical_moment(hp, 1.0);
    const double v_short = heston_critical_moment(hp, 0.5);
    CHECK(std::isfinite(v_long));
    CHECK(v_long > 1.0);
    CHECK(v_short > v_long);
}

TEST_CASE("heston with negative correlation has a finite right critical moment") {
    const HestonParams hp{1.15, 0.04, 0.39, -0.64, 0.04};
    const double v = heston_critical_moment(hp, 1.0);
    CHECK(std::isfinite(v));
    CHECK(v > 1.0);
    // Perfect anti-correlation removes the right explosion entirely.
    const HestonParams extreme{1.15, 0.04, 0.39, -1.0, 0.04};
    CHECK(std::isinf(heston_critical_moment(extreme, 1.0)));
}

TEST_CASE("make_heston packages strip and criterion") {
    const HestonParams hp{1.15, 0.04, 0.39, -0.64, 0.04};
    const HestonModel hm = make_heston(hp, 0.9);
    CHECK(hm.model.strip().upper == doctest::Approx(heston_critical_moment(hp, 0.9)));
    CHECK(hm.model.strip().lower ==
          doctest::Approx(-heston_critical_moment_left(hp, 0.9)));
    CHECK(hm.model.criterion().kind == CriterionClass::Kind::TypeII);
    CHECK(std::fabs(hm.model.cgf(1.0)) < 1e-12);
}

TEST_CASE("wing_report: plain models") {
    const WingReport de = wing_report(make_de({0.2, 0.0, 1.0, 0.4,
                                               std::numeric_limits<double>::quiet_NaN(),
                                               10.0, 5.0}));
    CHECK(de.right_applicable);
    CHECK(de.right_slope == doctest::Approx(psi(9.0).value));
    CHECK(de.left_applicable);
    CHECK(de.left_slope == doctest::Approx(psi(5.0).value));

    const WingReport bm = wing_report(make_bm_drift());
    CHECK(bm.right_applicable);
    CHECK(bm.right_slope == 0.0);
    CHECK(bm.left_slope == 0.0);

    const WingReport narrow = wing_report(make_vg({0.8, 8.0, 1.5}));
    CHECK_FALSE(narrow.right_applicable);
    CHECK(narrow.left_applicable);
}

TEST_CASE("wing_report: composed slopes chain through the critical moments") {
    const ComposedModel cm = compose(make_vg(kVg), make_gamma_ou(kGou), 1.0);
    const WingReport r = wing_report(cm);
    REQUIRE(r.right_case.has_value());
    CHECK(r.right_slope == doctest::Approx(psi(cm.right_case.p - 1.0).value));
    CHECK(r.left_slope == doctest::Approx(psi(cm.left_case.p).value));
    CHECK(r.criterion.kind == CriterionClass::Kind::TypeI);
    CHECK(r.criterion.derivative_order == 0);
}

TEST_CASE("wing_report: NIG left slope is psi(alpha + beta)") {
    const WingReport r = wing_report(make_nig(kNig));
    CHECK(r.left_slope == doctest::Approx(psi(6.0 + (-2.0)).value));
    CHECK(r.right_slope == doctest::Approx(psi(6.0 - (-2.0) - 1.0).value));
}

TEST_CASE("composed cgfs vanish at zero") {
    CHECK(std::fabs(compose(make_vg(kVg), make_gamma_ou(kGou), 1.0).model.cgf(0.0)) < 1e-13);
    CHECK(std::fabs(compose(make_nig(kNig), make_cir(kCirWide), 0.7).model.cgf(0.0)) < 1e-13);
    CHECK(std::fabs(compose(make_bm_drift(), make_cir(kCirTight), 1.3).model.cgf(0.0)) < 1e-13);
}

TEST_CASE("drift shift leaves the wing report unchanged") {
    const ComposedModel cm = compose(make_vg(kVg), make_gamma_ou(kGou), 0.9);
    const WingReport before = wing_report(cm.model);
    const WingReport after = wing_report(martingale_normalize(cm.model));
    CHECK(before.q_star == after.q_star);
    CHECK(before.r_star == after.r_star);
    CHECK(before.right_slope == after.right_slope);
    CHECK(before.left_slope == after.left_slope);
}

TEST_CASE("term structure: p(t) decreases with the gamma-OU horizon") {
    const ModelCgf base = make_vg(kVg);
    const ClockCgf clock = make_gamma_ou(kGou);
    double prev_p = std::numeric_limits<double>::infinity();
    for (double t : {0.4, 0.9, 1.3}) {
        const TcltCase c = right_critical_moment(base, clock, t);
        REQUIRE(c.kind == TcltCase::Kind::InteriorRoot);
        CHECK(c.p < prev_p);
        prev_p = c.p;
    }
}

TEST_CASE("composed complex evaluation: modulus bound and continuity") {
    for (const ComposedModel& cm :
         {compose(make_vg(kVg), make_gamma_ou(kGou), 0.9),
          compose(make_nig(kNig), make_cir(kCirWide), 0.9),
          compose(make_nig(kNig), make_cir(kCirTight), 0.9),
          compose(make_bm_drift(), make_cir(kCirWide), 0.9)}) {
        const double a = 0.5 * cm.model.strip().upper;
        const double ka = cm.model.cgf(a);
        cd prev = cm.model.cgf(cd(a, 0.0));
        for (double im = 0.25; im <= 120.0; im += 0.25) {
            const cd k = cm.model.cgf(cd(a, im));
            CHECK(k.real() <= ka + 1e-10);                  // |M| <= M(a)
            CHECK(std::abs(k - prev) < 8.0 * (1.0 + std::abs(k))); // no branch jumps
            prev = k;
        }
    }
}

TEST_CASE("TCLT precondition failures are reported") {
    // BM-drift with a gamma-OU clock whose p_T is enormous is still fine;
    // but an unreachable p_T on an unbounded strip must not loop forever.
    const ModelCgf bm = make_bm_drift();
    const ClockCgf clock = make_gamma_ou(kGou);
    CHECK_NOTHROW(right_critical_moment(bm, clock, 1.0));
    CHECK_THROWS_AS(compose(bm, clock, -1.0), InvalidParameter);
}

#include "detail/heston_log.hpp"
#include "detail/affine_kernels.hpp"

TEST_CASE("winding-tracked log agrees with the principal decomposition") {
    // The tracked fallback must reproduce the certified principal-branch
    // value wherever the certification holds.
    const HestonParams sets[] = {{1.15, 0.04, 0.39, -0.64, 0.04},
                                 {1.2, 0.04, 0.5, 0.0, 0.035},
                                 {1.15, 0.04, 0.39, 0.7, 0.04}};
    for (const HestonParams& hp : sets) {
        for (double t : {0.4, 1.3, 5.0}) {
            for (double re : {0.2, 0.9, 1.4}) {
                for (double im : {0.3, 2.0, 11.0, 47.0}) {
                    const cd u(re, im);
                    const cd b = hp.kappa - hp.rho * hp.theta * u;
                    const cd d2 = b * b - hp.theta * hp.theta * (u * u - u);
                    const cd principal = detail::log_affine_A_cplx(d2, b, t);
                    if (std::isnan(principal.real())) continue;
                    const cd tracked = detail::tracked_log_affine_A(hp, t, u);
                    CHECK(std::abs(tracked - principal) <
                          1e-8 * (1.0 + std::abs(principal)));
                }
            }
        }
    }
}
