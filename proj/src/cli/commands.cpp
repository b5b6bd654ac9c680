#include "smilewing/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "smilewing/asymptotics.hpp"
#include "smilewing/cli/csv.hpp"
#include "smilewing/cli/log.hpp"
#include "smilewing/errors.hpp"
#include "smilewing/levy_models.hpp"
#include "smilewing/root_finding.hpp"

namespace smilewing::cli {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double need(const std::map<std::string, double>& params, const std::string& key,
            const std::string& what) {
    auto it = params.find(key);
    if (it == params.end())
        throw InvalidParameter("config: " + what + " requires parameter '" + key + "'");
    return it->second;
}

double optional_param(const std::map<std::string, double>& params, const std::string& key,
                      double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::set<std::string>& allowed, const std::string& what) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (!allowed.count(key))
            throw InvalidParameter("config: unknown parameter '" + key + "' for " + what);
    }
}

ModelCgf build_base(const RunConfig& cfg) {
    const auto& p = cfg.model_params;
    if (cfg.model_name == "vg") {
        reject_unknown(p, {"m", "g", "C"}, "model 'vg'");
        return make_vg({need(p, "m", "model 'vg'"), need(p, "g", "model 'vg'"),
                        need(p, "C", "model 'vg'")});
    }
    if (cfg.model_name == "nig") {
        reject_unknown(p, {"alpha", "beta", "mu", "delta"}, "model 'nig'");
        return make_nig({need(p, "alpha", "model 'nig'"), need(p, "beta", "model 'nig'"),
                         optional_param(p, "mu", 0.0), need(p, "delta", "model 'nig'")});
    }
    if (cfg.model_name == "de") {
        reject_unknown(p, {"sigma", "mu", "lambda", "p", "q", "eta1", "eta2"}, "model 'de'");
        DeParams d{need(p, "sigma", "model 'de'"),
                   optional_param(p, "mu", 0.0),
                   need(p, "lambda", "model 'de'"),
                   need(p, "p", "model 'de'"),
                   optional_param(p, "q", std::numeric_limits<double>::quiet_NaN()),
                   need(p, "eta1", "model 'de'"),
                   need(p, "eta2", "model 'de'")};
        return make_de(d);
    }
    if (cfg.model_name == "bm_drift") {
        reject_unknown(p, {}, "model 'bm_drift'");
        return make_bm_drift();
    }
    throw InvalidParameter("config: unknown model '" + cfg.model_name + "'; " +
                           model_registry_text());
}

ClockCgf build_clock(const RunConfig& cfg) {
    const auto& p = cfg.clock_params;
    if (cfg.clock_name == "gamma_ou") {
        reject_unknown(p, {"lambda", "a", "b", "y0"}, "clock 'gamma_ou'");
        return make_gamma_ou({need(p, "lambda", "clock 'gamma_ou'"),
                              need(p, "a", "clock 'gamma_ou'"), need(p, "b", "clock 'gamma_ou'"),
                              need(p, "y0", "clock 'gamma_ou'")});
    }
    if (cfg.clock_name == "cir") {
        reject_unknown(p, {"kappa", "eta", "lambda", "y0"}, "clock 'cir'");
        return make_cir({need(p, "kappa", "clock 'cir'"), need(p, "eta", "clock 'cir'"),
                         need(p, "lambda", "clock 'cir'"), need(p, "y0", "clock 'cir'")});
    }
    if (cfg.clock_name == "deterministic") {
        reject_unknown(p, {"rate"}, "clock 'deterministic'");
        return make_deterministic(need(p, "rate", "clock 'deterministic'"));
    }
    throw InvalidParameter("config: unknown clock '" + cfg.clock_name + "'; " +
                           model_registry_text());
}

std::string case_text(const std::optional<TcltCase>& c) {
    return c ? to_string(*c) : std::string("-");
}

// Cells must stay comma-free; labels with parameters use ';' instead.
std::string csv_safe(std::string s) {
    for (char& ch : s)
        if (ch == ',') ch = ';';
    return s;
}

} // namespace

std::string model_registry_text() {
    return "known models: bm_drift, de, heston, nig, vg; known clocks: cir, deterministic, "
           "gamma_ou";
}

BuiltModel build_model(const RunConfig& cfg, double maturity) {
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw InvalidParameter("config: maturity must be positive");
    BuiltModel out;
    out.maturity = maturity;

    if (cfg.model_name == "heston") {
        if (!cfg.clock_name.empty())
            throw InvalidParameter("config: heston admits no clock (the variance process is the "
                                   "clock)");
        const auto& p = cfg.model_params;
        reject_unknown(p, {"kappa", "eta", "theta", "rho", "v0"}, "model 'heston'");
        HestonParams hp{need(p, "kappa", "model 'heston'"), need(p, "eta", "model 'heston'"),
                        need(p, "theta", "model 'heston'"), need(p, "rho", "model 'heston'"),
                        need(p, "v0", "model 'heston'")};
        HestonModel hm = make_heston(hp, maturity);
        out.horizon_model = hm.model;
        out.report = wing_report(hm);
        out.heston = std::move(hm);
        out.label = out.horizon_model.name();
        return out;
    }

    const ModelCgf base = build_base(cfg);
    if (cfg.clock_name.empty()) {
        out.horizon_model = at_horizon(base, maturity);
        out.report = wing_report(out.horizon_model);
        out.label = out.horizon_model.name() + " (t=" + fmt(maturity) + ")";
        return out;
    }
    ComposedModel cm = compose(base, build_clock(cfg), maturity);
    out.horizon_model = cm.model;
    out.report = wing_report(cm);
    out.label = out.horizon_model.name();
    out.composed = std::move(cm);
    return out;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    // Comma-free model tag for the CSV cell; full parameters go into the
    // header comment and the text report.
    const std::string model_tag =
        cfg.model_name + (cfg.clock_name.empty() ? "" : "@" + cfg.clock_name);
    CsvWriter csv;
    csv.comment("smilewing classify");
    csv.row({"model", "maturity", "q_star", "r_star", "criterion", "tclt_right", "tclt_left",
             "left_slope", "right_slope", "left_applicable", "right_applicable"});

    for (double t : cfg.maturities) {
        const BuiltModel m = build_model(cfg, t);
        const WingReport& r = m.report;
        if (t == cfg.maturities.front()) csv.comment("parameters: " + m.label);
        csv.row({model_tag, fmt17(t), fmt17(r.q_star), fmt17(r.r_star),
                 csv_safe(to_string(r.criterion)), csv_safe(case_text(r.right_case)),
                 csv_safe(case_text(r.left_case)),
                 r.left_applicable ? fmt17(r.left_slope) : "",
                 r.right_applicable ? fmt17(r.right_slope) : "",
                 r.left_applicable ? "1" : "0", r.right_applicable ? "1" : "0"});

        out << m.label << "\n";
        out << "  t = " << t << ": strip (-" << r.q_star << ", " << r.r_star << "), criterion "
            << to_string(r.criterion) << "\n";
        if (r.right_case) out << "  right case: " << to_string(*r.right_case) << "\n";
        if (r.left_case) out << "  left case:  " << to_string(*r.left_case) << "\n";
        out << "  left slope psi(q*) = "
            << (r.left_applicable ? fmt(r.left_slope) : std::string("n/a"))
            << ", right slope psi(r*-1) = "
            << (r.right_applicable ? fmt(r.right_slope) : std::string("n/a")) << "\n";
    }
    const std::string path = cfg.output_dir + "/classify.csv";
    csv.save(path);
    log_info("wrote " + path);
    return 0;
}

namespace {

std::string maturity_tag(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

} // namespace

int cmd_smile(const RunConfig& cfg, std::ostream& out) {
    std::ostringstream plot;
    plot << "# gnuplot script regenerating the smile figures\n";
    plot << "set datafile separator ','\n";
    plot << "set datafile commentschars '#'\n";
    plot << "set xlabel 'log-strike k'\n";
    plot << "set ylabel 'total implied variance V^2(k,t)'\n";
    plot << "set key left top\n";
    plot << "plot \\\n";

    bool first_plot = true;
    for (double t : cfg.maturities) {
        const BuiltModel m = build_model(cfg, t);
        const ModelCgf priced = martingale_normalize(m.horizon_model);
        const SmileCurve curve = smile_curve(priced, t, cfg.k_grid);
        if (curve.points.size() < 4)
            throw NumericalFailure("cmd_smile: fewer than 4 usable strikes at t = " + fmt(t));

        const WingReport& r = m.report;
        const auto right_pts = right_wing_points(curve);
        const auto left_pts = left_wing_points(curve);

        // Slope lines shifted to touch the smile at the deepest usable strike.
        double shift_r = 0.0, shift_l = 0.0;
        if (r.right_applicable && !right_pts.empty()) {
            const auto& [k_last, v2_last] = right_pts.back();
            shift_r = v2_last - r.right_slope * k_last;
        }
        if (r.left_applicable && !left_pts.empty()) {
            const auto& [k_last, v2_last] = left_pts.back();
            shift_l = v2_last - r.left_slope * k_last;
        }

        CsvWriter csv;
        csv.comment("model: " + cfg.model_name +
                    (cfg.clock_name.empty() ? "" : "@" + cfg.clock_name));
        csv.comment("parameters: " + m.label);
        csv.comment("maturity: " + fmt17(t));
        csv.comment("criterion: " + to_string(r.criterion));
        csv.comment("predicted_right_slope: " + (r.right_applicable ? fmt17(r.right_slope) : "n/a"));
        csv.comment("predicted_left_slope: " + (r.left_applicable ? fmt17(r.left_slope) : "n/a"));
        // Best-effort fit annotations; thin windows are skipped, not fatal.
        try {
            csv.comment("fitted_right_slope_top20: " + fmt17(wing_fit(right_pts, 0.2).fitted_slope));
        } catch (const Error&) {
        }
        try {
            csv.comment("fitted_left_slope_top20: " + fmt17(wing_fit(left_pts, 0.2).fitted_slope));
        } catch (const Error&) {
        }
        csv.comment("dropped_points: " + std::to_string(curve.dropped.size()));
        csv.row({"k", "total_variance", "predicted_slope_line"});
        for (const auto& pt : curve.points) {
            std::string line;
            if (pt.k >= 0.0 && r.right_applicable)
                line = fmt17(r.right_slope * pt.k + shift_r);
            else if (pt.k < 0.0 && r.left_applicable)
                line = fmt17(r.left_slope * (-pt.k) + shift_l);
            csv.row({fmt17(pt.k), fmt17(pt.total_variance), line});
        }
        const std::string path = cfg.output_dir + "/smile_t" + maturity_tag(t) + ".csv";
        csv.save(path);
        log_info("wrote " + path);
        out << "smile t = " << t << ": " << curve.points.size() << " strikes, "
            << curve.dropped.size() << " dropped -> " << path << "\n";

        if (!first_plot) plot << ", \\\n";
        first_plot = false;
        plot << "  'smile_t" << maturity_tag(t) << ".csv' using 1:2 with lines title 'V^2, t="
             << maturity_tag(t) << "'";
        plot << ", \\\n  'smile_t" << maturity_tag(t)
             << ".csv' using 1:3 with lines dashtype 2 title 'slope line, t=" << maturity_tag(t)
             << "'";
    }
    plot << "\npause -1\n";
    write_text_file(cfg.output_dir + "/plot_smile.gp", plot.str());
    return 0;
}

int cmd_tails(const RunConfig& cfg, std::ostream& out) {
    for (double t : cfg.maturities) {
        const BuiltModel m = build_model(cfg, t);
        const bool normalized = m.horizon_model.strip().upper > 1.0;
        const ModelCgf model =
            normalized ? martingale_normalize(m.horizon_model) : m.horizon_model;

        for (const std::string& side_name : cfg.tail_sides) {
            const TailSide side = side_name == "left" ? TailSide::Left : TailSide::Right;
            TailCurve curve;
            curve.side = side;
            const ModelCgf target = side == TailSide::Left ? reflect(model) : model;
            for (double x : tail_grid_points(cfg)) {
                try {
                    const double nls = neg_log_survival(target, x);
                    if (nls > 0.0)
                        curve.points.push_back({x, nls / x});
                    else
                        curve.dropped.push_back({x, "-log Fbar not positive"});
                } catch (const Error& e) {
                    curve.dropped.push_back({x, e.what()});
                }
            }

            const WingReport& r = m.report;
            const double predicted = side == TailSide::Right ? r.r_star : r.q_star;
            CsvWriter csv;
            csv.comment("model: " + cfg.model_name +
                        (cfg.clock_name.empty() ? "" : "@" + cfg.clock_name));
            csv.comment("parameters: " + m.label);
            csv.comment("maturity: " + fmt17(t));
            csv.comment("side: " + side_name);
            csv.comment("criterion: " + to_string(r.criterion));
            csv.comment("normalized: " + std::string(normalized ? "yes" : "no"));
            csv.comment(std::string("predicted_exponent: ") + fmt17(predicted));
            if (m.composed) {
                const auto& c = side == TailSide::Right ? m.composed->right_case
                                                        : m.composed->left_case;
                const double p_t = m.composed->clock.explosion_point(t);
                const double k_sup = side == TailSide::Right
                                         ? m.composed->base.boundary_value_right()
                                         : m.composed->base.boundary_value_left();
                csv.comment("tclt_case: " + to_string(c) + " [sup K_L = " + fmt(k_sup) +
                            (k_sup < p_t ? " < " : " >= ") + "p_T = " + fmt(p_t) + "]");
            }
            csv.comment("dropped_points: " + std::to_string(curve.dropped.size()));
            csv.row({"x", "ratio", "predicted"});
            for (const auto& pt : curve.points)
                csv.row({fmt17(pt.x), fmt17(pt.ratio), fmt17(predicted)});

            const std::string path =
                cfg.output_dir + "/tails_" + side_name + "_t" + maturity_tag(t) + ".csv";
            csv.save(path);
            log_info("wrote " + path);
            const std::string last_ratio =
                curve.points.empty() ? std::string("n/a") : fmt(curve.points.back().ratio);
            out << "tails " << side_name << " t = " << t << ": deepest ratio " << last_ratio
                << " vs predicted " << predicted << " -> " << path << "\n";
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    };

    for (double t : cfg.maturities) {
        const BuiltModel m = build_model(cfg, t);
        const std::string tag = " (t=" + fmt(t) + ")";
        const double r_star = m.horizon_model.strip().upper;

        // Martingale normalization.
        if (r_star > 1.0) {
            const ModelCgf priced = martingale_normalize(m.horizon_model);
            const double k1 = priced.cgf(1.0);
            check("martingale_normalization" + tag, std::fabs(k1) <= cfg.tol.martingale,
                  "|K(1)| = " + fmt(std::fabs(k1)));

            // Damping independence of the transform prices.
            const double width = r_star - 1.0;
            double worst = 0.0;
            for (double k : {0.0, 0.4, 1.0}) {
                TransformOptions o1, o2;
                if (std::isfinite(width)) {
                    o1.alpha = 0.6 * width;
                    o2.alpha = 0.3 * width;
                } else {
                    o1.alpha = 1.5;
                    o2.alpha = 0.75;
                }
                worst = std::max(worst, std::fabs(call_price(priced, k, o1) -
                                                  call_price(priced, k, o2)));
            }
            check("alpha_independence" + tag, worst <= cfg.tol.alpha_independence,
                  "max |c(alpha1) - c(alpha2)| = " + fmt(worst));

            // Chebyshev bound from the mgf.
            if (std::isfinite(r_star)) {
                const double r = 0.9 * r_star;
                const double bound_scale = std::exp(priced.cgf(r));
                double worst_excess = -1.0;
                for (double x : {0.5, 1.0, 2.0}) {
                    const double fb = survival(priced, x);
                    worst_excess = std::max(worst_excess,
                                            fb - bound_scale * std::exp(-r * x));
                }
                check("chebyshev_bound" + tag, worst_excess <= cfg.tol.chebyshev_slack,
                      "max Fbar - M(0.9 r*) e^{-0.9 r* x} = " + fmt(worst_excess));
            }
        } else {
            check("martingale_normalization" + tag, false,
                  "r* = " + fmt(r_star) + " <= 1, model cannot price");
        }

        // Implied-vol round trip over price-resolvable points (one ulp of the
        // price spans eps * price / vega in V).
        {
            double worst = 0.0;
            for (double v : {0.05, 0.2, 0.8, 2.0, 5.0})
                for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
                    const double price = bs_call(k, v);
                    const double intrinsic = std::max(0.0, -std::expm1(k));
                    if (price - intrinsic < 1e-14 || 1.0 - price < 1e-14) continue;
                    const double d1 = -k / v + 0.5 * v;
                    const double vega = std::exp(-0.5 * d1 * d1) / std::sqrt(2.0 * M_PI);
                    if (std::numeric_limits<double>::epsilon() * price >
                        0.25 * cfg.tol.iv_round_trip * vega)
                        continue;
                    worst = std::max(worst, std::fabs(implied_total_vol(k, price) - v));
                }
            check("iv_round_trip" + tag, worst <= cfg.tol.iv_round_trip,
                  "max |V_implied - V| = " + fmt(worst));
        }

        if (m.composed) {
            const ComposedModel& c = *m.composed;
            const double p_t = c.clock.explosion_point(t);
            if (c.right_case.kind == TcltCase::Kind::InteriorRoot) {
                // The crossing of p_T must be unique on the positive strip.
                const double upper = c.base.strip().upper;
                const double hi = std::isfinite(upper) ? upper * (1.0 - 1e-9)
                                                       : std::max(4.0 * c.right_case.p, 8.0);
                int sign_changes = 0;
                double prev = c.base.cgf(hi / 2000.0) - p_t;
                for (int i = 2; i <= 2000; ++i) {
                    const double v = hi * static_cast<double>(i) / 2000.0;
                    const double cur = c.base.cgf(v) - p_t;
                    if (std::signbit(cur) != std::signbit(prev)) ++sign_changes;
                    prev = cur;
                }
                check("uniqueness_scan" + tag, sign_changes == 1,
                      std::to_string(sign_changes) + " sign change(s) of K_L - p_T");
            }
            if (c.clock.kind() == ClockCgf::Kind::GammaOu && cfg.model_name == "vg") {
                const double mm = need(cfg.model_params, "m", "model 'vg'");
                const double gg = need(cfg.model_params, "g", "model 'vg'");
                const double cc = need(cfg.model_params, "C", "model 'vg'");
                const double q = 4.0 * gg * mm * (1.0 - std::exp(-p_t / cc));
                const double p_closed = 0.5 * (mm - gg + std::sqrt((mm - gg) * (mm - gg) + q));
                const double diff = std::fabs(p_closed - c.right_case.p);
                check("closed_form_p" + tag, diff <= cfg.tol.closed_form_p,
                      "|p_solver - p_closed| = " + fmt(diff));
            }
        }
    }
    out << (failures == 0 ? "verify: all checks passed\n"
                          : "verify: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace smilewing::cli
