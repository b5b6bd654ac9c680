#pragma once

#include <map>
#include <string>
#include <vector>

#include "smilewing/pricing.hpp"

namespace smilewing::cli {

/// Verification tolerances; config files may override any of them.
struct Tolerances {
    double martingale = 1e-9;
    double alpha_independence = 1e-8;
    double iv_round_trip = 1e-10;
    double chebyshev_slack = 1e-9;
    double closed_form_p = 1e-10;
};

/// Parsed run configuration. The config file is JSON:
///
/// {
///   "model": {"name": "vg", "m": 10.0, "g": 8.0, "C": 1.5},
///   "clock": {"name": "gamma_ou", "lambda": 1.68, "a": 0.5, "b": 4.0, "y0": 1.0},
///   "maturities": [0.4, 0.9, 1.3],
///   "grids": {"k": {"min": -3.2, "max": 3.2, "count": 65},
///             "x": {"min": 0.25, "max": 400.0, "count": 33, "log": true}},
///   "tail_sides": ["right", "left"],
///   "output": "out",
///   "tolerances": {"alpha_independence": 1e-8}
/// }
///
/// "clock" and "tolerances" are optional; "grids" and "tail_sides" have
/// defaults. Heston takes its parameters in the model block and admits no
/// clock.
struct RunConfig {
    std::string model_name;
    std::map<std::string, double> model_params;
    std::string clock_name; ///< empty when no clock is configured
    std::map<std::string, double> clock_params;
    std::vector<double> maturities{1.0};
    Grid k_grid{-3.0, 3.0, 61};
    Grid x_grid{0.25, 64.0, 25};
    bool x_grid_log = true; ///< geometric x spacing for tail curves
    std::vector<std::string> tail_sides{"right", "left"};
    std::string output_dir = "out";
    Tolerances tol;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Grid points honoring the log-spacing flag.
std::vector<double> tail_grid_points(const RunConfig& cfg);

} // namespace smilewing::cli
