#include "smilewing/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smilewing/errors.hpp"

namespace smilewing::cli {

namespace {

using nlohmann::json;

std::map<std::string, double> param_block(const json& j, const std::string& what) {
    std::map<std::string, double> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "name") continue;
        if (!it.value().is_number())
            throw InvalidParameter("config: " + what + " parameter '" + it.key() +
                                   "' must be a number");
        out[it.key()] = it.value().get<double>();
    }
    return out;
}

Grid parse_grid(const json& j, const std::string& what) {
    Grid g;
    if (!j.contains("min") || !j.contains("max") || !j.contains("count"))
        throw InvalidParameter("config: grid '" + what + "' needs min, max, count");
    g.min = j.at("min").get<double>();
    g.max = j.at("max").get<double>();
    g.count = j.at("count").get<int>();
    if (!(g.min < g.max) || g.count < 2)
        throw InvalidParameter("config: grid '" + what + "' must have min < max and count >= 2");
    return g;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("config: JSON parse error: ") + e.what());
    }

    RunConfig cfg;
    if (!j.contains("model") || !j.at("model").contains("name"))
        throw InvalidParameter("config: missing model.name");
    cfg.model_name = j.at("model").at("name").get<std::string>();
    cfg.model_params = param_block(j.at("model"), "model");

    if (j.contains("clock")) {
        if (!j.at("clock").contains("name"))
            throw InvalidParameter("config: clock block needs a name");
        cfg.clock_name = j.at("clock").at("name").get<std::string>();
        cfg.clock_params = param_block(j.at("clock"), "clock");
    }

    if (j.contains("maturities")) {
        cfg.maturities.clear();
        for (const auto& m : j.at("maturities")) {
            const double t = m.get<double>();
            if (!(t > 0.0) || !std::isfinite(t))
                throw InvalidParameter("config: maturities must be positive");
            cfg.maturities.push_back(t);
        }
        if (cfg.maturities.empty()) throw InvalidParameter("config: maturities must be nonempty");
    }

    if (j.contains("grids")) {
        const auto& g = j.at("grids");
        if (g.contains("k")) cfg.k_grid = parse_grid(g.at("k"), "k");
        if (g.contains("x")) {
            cfg.x_grid = parse_grid(g.at("x"), "x");
            if (g.at("x").contains("log")) cfg.x_grid_log = g.at("x").at("log").get<bool>();
            if (!(cfg.x_grid.min > 0.0))
                throw InvalidParameter("config: x grid must be positive");
        }
    }

    if (j.contains("tail_sides")) {
        cfg.tail_sides.clear();
        for (const auto& s : j.at("tail_sides")) {
            const std::string side = s.get<std::string>();
            if (side != "right" && side != "left")
                throw InvalidParameter("config: tail_sides entries must be 'right' or 'left'");
            cfg.tail_sides.push_back(side);
        }
    }

    if (j.contains("output")) cfg.output_dir = j.at("output").get<std::string>();

    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        auto get = [&](const char* key, double& slot) {
            if (t.contains(key)) slot = t.at(key).get<double>();
        };
        get("martingale", cfg.tol.martingale);
        get("alpha_independence", cfg.tol.alpha_independence);
        get("iv_round_trip", cfg.tol.iv_round_trip);
        get("chebyshev_slack", cfg.tol.chebyshev_slack);
        get("closed_form_p", cfg.tol.closed_form_p);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<double> tail_grid_points(const RunConfig& cfg) {
    if (!cfg.x_grid_log) return cfg.x_grid.points();
    const int n = cfg.x_grid.count;
    if (n < 2 || !(cfg.x_grid.min > 0.0) || !(cfg.x_grid.min < cfg.x_grid.max))
        throw InvalidParameter("config: log x grid requires 0 < min < max, count >= 2");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double l0 = std::log(cfg.x_grid.min), l1 = std::log(cfg.x_grid.max);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

} // namespace smilewing::cli
