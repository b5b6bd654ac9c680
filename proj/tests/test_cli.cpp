#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "smilewing/cli/commands.hpp"
#include "smilewing/asymptotics.hpp"
#include "smilewing/cli/csv.hpp"
#include "smilewing/errors.hpp"

using namespace smilewing;
using namespace smilewing::cli;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kVgGouConfig = R"({
  "model": {"name": "vg", "m": 11.0, "g": 9.0, "C": 7.0},
  "clock": {"name": "gamma_ou", "lambda": 1.68, "a": 0.5, "b": 4.0, "y0": 1.0},
  "maturities": [0.4, 0.9, 1.3],
  "grids": {"k": {"min": -2.5, "max": 3.5, "count": 25},
            "x": {"min": 0.5, "max": 40.0, "count": 9, "log": true}},
  "output": "OUTDIR"
})";

RunConfig config_with_out(const char* text, const std::string& out_dir) {
    std::string s(text);
    const auto pos = s.find("OUTDIR");
    REQUIRE(pos != std::string::npos);
    s.replace(pos, 6, out_dir);
    return parse_config(s);
}

} // namespace

TEST_CASE("config parsing: fields, defaults, overrides") {
    const RunConfig cfg = config_with_out(kVgGouConfig, "x");
    CHECK(cfg.model_name == "vg");
    CHECK(cfg.model_params.at("m") == 11.0);
    CHECK(cfg.clock_name == "gamma_ou");
    CHECK(cfg.maturities.size() == 3);
    CHECK(cfg.k_grid.count == 25);
    CHECK(cfg.x_grid_log);
    CHECK(cfg.tail_sides.size() == 2);
    CHECK(cfg.tol.alpha_independence == 1e-8);

    const RunConfig with_tol = parse_config(R"({
      "model": {"name": "bm_drift"},
      "tolerances": {"alpha_independence": 1e-30}
    })");
    CHECK(with_tol.tol.alpha_independence == 1e-30);
    CHECK(with_tol.maturities == std::vector<double>{1.0});
}

TEST_CASE("config parsing: errors") {
    CHECK_THROWS_AS(parse_config("{not json"), InvalidParameter);
    CHECK_THROWS_AS(parse_config(R"({"model": {}})"), InvalidParameter);
    CHECK_THROWS_AS(parse_config(R"({"model": {"name": "vg"}, "maturities": [-1]})"),
                    InvalidParameter);
    CHECK_THROWS_AS(
        parse_config(R"({"model": {"name": "vg", "m": "ten"}})"),
        InvalidParameter);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InvalidParameter);
}

TEST_CASE("build_model: registry errors name the registry") {
    RunConfig cfg;
    cfg.model_name = "levy_flight";
    CHECK_THROWS_WITH_AS(build_model(cfg, 1.0), doctest::Contains("known models"),
                         InvalidParameter);
    cfg.model_name = "vg";
    cfg.model_params = {{"m", 10.0}, {"g", 8.0}, {"C", 1.5}};
    cfg.clock_name = "sundial";
    CHECK_THROWS_WITH_AS(build_model(cfg, 1.0), doctest::Contains("known clocks"),
                         InvalidParameter);

    cfg.clock_name.clear();
    cfg.model_params["extra"] = 1.0;
    CHECK_THROWS_WITH_AS(build_model(cfg, 1.0), doctest::Contains("unknown parameter"),
                         InvalidParameter);

    RunConfig heston;
    heston.model_name = "heston";
    heston.model_params = {{"kappa", 1.15}, {"eta", 0.04}, {"theta", 0.39},
                           {"rho", -0.64}, {"v0", 0.04}};
    heston.clock_name = "cir";
    heston.clock_params = {{"kappa", 1.0}, {"eta", 1.0}, {"lambda", 1.0}, {"y0", 1.0}};
    CHECK_THROWS_WITH_AS(build_model(heston, 1.0), doctest::Contains("no clock"),
                         InvalidParameter);
    heston.clock_name.clear();
    heston.clock_params.clear();
    CHECK_NOTHROW(build_model(heston, 1.0));
}

TEST_CASE("build_model: DE report row carries the predicted slopes") {
    RunConfig cfg;
    cfg.model_name = "de";
    cfg.model_params = {{"sigma", 0.2}, {"mu", 0.0}, {"lambda", 1.0}, {"p", 0.4},
                        {"eta1", 10.0}, {"eta2", 5.0}};
    const BuiltModel m = build_model(cfg, 1.0);
    CHECK(m.report.r_star == doctest::Approx(10.0));
    CHECK(m.report.q_star == doctest::Approx(5.0));
    CHECK(m.report.right_slope == doctest::Approx(psi(9.0).value));
    CHECK(m.report.left_slope == doctest::Approx(psi(5.0).value));
}

TEST_CASE("cmd_classify: one row per maturity, decreasing composed p") {
    const std::string out_dir = "test_out/classify";
    std::filesystem::remove_all(out_dir);
    const RunConfig cfg = config_with_out(kVgGouConfig, out_dir);
    std::ostringstream out;
    CHECK(cmd_classify(cfg, out) == 0);

    const std::string csv = slurp(out_dir + "/classify.csv");
    // Header + 3 data rows.
    int rows = 0;
    std::istringstream lines(csv);
    std::string line;
    std::vector<double> r_stars;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++rows;
        if (line.rfind("model", 0) == 0) continue;
        // r_star is the 4th column.
        std::istringstream cells(line);
        std::string cell;
        for (int i = 0; i < 4; ++i) std::getline(cells, cell, ',');
        r_stars.push_back(std::stod(cell));
    }
    CHECK(rows == 4);
    REQUIRE(r_stars.size() == 3);
    CHECK(r_stars[0] > r_stars[1]);
    CHECK(r_stars[1] > r_stars[2]);
}

TEST_CASE("cmd_smile: BM-drift emits flat total variance columns") {
    const std::string out_dir = "test_out/smile_bm";
    std::filesystem::remove_all(out_dir);
    RunConfig cfg;
    cfg.model_name = "bm_drift";
    cfg.maturities = {0.4, 0.9, 1.3};
    cfg.k_grid = Grid{-1.5, 1.5, 13};
    cfg.output_dir = out_dir;
    std::ostringstream out;
    CHECK(cmd_smile(cfg, out) == 0);

    for (double t : {0.4, 0.9, 1.3}) {
        std::ostringstream name;
        name << out_dir << "/smile_t" << t << ".csv";
        const std::string csv = slurp(name.str());
        std::istringstream lines(csv);
        std::string line;
        int data_rows = 0;
        while (std::getline(lines, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
            std::istringstream cells(line);
            std::string k_cell, v2_cell;
            std::getline(cells, k_cell, ',');
            std::getline(cells, v2_cell, ',');
            CHECK(std::stod(v2_cell) == doctest::Approx(t).epsilon(1e-6));
            ++data_rows;
        }
        CHECK(data_rows == 13);
    }
    CHECK(std::filesystem::exists(out_dir + "/plot_smile.gp"));
}

TEST_CASE("cmd_smile: byte-identical across runs") {
    RunConfig cfg = config_with_out(kVgGouConfig, "test_out/det_a");
    cfg.maturities = {0.9};
    std::filesystem::remove_all("test_out/det_a");
    std::filesystem::remove_all("test_out/det_b");
    std::ostringstream sink;
    CHECK(cmd_smile(cfg, sink) == 0);
    cfg.output_dir = "test_out/det_b";
    CHECK(cmd_smile(cfg, sink) == 0);
    CHECK(slurp("test_out/det_a/smile_t0.9.csv") == slurp("test_out/det_b/smile_t0.9.csv"));
}

TEST_CASE("emitted predicted slope round-trips to the recomputed value exactly") {
    RunConfig cfg = config_with_out(kVgGouConfig, "test_out/slope_exact");
    cfg.maturities = {0.9};
    std::filesystem::remove_all("test_out/slope_exact");
    std::ostringstream sink;
    REQUIRE(cmd_smile(cfg, sink) == 0);

    const std::string csv = slurp("test_out/slope_exact/smile_t0.9.csv");
    const std::string key = "# predicted_right_slope: ";
    const auto pos = csv.find(key);
    REQUIRE(pos != std::string::npos);
    const std::string cell = csv.substr(pos + key.size(), csv.find('\n', pos) - pos - key.size());

    const BuiltModel m = build_model(cfg, 0.9);
    const double recomputed = psi(m.report.r_star - 1.0).value;
    CHECK(std::stod(cell) == recomputed); // bit-exact, no reformatting drift
}

TEST_CASE("cmd_tails: DE deepest ratio approaches eta1, header records the branch") {
    const std::string out_dir = "test_out/tails_de";
    std::filesystem::remove_all(out_dir);
    RunConfig cfg;
    cfg.model_name = "de";
    cfg.model_params = {{"sigma", 0.2}, {"mu", 0.0}, {"lambda", 1.0}, {"p", 0.4},
                        {"eta1", 10.0}, {"eta2", 5.0}};
    cfg.maturities = {1.0};
    cfg.x_grid = Grid{0.5, 400.0, 9};
    cfg.x_grid_log = true;
    cfg.tail_sides = {"right"};
    cfg.output_dir = out_dir;
    std::ostringstream out;
    CHECK(cmd_tails(cfg, out) == 0);

    const std::string csv = slurp(out_dir + "/tails_right_t1.csv");
    CHECK(csv.find("predicted_exponent: 10") != std::string::npos);
    // Last data row: ratio within 3% of 10.
    std::istringstream lines(csv);
    std::string line, last;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line.rfind("x,", 0) != 0) last = line;
    REQUIRE(!last.empty());
    std::istringstream cells(last);
    std::string x_cell, ratio_cell;
    std::getline(cells, x_cell, ',');
    std::getline(cells, ratio_cell, ',');
    CHECK(std::fabs(std::stod(ratio_cell) - 10.0) < 0.3);
}

TEST_CASE("cmd_tails: composed header records the sup condition") {
    const std::string out_dir = "test_out/tails_nigcir";
    std::filesystem::remove_all(out_dir);
    RunConfig cfg;
    cfg.model_name = "nig";
    cfg.model_params = {{"alpha", 6.0}, {"beta", -2.0}, {"delta", 0.5}};
    cfg.clock_name = "cir";
    cfg.clock_params = {{"kappa", 1.2}, {"eta", 1.0}, {"lambda", 0.8}, {"y0", 1.0}};
    cfg.maturities = {1.0};
    cfg.x_grid = Grid{0.5, 30.0, 7};
    cfg.tail_sides = {"right"};
    cfg.output_dir = out_dir;
    std::ostringstream out;
    CHECK(cmd_tails(cfg, out) == 0);
    const std::string csv = slurp(out_dir + "/tails_right_t1.csv");
    CHECK(csv.find("levy_dominates") != std::string::npos);
    CHECK(csv.find("sup K_L") != std::string::npos);
}

TEST_CASE("cmd_verify: passes on the desk model, fails on a corrupted tolerance") {
    RunConfig cfg = config_with_out(kVgGouConfig, "test_out/verify");
    cfg.maturities = {0.9};
    std::ostringstream out;
    CHECK(cmd_verify(cfg, out) == 0);
    CHECK(out.str().find("[FAIL]") == std::string::npos);
    CHECK(out.str().find("closed_form_p") != std::string::npos);
    CHECK(out.str().find("uniqueness_scan") != std::string::npos);

    cfg.tol.alpha_independence = 1e-30; // negative control
    std::ostringstream out2;
    CHECK(cmd_verify(cfg, out2) == 1);
    CHECK(out2.str().find("[FAIL] alpha_independence") != std::string::npos);
}

TEST_CASE("fmt17 is deterministic and round-trips") {
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(fmt17(2.0) == "2");
    const double v = 0.123456789012345678;
    CHECK(std::stod(fmt17(v)) == v);
}
