#pragma once

#include <optional>
#include <ostream>

#include "smilewing/cli/config.hpp"
#include "smilewing/time_change.hpp"

namespace smilewing::cli {

/// A configured model instantiated at one maturity.
struct BuiltModel {
    std::string label;
    double maturity = 0.0;
    ModelCgf horizon_model; ///< cgf of returns at the maturity, unnormalized
    WingReport report;
    std::optional<ComposedModel> composed;
    std::optional<HestonModel> heston;
};

BuiltModel build_model(const RunConfig& cfg, double maturity);

/// Names accepted in the config "model"/"clock" blocks.
std::string model_registry_text();

int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_smile(const RunConfig& cfg, std::ostream& out);
int cmd_tails(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

} // namespace smilewing::cli
