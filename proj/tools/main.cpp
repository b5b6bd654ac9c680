#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smilewing/cli/commands.hpp"
#include "smilewing/cli/log.hpp"
#include "smilewing/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<double> maturities;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "path to the JSON run configuration")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
    cmd->add_option("--maturity", args.maturities,
                    "maturity in years (repeatable; overrides the config)");
}

smilewing::cli::RunConfig resolve(const CommonArgs& args) {
    smilewing::cli::RunConfig cfg = smilewing::cli::load_config(args.config_path);
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    if (!args.maturities.empty()) cfg.maturities = args.maturities;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"smilewing: implied-variance wing asymptotics from moment generating functions"};
    app.require_subcommand(1);

    CommonArgs classify_args, smile_args, tails_args, verify_args;
    CLI::App* classify = app.add_subcommand(
        "classify", "critical exponents, criterion class and predicted wing slopes");
    attach_common(classify, classify_args);
    CLI::App* smile =
        app.add_subcommand("smile", "total-implied-variance smiles with predicted slope lines");
    attach_common(smile, smile_args);
    CLI::App* tails = app.add_subcommand("tails", "log-tail slope curves -log Fbar(x)/x");
    attach_common(tails, tails_args);
    CLI::App* verify =
        app.add_subcommand("verify", "run the built-in invariant checks on the configured model");
    attach_common(verify, verify_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) return smilewing::cli::cmd_classify(resolve(classify_args), std::cout);
        if (smile->parsed()) return smilewing::cli::cmd_smile(resolve(smile_args), std::cout);
        if (tails->parsed()) return smilewing::cli::cmd_tails(resolve(tails_args), std::cout);
        if (verify->parsed()) return smilewing::cli::cmd_verify(resolve(verify_args), std::cout);
    } catch (const smilewing::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const smilewing::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
