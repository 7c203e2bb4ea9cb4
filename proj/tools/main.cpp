#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "acoustics/commands.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"Batch driver for the nonlinear damped acoustic wave hierarchy"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    unsigned seed = 12345;
    bool strict = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_override, "output directory (overrides config)");
        sub->add_option("--seed", seed, "seed for randomized constant estimation");
        sub->add_flag("--strict", strict, "reject unknown config keys");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate one model");
    CLI::App* limit_study = app.add_subcommand("limit-study", "vanishing-a comparison");
    CLI::App* hierarchy = app.add_subcommand("hierarchy", "pairwise model distances");
    CLI::App* constants = app.add_subcommand("constants", "embedding constant estimates");
    CLI::App* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    CLI::App* check = app.add_subcommand("check-consistency", "complete and verify initial data");
    for (CLI::App* sub : {simulate, limit_study, hierarchy, constants, mms, check})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    json summary;
    try {
        std::vector<std::string> warnings;
        const acoustics::RunConfig cfg =
            acoustics::load_config(config_path, strict, &warnings);
        const std::string out = out_override.empty() ? cfg.out_dir : out_override;
        int rc = 2;
        if (simulate->parsed()) rc = acoustics::cmd_simulate(cfg, out, summary);
        if (limit_study->parsed()) rc = acoustics::cmd_limit_study(cfg, out, summary);
        if (hierarchy->parsed()) rc = acoustics::cmd_hierarchy(cfg, out, summary);
        if (constants->parsed()) rc = acoustics::cmd_constants(cfg, out, seed, summary);
        if (mms->parsed()) rc = acoustics::cmd_mms(cfg, out, summary);
        if (check->parsed()) rc = acoustics::cmd_check_consistency(cfg, out, summary);
        if (!warnings.empty()) summary["config_warnings"] = warnings;
        std::cout << summary.dump(2) << std::endl;
        return rc;
    } catch (const acoustics::ConfigError& e) {
        json err{{"error", e.what()}, {"kind", "config"}};
        std::cerr << err.dump(2) << std::endl;
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", e.what()}, {"kind", "runtime"}};
        std::cerr << err.dump(2) << std::endl;
        return 1;
    }
}
