#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(hhnet_status status)
{
    switch (status) {
    case HHNET_ERR_CONDITIONING:
    case HHNET_ERR_NO_CONVERGENCE:
        return kExitNumerical;
    case HHNET_ERR_INVALID_ARGUMENT:
    case HHNET_ERR_DOMAIN:
    case HHNET_ERR_DEGENERATE:
    case HHNET_ERR_NO_ROOT:
    case HHNET_ERR_MODE:
        return kExitConfig;
    default:
        return kExitFailure;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Epidemics on a random network with household structure: threshold, outbreak probability,\n"
                 "final size, and finite-population simulation.",
                 "hh-net-epi"};
    app.set_version_flag("--version", std::string(hhnet_version()));
    app.require_subcommand(1);

    const char *descriptions[] = {
        "R*, extinction probabilities, major-outbreak probability and final size (JSON)",
        "critical lambda_G over household sizes and local rates (CSV)",
        "major-outbreak probability across degree families (CSV)",
        "finite-population estimates against the asymptotic values (CSV)",
        "batch of simulated epidemics (JSON summary)",
    };
    hhcli::RunOptions options;
    std::uint64_t seed = 0;
    std::string out_path;
    std::vector<CLI::App *> subs;
    for (std::size_t i = 0; i < hhcli::command_names().size(); ++i) {
        CLI::App *sub = app.add_subcommand(hhcli::command_names()[i], descriptions[i]);
        sub->add_option("--config", options.config_path, "config file")->required();
        sub->add_option("--seed", seed, "random seed, overrides the config");
        sub->add_option("--out", out_path, "output file (default: stdout)");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    std::string command;
    for (CLI::App *sub : subs) {
        if (sub->parsed()) {
            command = sub->get_name();
            if (sub->count("--seed"))
                options.seed = seed;
            if (sub->count("--out"))
                options.out_path = out_path;
        }
    }

    try {
        hhcli::run_command(command, options);
        return kExitOk;
    } catch (const hhcli::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hhcli::ApiError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.status());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
