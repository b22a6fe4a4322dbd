// esph — simulate, reduce, verify and compare energy-stable port-Hamiltonian
// models from JSON run configurations.
#include "esph/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving simulation and model reduction for "
                 "energy-stable port-Hamiltonian systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;

    app.add_flag("--quiet,-q", quiet, "Suppress progress output");
    app.add_option("--seed", seed, "Override the config's verification seed")
        ->each([&](const std::string&) { seed_set = true; });

    auto* simulate = app.add_subcommand("simulate", "Run a model and check its balance laws");
    auto* reduce = app.add_subcommand("reduce", "POD-reduce a model and re-verify it");
    auto* verify = app.add_subcommand("verify", "Certify the Dirac form of a model");
    auto* compare = app.add_subcommand("compare", "Cross-check es-pH, iso-pH and DAE variants");
    for (auto* sub : {simulate, reduce, verify, compare}) {
        sub->add_option("--config,-c", config_path, "Run configuration (JSON)")->required();
        sub->fallthrough();  // allow --seed/--quiet after the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : esph::exit_code::config;
    }

    esph::CommandOptions opts;
    opts.quiet = quiet;
    if (seed_set) opts.seed_override = seed;

    if (simulate->parsed()) return esph::cmd_simulate(config_path, opts);
    if (reduce->parsed()) return esph::cmd_reduce(config_path, opts);
    if (verify->parsed()) return esph::cmd_verify(config_path, opts);
    if (compare->parsed()) return esph::cmd_compare(config_path, opts);
    return esph::exit_code::config;
}
