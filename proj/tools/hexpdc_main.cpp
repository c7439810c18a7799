#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "hexpdc/array_io.hpp"
#include "hexpdc/config.hpp"
#include "hexpdc/errors.hpp"
#include "hexpdc/tasks.hpp"
#include "hexpdc/version.hpp"

namespace {

// exit codes: 0 success, 2 config error, 3 runtime divergence,
// 4 acceptance-check failure (selfcheck subcommand)
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitSelfcheck = 4;

int cmd_run(const std::string& config_path, std::uint64_t seed_override, bool has_seed,
            int threads_override, const std::string& output_override,
            const std::string& profile_override) {
    hexpdc::ExperimentConfig config;
    try {
        config = hexpdc::load_config_file(config_path);
        hexpdc::apply_env_overrides(config);
        if (has_seed) config.seed = seed_override;
        if (threads_override >= 0) config.threads = threads_override;
        if (!output_override.empty()) config.output_dir = output_override;
        if (!profile_override.empty()) config.profile = profile_override;
        hexpdc::validate(config);
    } catch (const hexpdc::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    try {
        return hexpdc::run_task(config);
    } catch (const hexpdc::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_compare(const std::string& analytic_path, const std::string& sim_path,
                const std::string& out_path) {
    try {
        const auto rep = hexpdc::compare_report(hexpdc::read_text_file(analytic_path),
                                                hexpdc::read_text_file(sim_path));
        std::cout << rep.human_readable();
        if (!out_path.empty()) hexpdc::write_text_file(out_path, rep.machine_readable() + "\n");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "compare failed: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace

// selfcheck body lives in tools/selfcheck.cpp
int hexpdc_selfcheck(bool verbose);

int main(int argc, char** argv) {
    CLI::App app{"hexpdc: parametric down-conversion in hexagonally poled nonlinear crystals"};
    app.set_version_flag("--version", hexpdc::kVersion);
    app.require_subcommand(1);

    std::string config_path, output_dir, profile, analytic_path, sim_path, compare_out;
    std::uint64_t seed = 0;
    int threads = -1;
    bool verbose = false;

    auto* run = app.add_subcommand("run", "execute the task described by a config file");
    run->add_option("-c,--config", config_path, "JSON experiment config")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the RNG seed");
    run->add_option("--threads", threads, "worker thread count (0 = hardware)");
    run->add_option("--output", output_dir, "output directory override");
    run->add_option("--profile", profile, "grid profile: desk, paper, sweep")
        ->check(CLI::IsMember({"desk", "paper", "sweep"}));

    auto* compare =
        app.add_subcommand("compare", "tabulate analytic vs simulated intensity dumps");
    compare->add_option("analytic", analytic_path, "analytic state/intensity dump (JSON)")
        ->required();
    compare->add_option("simulation", sim_path, "simulation intensity dump (JSON)")->required();
    compare->add_option("-o,--output", compare_out, "write the machine-readable report here");

    auto* selfcheck =
        app.add_subcommand("selfcheck", "run the built-in fast analytic acceptance checks");
    selfcheck->add_flag("-v,--verbose", verbose, "print each check");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(config_path, seed, seed_opt->count() > 0, threads, output_dir, profile);
    if (compare->parsed()) return cmd_compare(analytic_path, sim_path, compare_out);
    if (selfcheck->parsed()) return hexpdc_selfcheck(verbose) == 0 ? 0 : kExitSelfcheck;
    return 0;
}
