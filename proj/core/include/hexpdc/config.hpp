#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hexpdc/ensemble.hpp"
#include "hexpdc/qpm.hpp"

namespace hexpdc {

enum class Task {
    qpm_curves,
    three_mode,
    four_mode,
    fock_conditional,
    fibonacci,
    wigner_run,
    gain_exponent_sweep,
};

const char* to_string(Task t);
std::optional<Task> task_from_string(const std::string& s);

/// Grid/pulse presets sized for the shipped LiTaO3 crystal. "desk" is
/// laptop-runnable; "paper" is the full-resolution 512x256x512 grid (pump
/// waist and duration are clamped to what the periodic box admits).
struct Profile {
    GridSpec grid;
    PumpPulse pulse;  // tilt and g0*l_c filled from the config
    double dealias_fraction_x = 0.66;
    double dealias_fraction_y = 0.66;
    double dealias_fraction_t = 0.95;
};
Profile desk_profile();
Profile paper_profile();
Profile sweep_profile();  // smaller grid for gain-exponent campaigns

/// Fully resolved experiment configuration. Parsed from JSON (schema
/// hexpdc-config-v1); validation collects every failure before throwing.
struct ExperimentConfig {
    Task task = Task::fibonacci;

    // crystal
    double poling_period = 8.3e-6;  // m
    double crystal_length = 0.010;  // m
    double d33 = 17e-12;            // m/V
    double d01_over_d33 = 0.29;
    std::string sellmeier_source = "builtin:litao3_e";  // or builtin:toy or a path
    std::vector<double> toy_indices = {2.2, 2.15, 2.1};

    // carriers
    double pump_wavelength = 527.5e-9;  // m
    std::optional<double> signal_wavelength;  // m; empty = auto-tune to the shared mode
    double auto_bracket_lo_um = 0.62;
    double auto_bracket_hi_um = 0.90;

    // pump
    double q_p_over_Gx = 0.0;
    double g0_lc = 1.0;
    PumpPulse pulse;  // duration/waists/photons; tilt & g0_lc derived

    // run control
    std::string profile = "desk";
    std::optional<GridSpec> grid_override;
    int ensemble_size = 8;
    std::uint64_t seed = 1;
    int threads = 0;
    int steps = 400;
    bool pump_depletion = false;
    std::string output_dir = "hexpdc_out";
    bool overwrite = false;

    // task-specific
    int fock_N_max = 60;
    int fock_condition_N = 1;
    double fibonacci_z_max = 20.0;
    int fibonacci_steps = 4000;
    std::vector<double> sweep_g0lc = {3.0, 4.0, 5.0};
    int sweep_realizations = 12;
    double qpm_lambda_lo_um = 0.64;
    double qpm_lambda_hi_um = 0.80;
    int qpm_points = 256;

    std::string raw_json;  // canonical source text for manifests
};

ExperimentConfig parse_config_json(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

/// Applies HEXPDC_OUTPUT_DIR and HEXPDC_THREADS (the only supported
/// environment overrides).
void apply_env_overrides(ExperimentConfig& config);

/// Cross-field validation (resonance consistency, grid margins, pump fit).
/// Throws ConfigError listing all failures at once.
void validate(const ExperimentConfig& config);

/// Assembled physics objects shared by the tasks.
struct ResolvedPhysics {
    SellmeierSet models;
    LatticeConfig lattice;
    DispersionSet disp;
    PumpConfig pump;  // g0 = g0_lc / l_c
    double q_p;       // rad/m
};
ResolvedPhysics resolve_physics(const ExperimentConfig& config);

/// FNV-1a hash of the canonical config text, hex-encoded; goes into run
/// manifests so artifacts are reproducible bit-for-bit.
std::string config_hash(const std::string& canonical_text);

/// Writes manifest.json into dir: schema, version, config hash + full config,
/// seed, task, status. Every artifact directory gets one.
void write_manifest(const std::string& dir, const ExperimentConfig& config,
                    const std::string& status, const std::vector<std::string>& outputs);

}  // namespace hexpdc
