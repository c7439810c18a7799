#pragma once

#include <string>
#include <vector>

#include "hexpdc/config.hpp"
#include "hexpdc/gaussian_state.hpp"

namespace hexpdc {

/// Executes the configured task, writing artifacts + manifest into
/// config.output_dir. Returns process exit status: 0 success, 2 config
/// error, 3 runtime divergence (per the CLI contract).
int run_task(const ExperimentConfig& config);

/// JSON dump of an analytic Gaussian state (schema hexpdc-state-v1):
/// labels, covariance row-major, mean, per-mode intensities.
std::string state_dump_json(const GaussianModeState& state);
GaussianModeState state_from_dump(const std::string& json_text);

/// Analytic-vs-simulation discrepancy table. Inputs are two dump files:
/// an analytic state dump (hexpdc-state-v1) or bare intensity dump, and a
/// simulation intensity dump (hexpdc-simdump-v1). Mode labels must match.
struct CompareRow {
    std::string label;
    double analytic;
    double simulated;
    double rel_err;
};
struct CompareReport {
    std::vector<CompareRow> rows;
    /// <n_b>/<n_c> measured against phi^2 when the 4-mode labels are present;
    /// NaN otherwise.
    double bc_ratio_simulated;
    double bc_ratio_target;
    std::string human_readable() const;
    std::string machine_readable() const;  // JSON
    double max_rel_err() const;
};
CompareReport compare_report(const std::string& analytic_dump_json,
                             const std::string& sim_dump_json);

/// Simulation intensity dump (hexpdc-simdump-v1).
std::string sim_dump_json(const std::vector<std::string>& labels,
                          const std::vector<double>& intensities,
                          const std::vector<double>& stderrs, int realizations);

}  // namespace hexpdc
