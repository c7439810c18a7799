#include "hexpdc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"
#include "hexpdc/version.hpp"

namespace hexpdc {

const char* to_string(Task t) {
    switch (t) {
        case Task::qpm_curves: return "qpm_curves";
        case Task::three_mode: return "three_mode";
        case Task::four_mode: return "four_mode";
        case Task::fock_conditional: return "fock_conditional";
        case Task::fibonacci: return "fibonacci";
        case Task::wigner_run: return "wigner_run";
        case Task::gain_exponent_sweep: return "gain_exponent_sweep";
    }
    return "?";
}

std::optional<Task> task_from_string(const std::string& s) {
    for (Task t : {Task::qpm_curves, Task::three_mode, Task::four_mode, Task::fock_conditional,
                   Task::fibonacci, Task::wigner_run, Task::gain_exponent_sweep})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

Profile desk_profile() {
    Profile p;
    p.grid = GridSpec{256, 64, 256, 896e-6, 352e-6, 14.6e-12};
    p.pulse.duration_fwhm = 3.0e-12;
    p.pulse.waist_x = 200e-6;
    p.pulse.waist_y = 80e-6;
    p.pulse.photons = 1e12;
    return p;
}

Profile paper_profile() {
    Profile p;
    p.grid = GridSpec{512, 256, 512, 1690e-6, 1408e-6, 21.4e-12};
    p.pulse.duration_fwhm = 5.0e-12;
    p.pulse.waist_x = 400e-6;
    p.pulse.waist_y = 200e-6;
    p.pulse.photons = 1e12;
    return p;
}

Profile sweep_profile() {
    Profile p;
    p.grid = GridSpec{128, 32, 128, 448e-6, 335e-6, 33.5e-12};
    p.pulse.duration_fwhm = 8.0e-12;
    p.pulse.waist_x = 100e-6;
    p.pulse.waist_y = 80e-6;
    p.pulse.photons = 1e12;
    return p;
}

namespace {

template <typename T>
void read_into(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("JSON parse error: ") + e.what()});
    }

    std::vector<std::string> failures;
    ExperimentConfig c;
    c.raw_json = json_text;

    if (const auto schema = j.value("schema", std::string()); schema != "hexpdc-config-v1")
        failures.push_back("schema must be \"hexpdc-config-v1\", got \"" + schema + "\"");

    if (!j.contains("task")) {
        failures.push_back("missing required field: task");
    } else {
        const auto ts = j.at("task").get<std::string>();
        if (auto t = task_from_string(ts))
            c.task = *t;
        else
            failures.push_back("unknown task: " + ts);
    }

    if (j.contains("crystal")) {
        const auto& cr = j.at("crystal");
        if (cr.contains("poling_period_um")) c.poling_period = cr.at("poling_period_um").get<double>() * 1e-6;
        if (cr.contains("length_mm")) c.crystal_length = cr.at("length_mm").get<double>() * 1e-3;
        if (cr.contains("d33_pm_per_V")) c.d33 = cr.at("d33_pm_per_V").get<double>() * 1e-12;
        read_into(cr, "d01_over_d33", c.d01_over_d33);
        read_into(cr, "sellmeier", c.sellmeier_source);
        read_into(cr, "toy_indices", c.toy_indices);
    }

    if (j.contains("carriers")) {
        const auto& ca = j.at("carriers");
        if (ca.contains("pump_wavelength_nm"))
            c.pump_wavelength = ca.at("pump_wavelength_nm").get<double>() * 1e-9;
        if (ca.contains("signal_wavelength_nm")) {
            const auto& sw = ca.at("signal_wavelength_nm");
            if (sw.is_string()) {
                if (sw.get<std::string>() != "auto")
                    failures.push_back("signal_wavelength_nm must be a number or \"auto\"");
            } else {
                c.signal_wavelength = sw.get<double>() * 1e-9;
            }
        }
        if (ca.contains("auto_bracket_um")) {
            const auto br = ca.at("auto_bracket_um").get<std::vector<double>>();
            if (br.size() == 2) {
                c.auto_bracket_lo_um = br[0];
                c.auto_bracket_hi_um = br[1];
            } else {
                failures.push_back("auto_bracket_um must have exactly 2 entries");
            }
        }
    }

    if (j.contains("pump")) {
        const auto& pu = j.at("pump");
        read_into(pu, "q_p_over_Gx", c.q_p_over_Gx);
        read_into(pu, "g0_lc", c.g0_lc);
        if (pu.contains("q_py_over_Gx") && pu.at("q_py_over_Gx").get<double>() != 0.0)
            failures.push_back(
                "out-of-plane pump tilt (q_py != 0) is undefined in this model; "
                "only the in-plane tilt q_p is supported");
        if (pu.contains("pulse")) {
            const auto& pl = pu.at("pulse");
            if (pl.contains("duration_fwhm_ps"))
                c.pulse.duration_fwhm = pl.at("duration_fwhm_ps").get<double>() * 1e-12;
            if (pl.contains("waist_x_um")) c.pulse.waist_x = pl.at("waist_x_um").get<double>() * 1e-6;
            if (pl.contains("waist_y_um")) c.pulse.waist_y = pl.at("waist_y_um").get<double>() * 1e-6;
            read_into(pl, "photons", c.pulse.photons);
        }
    }

    read_into(j, "profile", c.profile);
    if (c.profile != "desk" && c.profile != "paper" && c.profile != "sweep")
        failures.push_back("profile must be one of desk, paper, sweep");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        GridSpec gs;
        read_into(g, "nx", gs.nx);
        read_into(g, "ny", gs.ny);
        read_into(g, "nt", gs.nt);
        if (g.contains("Lx_um")) gs.Lx = g.at("Lx_um").get<double>() * 1e-6;
        if (g.contains("Ly_um")) gs.Ly = g.at("Ly_um").get<double>() * 1e-6;
        if (g.contains("T_ps")) gs.T = g.at("T_ps").get<double>() * 1e-12;
        c.grid_override = gs;
    }

    if (j.contains("run")) {
        const auto& r = j.at("run");
        read_into(r, "ensemble_size", c.ensemble_size);
        read_into(r, "seed", c.seed);
        read_into(r, "threads", c.threads);
        read_into(r, "steps", c.steps);
        read_into(r, "pump_depletion", c.pump_depletion);
        read_into(r, "output_dir", c.output_dir);
        read_into(r, "overwrite", c.overwrite);
    }

    if (j.contains("fock")) {
        read_into(j.at("fock"), "N_max", c.fock_N_max);
        read_into(j.at("fock"), "condition_N", c.fock_condition_N);
    }
    if (j.contains("fibonacci")) {
        read_into(j.at("fibonacci"), "z_max", c.fibonacci_z_max);
        read_into(j.at("fibonacci"), "steps", c.fibonacci_steps);
    }
    if (j.contains("gain_sweep")) {
        read_into(j.at("gain_sweep"), "g0_lc_values", c.sweep_g0lc);
        read_into(j.at("gain_sweep"), "realizations_per_gain", c.sweep_realizations);
    }
    if (j.contains("qpm")) {
        read_into(j.at("qpm"), "lambda_lo_um", c.qpm_lambda_lo_um);
        read_into(j.at("qpm"), "lambda_hi_um", c.qpm_lambda_hi_um);
        read_into(j.at("qpm"), "points", c.qpm_points);
    }

    if (!failures.empty()) throw ConfigError(std::move(failures));
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

void apply_env_overrides(ExperimentConfig& config) {
    if (const char* dir = std::getenv("HEXPDC_OUTPUT_DIR")) config.output_dir = dir;
    if (const char* th = std::getenv("HEXPDC_THREADS")) config.threads = std::atoi(th);
}

void validate(const ExperimentConfig& config) {
    std::vector<std::string> failures;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) failures.push_back(msg);
    };
    check(config.poling_period > 0, "poling period must be > 0");
    check(config.crystal_length > 0, "crystal length must be > 0");
    check(config.d33 > 0, "d33 must be > 0");
    check(config.d01_over_d33 > 0, "d01/d33 must be > 0");
    check(config.pump_wavelength > 0, "pump wavelength must be > 0");
    check(config.g0_lc >= 0, "g0*l_c must be >= 0");
    check(config.ensemble_size >= 1, "ensemble_size must be >= 1");
    check(config.steps >= 1, "steps must be >= 1");
    check(config.fock_N_max >= 0, "fock N_max must be >= 0");
    check(config.fock_condition_N >= 0, "fock condition_N must be >= 0");
    check(config.fock_condition_N <= config.fock_N_max, "condition_N must be <= N_max");
    check(config.fibonacci_steps >= 1, "fibonacci steps must be >= 1");
    check(!config.sweep_g0lc.empty(), "gain sweep needs at least one g0*l_c value");
    check(config.sweep_realizations >= 2, "gain sweep needs >= 2 realizations per gain");

    if (config.task == Task::four_mode) {
        const double det =
            std::min(std::abs(config.q_p_over_Gx - 1.0), std::abs(config.q_p_over_Gx + 1.0));
        check(det < 1e-9,
              "four_mode task requires the resonant pump tilt q_p = +/-G_x "
              "(resonance detuning " + std::to_string(det) + ")");
    }

    if (config.task == Task::wigner_run || config.task == Task::gain_exponent_sweep) {
        Profile prof = config.profile == "paper"  ? paper_profile()
                       : config.profile == "sweep" ? sweep_profile()
                                                   : desk_profile();
        const GridSpec grid = config.grid_override.value_or(prof.grid);
        // surface every grid/pulse violation in this pass as well
        try {
            LatticeConfig lattice = LatticeConfig::hexagonal(config.poling_period, config.d33,
                                                             config.d01_over_d33);
            grid.validate(lattice.G_x, config.q_p_over_Gx * lattice.G_x);
        } catch (const ConfigError& e) {
            failures.insert(failures.end(), e.failures.begin(), e.failures.end());
        }
        PumpPulse pulse = config.pulse.duration_fwhm > 0 ? config.pulse : prof.pulse;
        try {
            pulse.validate(grid);
        } catch (const ConfigError& e) {
            failures.insert(failures.end(), e.failures.begin(), e.failures.end());
        }
    }

    if (!failures.empty()) throw ConfigError(std::move(failures));
}

ResolvedPhysics resolve_physics(const ExperimentConfig& config) {
    ResolvedPhysics phys;
    phys.lattice = LatticeConfig::hexagonal(config.poling_period, config.d33, config.d01_over_d33);

    if (config.sellmeier_source == "builtin:litao3_e") {
        phys.models = builtin_litao3_e();
    } else if (config.sellmeier_source == "builtin:toy") {
        if (config.toy_indices.size() != 3)
            throw ConfigError({"toy_indices must have 3 entries (pump, signal, idler)"});
        phys.models =
            builtin_toy(config.toy_indices[0], config.toy_indices[1], config.toy_indices[2]);
    } else {
        phys.models = load_sellmeier_file(config.sellmeier_source);
    }

    phys.q_p = config.q_p_over_Gx * phys.lattice.G_x;
    const double omega_p = wavelength_to_omega(config.pump_wavelength);
    double omega_s;
    if (config.signal_wavelength) {
        omega_s = wavelength_to_omega(*config.signal_wavelength);
    } else {
        omega_s = tune_signal_carrier(phys.models, omega_p, phys.lattice, phys.q_p,
                                      config.auto_bracket_lo_um, config.auto_bracket_hi_um);
    }
    phys.disp = DispersionSet{phys.models, WaveTriplet::from_pump_signal(omega_p, omega_s)};
    phys.pump = PumpConfig{phys.q_p, config.g0_lc / config.crystal_length, config.crystal_length};
    return phys;
}

std::string config_hash(const std::string& canonical_text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canonical_text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& dir, const ExperimentConfig& config,
                    const std::string& status, const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["schema"] = "hexpdc-manifest-v1";
    m["version"] = kVersion;
    m["task"] = to_string(config.task);
    m["seed"] = config.seed;
    m["config_hash"] = config_hash(config.raw_json);
    m["config"] = nlohmann::json::parse(config.raw_json.empty() ? "{}" : config.raw_json);
    m["status"] = status;
    m["outputs"] = outputs;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / "manifest.json", std::ios::trunc);
    out << m.dump(2) << '\n';
}

}  // namespace hexpdc
