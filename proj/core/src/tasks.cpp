#include "hexpdc/tasks.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"
#include "hexpdc/fock.hpp"
#include "hexpdc/mode_systems.hpp"

namespace hexpdc {

namespace fs = std::filesystem;

std::string state_dump_json(const GaussianModeState& state) {
    nlohmann::json j;
    j["schema"] = "hexpdc-state-v1";
    j["labels"] = state.labels();
    const auto& C = state.covariance();
    std::vector<double> cov(C.size());
    for (int r = 0; r < C.rows(); ++r)
        for (int c = 0; c < C.cols(); ++c) cov[r * C.cols() + c] = C(r, c);
    j["covariance"] = cov;
    std::vector<double> mean(state.mean().data(), state.mean().data() + state.mean().size());
    j["mean"] = mean;
    nlohmann::json intensities;
    for (int m = 0; m < state.n_modes(); ++m)
        intensities[state.labels()[m]] = state.mean_photon_number(m);
    j["intensities"] = intensities;
    return j.dump(2);
}

GaussianModeState state_from_dump(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto state = GaussianModeState::vacuum(labels);
    const auto cov = j.at("covariance").get<std::vector<double>>();
    const int n = 2 * static_cast<int>(labels.size());
    if (static_cast<int>(cov.size()) != n * n)
        throw std::invalid_argument("state dump covariance size mismatch");
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) state.covariance()(r, c) = cov[r * n + c];
    const auto mean = j.at("mean").get<std::vector<double>>();
    for (int i = 0; i < n && i < static_cast<int>(mean.size()); ++i) state.mean()(i) = mean[i];
    return state;
}

std::string sim_dump_json(const std::vector<std::string>& labels,
                          const std::vector<double>& intensities,
                          const std::vector<double>& stderrs, int realizations) {
    nlohmann::json j;
    j["schema"] = "hexpdc-simdump-v1";
    j["realizations"] = realizations;
    nlohmann::json ints, errs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ints[labels[i]] = intensities[i];
        if (i < stderrs.size()) errs[labels[i]] = stderrs[i];
    }
    j["intensities"] = ints;
    j["stderr"] = errs;
    return j.dump(2);
}

CompareReport compare_report(const std::string& analytic_dump_json,
                             const std::string& sim_dump_json_text) {
    const auto ja = nlohmann::json::parse(analytic_dump_json);
    const auto js = nlohmann::json::parse(sim_dump_json_text);
    if (!ja.contains("intensities") || !js.contains("intensities"))
        throw std::invalid_argument("dumps must carry an 'intensities' object");

    const auto& ia = ja.at("intensities");
    const auto& is = js.at("intensities");
    for (const auto& [label, v] : is.items())
        if (!ia.contains(label))
            throw std::invalid_argument("mode label mismatch: simulation has '" + label +
                                        "' but the analytic dump does not");

    CompareReport rep;
    rep.bc_ratio_simulated = std::numeric_limits<double>::quiet_NaN();
    rep.bc_ratio_target = kGoldenRatio * kGoldenRatio;
    for (const auto& [label, v] : ia.items()) {
        if (!is.contains(label))
            throw std::invalid_argument("mode label mismatch: analytic dump has '" + label +
                                        "' but the simulation does not");
        CompareRow row;
        row.label = label;
        row.analytic = v.get<double>();
        row.simulated = is.at(label).get<double>();
        const double denom = std::max(std::abs(row.analytic), 1e-300);
        row.rel_err = std::abs(row.simulated - row.analytic) / denom;
        rep.rows.push_back(row);
    }
    if (is.contains("b_s") && is.contains("c_s")) {
        const double nb = 0.5 * (is.at("b_s").get<double>() + is.value("b_i", is.at("b_s").get<double>()));
        const double nc = 0.5 * (is.at("c_s").get<double>() + is.value("c_i", is.at("c_s").get<double>()));
        rep.bc_ratio_simulated = nb / nc;
    }
    return rep;
}

double CompareReport::max_rel_err() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.rel_err);
    return m;
}

std::string CompareReport::human_readable() const {
    std::ostringstream os;
    os.precision(6);
    os << "mode        analytic        simulated       rel_err\n";
    for (const auto& r : rows) {
        os << r.label;
        for (std::size_t i = r.label.size(); i < 12; ++i) os << ' ';
        os << std::scientific << r.analytic << "    " << r.simulated << "    " << r.rel_err
           << '\n';
    }
    if (!std::isnan(bc_ratio_simulated))
        os << "shared/unshared intensity ratio: " << bc_ratio_simulated << " (golden-ratio target "
           << bc_ratio_target << ")\n";
    return os.str();
}

std::string CompareReport::machine_readable() const {
    nlohmann::json j;
    j["schema"] = "hexpdc-compare-v1";
    nlohmann::json rows_j = nlohmann::json::array();
    for (const auto& r : rows)
        rows_j.push_back({{"label", r.label},
                          {"analytic", r.analytic},
                          {"simulated", r.simulated},
                          {"rel_err", r.rel_err}});
    j["rows"] = rows_j;
    j["max_rel_err"] = max_rel_err();
    if (!std::isnan(bc_ratio_simulated)) {
        j["bc_ratio_simulated"] = bc_ratio_simulated;
        j["bc_ratio_target"] = bc_ratio_target;
    }
    return j.dump(2);
}

namespace {

struct TaskContext {
    fs::path dir;
    std::vector<std::string> outputs;

    void write(const std::string& name, const std::string& content) {
        fs::create_directories(dir);
        write_text_file((dir / name).string(), content);
        outputs.push_back(name);
    }
};

int task_fibonacci(const ExperimentConfig& config, TaskContext& ctx) {
    const auto traj = quadrature_fibonacci(config.fibonacci_z_max, config.fibonacci_steps);
    std::ostringstream csv;
    csv.precision(12);
    csv << "z_over_g0,B,C,B_discrete_recursion\n";
    for (std::size_t i = 0; i < traj.z.size(); ++i)
        csv << traj.z[i] << ',' << traj.B[i] << ',' << traj.C[i] << ',' << traj.B_recursion[i]
            << '\n';
    ctx.write("fibonacci_trajectory.csv", csv.str());

    const auto ints = fibonacci_integers(16);
    std::ostringstream ics;
    ics << "n,F,N\n";
    for (std::size_t i = 0; i < ints.size(); ++i)
        ics << i << ',' << ints[i].F << ',' << ints[i].N << '\n';
    ctx.write("fibonacci_integers.csv", ics.str());

    nlohmann::json sum;
    sum["final_ratio_B_over_C"] = traj.final_ratio;
    sum["golden_ratio"] = kGoldenRatio;
    sum["eigenvalues"] = {traj.eigenvalues(0), traj.eigenvalues(1)};
    ctx.write("summary.json", sum.dump(2) + "\n");
    return 0;
}

int task_qpm_curves(const ExperimentConfig& config, TaskContext& ctx) {
    const auto phys = resolve_physics(config);
    const double om_s = phys.disp.carriers.omega_s;
    const double om_lo = wavelength_to_omega(config.qpm_lambda_hi_um * 1e-6) - om_s;
    const double om_hi = wavelength_to_omega(config.qpm_lambda_lo_um * 1e-6) - om_s;

    CurveScan scan;
    scan.section_qx = phys.q_p;
    scan.omega_min = om_lo;
    scan.omega_max = om_hi;
    scan.omega_points = config.qpm_points;
    scan.qy_min = -0.8 * 1.5 * phys.lattice.G_x;
    scan.qy_max = 0.8 * 1.5 * phys.lattice.G_x;
    scan.qy_brackets = 2048;
    for (Branch b : {Branch::G01, Branch::G10}) {
        const auto pts = phase_matching_curve(phys.disp, phys.lattice, phys.pump, b, scan);
        ctx.write(std::string("curve_signal_") + to_string(b) + ".csv",
                  curve_csv(pts, phys.disp, WaveRole::signal));
    }

    SharedModeScan sscan;
    sscan.omega_min = om_lo;
    sscan.omega_max = om_hi;
    sscan.omega_points = config.qpm_points;
    sscan.qy_min = scan.qy_min;
    sscan.qy_max = scan.qy_max;
    const auto shared = shared_modes(phys.disp, phys.lattice, phys.pump, sscan);
    std::ostringstream os;
    os.precision(12);
    os << "Omega_rad_s,lambda_nm,q_x_rad_m,q_y_rad_m,idler1_qx_rad_m,idler2_qx_rad_m\n";
    for (const auto& m : shared) {
        const auto [p1, p2] = coupled_partners(phys.pump, phys.lattice, m);
        os << m.Omega << ',' << omega_to_wavelength(om_s + m.Omega) * 1e9 << ',' << m.q_x << ','
           << m.q_y << ',' << p1.q_x << ',' << p2.q_x << '\n';
    }
    ctx.write("shared_modes.csv", os.str());

    // the (lambda, q_x) section at q_y = 0 in which the branch curves cross
    SectionScan sec;
    sec.section_qy = 0.0;
    sec.omega_min = om_lo;
    sec.omega_max = om_hi;
    sec.omega_points = config.qpm_points;
    sec.qx_min = -1.9 * phys.lattice.G_x;
    sec.qx_max = 1.9 * phys.lattice.G_x;
    for (Branch b : {Branch::G01, Branch::G10}) {
        const auto pts = phase_matching_section_qx(phys.disp, phys.lattice, phys.pump, b, sec);
        std::ostringstream ss;
        ss.precision(12);
        ss << "Omega_rad_s,lambda_nm,q_x_rad_m,branch,residual,tangency_flag\n";
        for (const auto& p : pts)
            ss << p.Omega << ',' << omega_to_wavelength(om_s + p.Omega) * 1e9 << ',' << p.q_x
               << ',' << to_string(p.branch) << ',' << p.residual << ',' << (p.tangency ? 1 : 0)
               << '\n';
        ctx.write(std::string("section_qy0_signal_") + to_string(b) + ".csv", ss.str());
    }

    nlohmann::json sum;
    sum["lambda_signal_tuned_nm"] = omega_to_wavelength(om_s) * 1e9;
    sum["resonance_detuning"] = resonance_detuning(phys.pump, phys.lattice);
    sum["G_x_rad_m"] = phys.lattice.G_x;
    sum["G_z_rad_m"] = phys.lattice.G_z;
    ctx.write("summary.json", sum.dump(2) + "\n");
    return 0;
}

int task_analytic_modes(const ExperimentConfig& config, TaskContext& ctx) {
    const auto phys = resolve_physics(config);
    const double D = 0.0;  // phase-matched shared mode; carriers are tuned to it
    const bool four = config.task == Task::four_mode;
    const auto state = four ? solve_four_mode_resonant(phys.pump, D)
                            : solve_three_mode(phys.pump, D);
    ctx.write(four ? "state_four_mode.json" : "state_three_mode.json", state_dump_json(state));

    const auto oracle = integrate_ode_oracle(
        four ? ModeSystem::four_mode : ModeSystem::three_mode, phys.pump, D, 4096);
    double max_diff = 0.0;
    for (int r = 0; r < state.covariance().rows(); ++r)
        for (int c = 0; c < state.covariance().cols(); ++c)
            max_diff = std::max(max_diff,
                                std::abs(state.covariance()(r, c) - oracle.covariance()(r, c)));

    const auto rep = correlations(state);
    nlohmann::json sum;
    sum["g0_lc"] = config.g0_lc;
    sum["covariance_vs_ode_oracle_max_abs_diff"] = max_diff;
    for (int m = 0; m < state.n_modes(); ++m)
        sum["intensities"][state.labels()[m]] = state.mean_photon_number(m);
    if (four) {
        const double nb = state.mean_photon_number(0);
        const double nc = state.mean_photon_number(1);
        sum["bc_intensity_ratio"] = nb / nc;
        sum["phi_squared"] = kGoldenRatio * kGoldenRatio;
    } else {
        // twin-beam variance between the shared signal and the idler sum mode
        const int i1 = 1, i2 = 2;
        sum["idler_cross_covariance"] = rep.photon_covariance(i1, i2);
    }
    ctx.write("summary.json", sum.dump(2) + "\n");
    return 0;
}

int task_fock(const ExperimentConfig& config, TaskContext& ctx) {
    const auto coeff =
        bogoliubov(config.g0_lc / config.crystal_length, std::sqrt(2.0), 0.0,
                   config.crystal_length);
    const auto amps = tmsv_amplitudes(coeff, config.fock_N_max);
    const auto split = split_idler_state(amps.c, config.fock_N_max);
    const auto cond = condition_on_signal(split, config.fock_condition_N);

    std::ostringstream cs;
    cs.precision(12);
    cs << "N,abs_c_N,prob\n";
    for (std::size_t N = 0; N < amps.c.size(); ++N)
        cs << N << ',' << std::abs(amps.c[N]) << ',' << std::norm(amps.c[N]) << '\n';
    ctx.write("tmsv_amplitudes.csv", cs.str());

    std::ostringstream os;
    os.precision(12);
    os << "k,amplitude_re,amplitude_im,prob,binomial_exact\n";
    const int N = config.fock_condition_N;
    const auto exact = conditional_distribution_exact(N);
    for (int k = 0; k <= N; ++k) {
        const auto a = cond.at({k, N - k});
        os << k << ',' << a.real() << ',' << a.imag() << ',' << std::norm(a) << ','
           << static_cast<double>(exact[k].first) / static_cast<double>(exact[k].second) << '\n';
    }
    ctx.write("conditional_state.csv", os.str());

    nlohmann::json sum;
    sum["N_max"] = config.fock_N_max;
    sum["condition_N"] = N;
    sum["norm_deficit"] = amps.norm_deficit;
    sum["squeeze_r"] = coeff.squeeze_r;
    ctx.write("summary.json", sum.dump(2) + "\n");
    return 0;
}

int task_wigner_run(const ExperimentConfig& config, TaskContext& ctx) {
    const auto phys = resolve_physics(config);
    Profile prof = config.profile == "paper"  ? paper_profile()
                   : config.profile == "sweep" ? sweep_profile()
                                               : desk_profile();
    if (config.grid_override) prof.grid = *config.grid_override;
    PumpPulse pulse = config.pulse.duration_fwhm > 0 ? config.pulse : prof.pulse;
    pulse.tilt_qp = phys.q_p;
    pulse.g0_lc = config.g0_lc;

    EnsembleConfig ec;
    ec.grid = prof.grid;
    ec.pulse = pulse;
    ec.medium = PropagationMedium{phys.disp, phys.lattice, config.crystal_length, 0.0,
                                  config.pump_depletion};
    ec.steps = config.steps;
    ec.realizations = config.ensemble_size;
    ec.threads = config.threads;
    ec.seed = config.seed;
    ec.mask_override =
        SpectralMask::anti_alias(prof.grid, prof.dealias_fraction_x, prof.dealias_fraction_y,
                                 prof.dealias_fraction_t);
    ec.checkpoint_dir = (ctx.dir / "checkpoints").string();

    const auto res = run_ensemble(ec);

    ArrayFile maps;
    maps.set_meta("realizations", std::to_string(res.completed));
    maps.set_meta("g0_lc", std::to_string(config.g0_lc));
    const auto& M = res.maps;
    const std::size_t nx = M.qx.size(), ny = M.qy.size(), nt = M.omega.size();
    maps.put("qx", M.qx, {nx});
    maps.put("qy", M.qy, {ny});
    maps.put("omega", M.omega, {nt});
    maps.put("lambda_signal", M.lambda_signal, {nt});
    maps.put("lambda_idler", M.lambda_idler, {nt});
    maps.put("xy_signal", M.photon_xy(FieldGrid::kSignal, prof.grid.nt), {nx, ny});
    maps.put("xy_idler", M.photon_xy(FieldGrid::kIdler, prof.grid.nt), {nx, ny});
    maps.put("xl_signal", M.photon_xl(FieldGrid::kSignal, prof.grid.ny), {nx, nt});
    maps.put("xl_idler", M.photon_xl(FieldGrid::kIdler, prof.grid.ny), {nx, nt});
    maps.put("yl_signal", M.photon_yl(FieldGrid::kSignal, prof.grid.nx), {ny, nt});
    maps.put("yl_idler", M.photon_yl(FieldGrid::kIdler, prof.grid.nx), {ny, nt});
    fs::create_directories(ctx.dir);
    maps.save((ctx.dir / "far_field_maps.bin").string());
    ctx.outputs.push_back("far_field_maps.bin");

    ctx.write("xy_signal.csv", matrix_csv("qx_rad_m", M.qx, "qy_rad_m", M.qy,
                                          M.photon_xy(FieldGrid::kSignal, prof.grid.nt)));
    ctx.write("xy_idler.csv", matrix_csv("qx_rad_m", M.qx, "qy_rad_m", M.qy,
                                         M.photon_xy(FieldGrid::kIdler, prof.grid.nt)));
    ctx.write("line_profile_signal.csv",
              trace_csv("qx_rad_m", M.qx, "photons",
                        line_profile_qx(M, FieldGrid::kSignal, prof.grid.nt)));

    nlohmann::json sum;
    sum["realizations"] = res.completed;
    sum["resumed_from_checkpoint"] = res.resumed_from_checkpoint;
    sum["zeroed_photons_signal"] = res.step_report.zeroed_photons_signal;
    sum["delta_k_bar"] = ec.medium.delta_k_bar();
    sum["lambda_signal_nm"] = omega_to_wavelength(phys.disp.carriers.omega_s) * 1e9;
    ctx.write("summary.json", sum.dump(2) + "\n");
    return 0;
}

int task_gain_sweep(const ExperimentConfig& config, TaskContext& ctx) {
    const auto phys = resolve_physics(config);
    Profile prof = config.profile == "desk" ? sweep_profile()
                   : config.profile == "paper" ? paper_profile()
                                               : sweep_profile();
    if (config.grid_override) prof.grid = *config.grid_override;

    std::vector<std::array<double, 3>> points;
    nlohmann::json runs = nlohmann::json::array();
    for (double g : config.sweep_g0lc) {
        PumpPulse pulse = config.pulse.duration_fwhm > 0 ? config.pulse : prof.pulse;
        pulse.tilt_qp = phys.q_p;
        pulse.g0_lc = g;
        EnsembleConfig ec;
        ec.grid = prof.grid;
        ec.pulse = pulse;
        ec.medium = PropagationMedium{phys.disp, phys.lattice, config.crystal_length, 0.0,
                                      config.pump_depletion};
        ec.steps = config.steps;
        ec.realizations = config.sweep_realizations;
        ec.threads = config.threads;
        ec.seed = realization_seed(config.seed, static_cast<std::uint64_t>(g * 1000));
        ec.mask_override =
            SpectralMask::anti_alias(prof.grid, prof.dealias_fraction_x, prof.dealias_fraction_y,
                                     prof.dealias_fraction_t);
        const auto res = run_ensemble(ec);

        const std::vector<double> lines =
            resonance_detuning(phys.pump, phys.lattice) < 1e-9
                ? std::vector<double>{-phys.lattice.G_x, phys.lattice.G_x}
                : std::vector<double>{phys.q_p, -phys.lattice.G_x, phys.lattice.G_x};
        const auto hs = measure_hot_spot(res.maps, FieldGrid::kSignal, prof.grid.nt, phys.q_p,
                                         lines, 0.08 * phys.lattice.G_x);
        points.push_back({g, hs.hot, hs.background});
        runs.push_back({{"g0_lc", g}, {"I_hot", hs.hot}, {"I_background", hs.background}});
    }
    const auto fit = fit_gain_exponent(points);
    nlohmann::json sum;
    sum["points"] = runs;
    sum["exponent"] = fit.slope;
    sum["exponent_stderr"] = fit.slope_stderr;
    sum["adequate_range"] = fit.adequate_range;
    sum["expected_off_resonance"] = std::sqrt(2.0);
    sum["expected_at_resonance"] = kGoldenRatio;
    ctx.write("gain_exponent.json", sum.dump(2) + "\n");
    return 0;
}

}  // namespace

int run_task(const ExperimentConfig& config) {
    TaskContext ctx;
    ctx.dir = config.output_dir;
    if (fs::exists(ctx.dir) && !fs::is_empty(ctx.dir) && !config.overwrite) {
        // idempotent re-runs are allowed, but flag the overwrite
        std::cerr << "note: output directory " << ctx.dir
                  << " exists; artifacts will be overwritten (overwrite flagged)\n";
    }
    int rc = 0;
    std::string status = "completed";
    try {
        switch (config.task) {
            case Task::fibonacci: rc = task_fibonacci(config, ctx); break;
            case Task::qpm_curves: rc = task_qpm_curves(config, ctx); break;
            case Task::three_mode:
            case Task::four_mode: rc = task_analytic_modes(config, ctx); break;
            case Task::fock_conditional: rc = task_fock(config, ctx); break;
            case Task::wigner_run: rc = task_wigner_run(config, ctx); break;
            case Task::gain_exponent_sweep: rc = task_gain_sweep(config, ctx); break;
        }
    } catch (const DivergenceError& e) {
        status = std::string("diverged: ") + e.what();
        rc = 3;
    } catch (const ConfigError&) {
        throw;  // caller maps to exit code 2 before artifacts exist
    } catch (const std::exception& e) {
        status = std::string("failed: ") + e.what();
        rc = 3;
    }
    write_manifest(ctx.dir.string(), config, status, ctx.outputs);
    return rc;
}

}  // namespace hexpdc
