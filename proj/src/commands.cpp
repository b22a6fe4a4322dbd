#include "esph/commands.hpp"

#include "esph/diagnostics.hpp"
#include "esph/dirac.hpp"
#include "esph/errors.hpp"
#include "esph/integrators.hpp"
#include "esph/models.hpp"
#include "esph/mor.hpp"
#include "esph/run_config.hpp"
#include "esph/structure.hpp"
#include "esph/trace_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <string>

namespace esph {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// ESPH_LOG: quiet | error | info (default) | debug
int env_log_level() {
    static const int level = [] {
        const char* v = std::getenv("ESPH_LOG");
        if (!v) return 2;
        const std::string s(v);
        if (s == "quiet") return 0;
        if (s == "error") return 1;
        if (s == "debug") return 3;
        return 2;
    }();
    return level;
}

void log_info(const CommandOptions& opts, const std::string& msg) {
    if (!opts.quiet && env_log_level() >= 2) std::cerr << "[esph] " << msg << "\n";
}

void log_error(const std::string& msg) {
    if (env_log_level() >= 1) std::cerr << "[esph] error: " << msg << "\n";
}

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

ordered_json params_to_json(const Params& params) {
    ordered_json j = ordered_json::object();
    for (const auto& [key, value] : params) j[key] = value;
    return j;
}

ordered_json structure_to_json(const StructureReport& r) {
    return ordered_json{{"n_samples", r.sampled_states.size()},
                        {"max_skew_defect", r.max_skew_defect},
                        {"max_sym_defect", r.max_sym_defect},
                        {"min_eigenvalue_phi", r.min_eigenvalue_phi},
                        {"eps_struct", r.eps_struct},
                        {"eps_psd", r.eps_psd},
                        {"passed", r.passed}};
}

ordered_json balance_to_json(const BalanceReport& r) {
    return ordered_json{{"max_abs_pbe_residual", r.max_abs_pbe_residual},
                        {"min_di_margin", r.min_di_margin},
                        {"cumulative_ebe_defect", r.cumulative_ebe_defect},
                        {"tol_pbe", r.tol_pbe},
                        {"tol_di", r.tol_di},
                        {"passed_pbe", r.passed_pbe},
                        {"passed_di", r.passed_di},
                        {"approximate_scheme", r.approximate_scheme},
                        {"per_step_pbe_residuals", r.per_step_pbe_residuals},
                        {"di_margins", r.di_margins}};
}

void write_report(const std::string& path, const ordered_json& report) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << report.dump(2) << '\n';
    if (!out) throw IoError("failed writing report file: " + path);
}

// "a/b.csv" + "_es" → "a/b_es.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

Params merged_params(const ModelSpec& spec, const Params& overrides) {
    Params params = spec.defaults;
    for (const auto& [key, value] : overrides) params[key] = value;
    return params;
}

void require_x0(const RunConfig& rc, Index state_dim) {
    if (rc.x0.size() != state_dim)
        throw ConfigError("x0 has length " + std::to_string(rc.x0.size()) + ", model expects " +
                          std::to_string(state_dim));
}

ordered_json run_metadata(const char* command, const RunConfig& rc, const std::string& label) {
    return ordered_json{{"command", command},
                        {"model", rc.model},
                        {"label", label},
                        {"params", ordered_json::object()},
                        {"scheme", to_string(rc.sim.scheme)},
                        {"t0", rc.sim.t0},
                        {"t_end", rc.sim.t_end},
                        {"dt", rc.sim.dt},
                        {"seed", rc.seed}};
}

template <typename Fn>
int run_command(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        log_error(e.what());
        return exit_code::config;
    } catch (const IoError& e) {
        log_error(e.what());
        return exit_code::io;
    } catch (const SolverError& e) {
        if (e.step_index >= 0)
            log_error("solver failure at step " + std::to_string(e.step_index) + ": " + e.what());
        else
            log_error(std::string("solver failure: ") + e.what());
        return exit_code::solver;
    } catch (const std::invalid_argument& e) {
        log_error(e.what());
        return exit_code::config;
    } catch (const std::exception& e) {
        log_error(std::string("unexpected failure: ") + e.what());
        return exit_code::solver;
    }
}

}  // namespace

int cmd_simulate(const std::string& config_path, const CommandOptions& opts) {
    return run_command([&]() -> int {
        RunConfig rc = load_run_config(config_path);
        if (opts.seed_override) rc.seed = *opts.seed_override;
        const ModelSpec& spec = find_model(rc.model);
        const Params params = merged_params(spec, rc.model_params);

        const auto start = Clock::now();
        StructureReport structure;
        BalanceReport balance;
        Trajectory traj;
        std::string label;

        if (spec.build_es) {
            const EsPhSystem sys = spec.build_es(params);
            label = sys.label;
            require_x0(rc, sys.state_dim);
            const InputSignal u = make_input_signal(rc.input, sys.io_dim);
            structure = validate_structure(sys, sample_states(sys.state_dim, 100, rc.seed));
            traj = simulate(sys, u, rc.sim, rc.x0);
        } else if (spec.build_iso) {
            const IsoPhSystem sys = spec.build_iso(params);
            label = sys.label;
            require_x0(rc, sys.state_dim);
            const InputSignal u = make_input_signal(rc.input, sys.io_dim);
            structure = validate_structure(sys, sample_states(sys.state_dim, 100, rc.seed));
            traj = simulate_iso(sys, u, rc.sim, rc.x0);
        } else {
            throw ConfigError("model '" + rc.model + "' provides no simulable form");
        }
        balance = analyze_balance(traj);
        const double wall_ms = elapsed_ms(start);

        if (!rc.outputs.trace_path.empty()) write_trace_csv(rc.outputs.trace_path, traj);

        const bool exact_scheme = rc.sim.scheme == Scheme::discrete_gradient;
        const bool passed = !exact_scheme || (balance.passed_pbe && balance.passed_di);

        ordered_json report = run_metadata("simulate", rc, label);
        report["params"] = params_to_json(params);
        report["n_steps"] = traj.n_steps();
        report["wall_time_ms"] = wall_ms;
        report["structure"] = structure_to_json(structure);
        report["balance"] = balance_to_json(balance);
        report["passed"] = passed;
        write_report(rc.outputs.report_path, report);

        log_info(opts, "simulate " + rc.model + ": " + std::to_string(traj.n_steps()) +
                           " steps, max |pbe| = " + fmt_num(balance.max_abs_pbe_residual) +
                           (passed ? " [ok]" : " [failed]"));
        return passed ? exit_code::ok : exit_code::check_failed;
    });
}

int cmd_reduce(const std::string& config_path, const CommandOptions& opts) {
    return run_command([&]() -> int {
        RunConfig rc = load_run_config(config_path);
        if (opts.seed_override) rc.seed = *opts.seed_override;
        const ModelSpec& spec = find_model(rc.model);
        if (!spec.build_es)
            throw ConfigError("model '" + rc.model + "' provides no es-pH form to reduce");
        if (!rc.mor) throw ConfigError("reduce requires a 'mor' config section");
        if (!(rc.sim.t_end > rc.sim.t0))
            throw ConfigError("reduce requires a nonzero time span to collect snapshots");
        const Params params = merged_params(spec, rc.model_params);

        const EsPhSystem sys = spec.build_es(params);
        require_x0(rc, sys.state_dim);
        const InputSignal u = make_input_signal(rc.input, sys.io_dim);

        const auto start = Clock::now();
        const Trajectory full = simulate(sys, u, rc.sim, rc.x0);

        std::vector<Vec> snapshots;
        const int stride = rc.mor->snapshot_stride;
        for (std::size_t k = 0; k < full.states.size(); k += static_cast<std::size_t>(stride))
            snapshots.push_back(full.states[k]);

        const PodTarget target = rc.mor->target_dim
                                     ? PodTarget::dimension(*rc.mor->target_dim)
                                     : PodTarget::energy(*rc.mor->target_energy);
        const ReductionBasis basis = pod_basis(snapshots, target);
        const EsPhSystem rom = reduce(sys, basis);

        const StructureReport rom_structure =
            validate_structure(rom, sample_states(rom.state_dim, 100, rc.seed));

        ordered_json report = run_metadata("reduce", rc, sys.label);
        report["params"] = params_to_json(params);
        report["basis"] = ordered_json{{"full_dim", basis.full_dim()},
                                       {"reduced_dim", basis.reduced_dim()},
                                       {"energy_captured", basis.energy_captured},
                                       {"snapshots", snapshots.size()}};
        report["reduced_structure"] = structure_to_json(rom_structure);

        if (!rom_structure.passed) {
            report["passed"] = false;
            write_report(rc.outputs.report_path, report);
            log_error("reduced system failed structure validation (implementation bug)");
            return exit_code::reduced_structure;
        }

        const Vec x0_red = basis.V.transpose() * rc.x0;
        const Trajectory red = simulate(rom, u, rc.sim, x0_red);
        const double wall_ms = elapsed_ms(start);

        const BalanceReport full_balance = analyze_balance(full);
        const BalanceReport red_balance = analyze_balance(red);
        const ReductionError err = reduction_error(full, red, basis);

        if (!rc.outputs.trace_path.empty()) {
            write_trace_csv(rc.outputs.trace_path, full);
            const std::string red_path = rc.outputs.reduced_trace_path.empty()
                                             ? with_suffix(rc.outputs.trace_path, "_reduced")
                                             : rc.outputs.reduced_trace_path;
            write_trace_csv(red_path, red);
        }
        if (!rc.outputs.basis_path.empty()) save_basis(rc.outputs.basis_path, basis);

        const bool exact_scheme = rc.sim.scheme == Scheme::discrete_gradient;
        const bool balance_ok =
            !exact_scheme || (red_balance.passed_pbe && red_balance.passed_di);

        report["wall_time_ms"] = wall_ms;
        report["full_balance"] = balance_to_json(full_balance);
        report["reduced_balance"] = balance_to_json(red_balance);
        report["reduction_error"] = ordered_json{{"state_l2", err.state_l2},
                                                 {"output_l2", err.output_l2},
                                                 {"energy_max_dev", err.energy_max_dev}};
        report["passed"] = balance_ok;
        write_report(rc.outputs.report_path, report);

        log_info(opts, "reduce " + rc.model + ": n = " + std::to_string(basis.reduced_dim()) +
                           " of N = " + std::to_string(basis.full_dim()) +
                           ", state_l2 = " + fmt_num(err.state_l2) +
                           (balance_ok ? " [ok]" : " [failed]"));
        return balance_ok ? exit_code::ok : exit_code::check_failed;
    });
}

int cmd_verify(const std::string& config_path, const CommandOptions& opts) {
    return run_command([&]() -> int {
        RunConfig rc = load_run_config(config_path);
        if (opts.seed_override) rc.seed = *opts.seed_override;
        const ModelSpec& spec = find_model(rc.model);
        if (!spec.build_dirac)
            throw ConfigError("model '" + rc.model + "' provides no Dirac form to verify");
        const Params params = merged_params(spec, rc.model_params);

        const EsDiracSystem dsys = spec.build_dirac(params);
        require_x0(rc, dsys.state_dim);

        // Dirac axioms on the assembled map at x0 and at random states.
        std::vector<Vec> probe_states = sample_states(dsys.state_dim, 10, rc.seed);
        probe_states.insert(probe_states.begin(), rc.x0);

        DiracCheck worst;
        worst.passed = true;
        double max_skew = 0.0;
        for (std::size_t i = 0; i < probe_states.size(); ++i) {
            const Mat L = assemble_L(dsys, probe_states[i]);
            const DiracCheck c = verify_dirac(L, 1000, rc.seed + i);
            worst.dimension = c.dimension;
            worst.max_power_defect = std::max(worst.max_power_defect, c.max_power_defect);
            worst.passed = worst.passed && c.passed;
            max_skew = std::max(max_skew, skew_defect(L) / std::max(1.0, max_abs(L)));
        }

        const EsPhSystem eliminated = eliminate_resistive_es(dsys);
        const StructureReport structure =
            validate_structure(eliminated, sample_states(eliminated.state_dim, 100, rc.seed));

        const bool passed = worst.passed && structure.passed;

        ordered_json certificate = run_metadata("verify", rc, dsys.label);
        certificate["params"] = params_to_json(params);
        certificate["dirac"] = ordered_json{{"dimension", worst.dimension},
                                            {"flow_samples_per_state", 1000},
                                            {"probe_states", probe_states.size()},
                                            {"max_power_defect", worst.max_power_defect},
                                            {"max_skew_defect", max_skew},
                                            {"passed", worst.passed}};
        certificate["eliminated_structure"] = structure_to_json(structure);
        certificate["passed"] = passed;
        write_report(rc.outputs.report_path, certificate);

        log_info(opts, "verify " + rc.model +
                           ": max power defect = " + fmt_num(worst.max_power_defect) +
                           (passed ? " [ok]" : " [failed]"));
        return passed ? exit_code::ok : exit_code::check_failed;
    });
}

int cmd_compare(const std::string& config_path, const CommandOptions& opts) {
    return run_command([&]() -> int {
        RunConfig rc = load_run_config(config_path);
        if (opts.seed_override) rc.seed = *opts.seed_override;
        const ModelSpec& spec = find_model(rc.model);
        if (!spec.build_es)
            throw ConfigError("model '" + rc.model + "' lacks an es-pH variant required by compare");
        if (!spec.build_iso)
            throw ConfigError("model '" + rc.model + "' lacks an iso-pH twin required by compare");
        if (!spec.build_dirac)
            throw ConfigError("model '" + rc.model + "' lacks a Dirac form required by compare");
        const Params params = merged_params(spec, rc.model_params);

        const EsPhSystem es_sys = spec.build_es(params);
        const IsoPhSystem iso_sys = spec.build_iso(params);
        const EsDiracSystem dae_sys = spec.build_dirac(params);
        require_x0(rc, es_sys.state_dim);
        const InputSignal u = make_input_signal(rc.input, es_sys.io_dim);

        SimConfig cfg_iso = rc.sim;
        if (cfg_iso.scheme == Scheme::discrete_gradient)
            cfg_iso.scheme = Scheme::implicit_midpoint;
        SimConfig cfg_dae = rc.sim;
        cfg_dae.scheme = Scheme::discrete_gradient;
        SimConfig cfg_ref = rc.sim;
        cfg_ref.scheme = Scheme::reference_rk4;

        const auto start = Clock::now();
        // independent variant runs
        auto fut_es = std::async(std::launch::async,
                                 [&] { return simulate(es_sys, u, rc.sim, rc.x0); });
        auto fut_iso = std::async(std::launch::async,
                                  [&] { return simulate_iso(iso_sys, u, cfg_iso, rc.x0); });
        auto fut_dae = std::async(std::launch::async, [&] {
            return simulate_dae_es(dae_sys, u, cfg_dae, rc.x0).trajectory;
        });
        auto fut_ref = std::async(std::launch::async,
                                  [&] { return simulate(es_sys, u, cfg_ref, rc.x0); });

        const Trajectory traj_es = fut_es.get();
        const Trajectory traj_iso = fut_iso.get();
        const Trajectory traj_dae = fut_dae.get();
        const Trajectory traj_ref = fut_ref.get();
        const double wall_ms = elapsed_ms(start);

        const auto deviation = [](const Trajectory& a, const Trajectory& b) {
            double dev = 0.0;
            for (std::size_t k = 0; k < a.states.size(); ++k)
                dev = std::max(dev, (a.states[k] - b.states[k]).lpNorm<Eigen::Infinity>());
            return dev;
        };

        const ordered_json deviations = {
            {"es_vs_iso", deviation(traj_es, traj_iso)},
            {"es_vs_dae", deviation(traj_es, traj_dae)},
            {"es_vs_reference", deviation(traj_es, traj_ref)},
            {"iso_vs_reference", deviation(traj_iso, traj_ref)},
            {"dae_vs_reference", deviation(traj_dae, traj_ref)}};

        bool passed = true;
        for (const auto& [key, value] : deviations.items())
            passed = passed && value.get<double>() <= rc.compare_threshold;

        if (!rc.outputs.trace_path.empty()) {
            write_trace_csv(with_suffix(rc.outputs.trace_path, "_es"), traj_es);
            write_trace_csv(with_suffix(rc.outputs.trace_path, "_iso"), traj_iso);
            write_trace_csv(with_suffix(rc.outputs.trace_path, "_dae"), traj_dae);
            write_trace_csv(with_suffix(rc.outputs.trace_path, "_ref"), traj_ref);
        }

        ordered_json report = run_metadata("compare", rc, es_sys.label);
        report["params"] = params_to_json(params);
        report["wall_time_ms"] = wall_ms;
        report["threshold"] = rc.compare_threshold;
        report["deviations"] = deviations;
        report["passed"] = passed;
        write_report(rc.outputs.report_path, report);

        log_info(opts, "compare " + rc.model + ": es/iso deviation = " +
                           fmt_num(deviations["es_vs_iso"].get<double>()) +
                           (passed ? " [ok]" : " [failed]"));
        return passed ? exit_code::ok : exit_code::check_failed;
    });
}

}  // namespace esph
