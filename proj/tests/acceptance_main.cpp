// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.
#include "esph/commands.hpp"
#include "esph/diagnostics.hpp"
#include "esph/dirac.hpp"
#include "esph/integrators.hpp"
#include "esph/models.hpp"
#include "esph/mor.hpp"
#include "esph/run_config.hpp"
#include "esph/structure.hpp"
#include "esph/trace_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace esph;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Vec oscillator_closed_form(const Vec& x0, double t) {
    Vec x(2);
    x(0) = x0(0) * std::cos(t) + x0(1) * std::sin(t);
    x(1) = -x0(0) * std::sin(t) + x0(1) * std::cos(t);
    return x;
}

InputSignal sine_input(Index dim, double amplitude, double frequency) {
    return InputSignal::callable(dim, [amplitude, frequency](double t) {
        return Vec::Constant(1, amplitude * std::sin(frequency * t)).eval();
    });
}

// Worst scaled PBE residual and DI margin over one trajectory.
struct BalanceExtrema {
    double worst_pbe = 0.0;     // max |residual| / max(1, |H_k|)
    double worst_margin = 0.0;  // min margin / max(1, |H_k|)
};

BalanceExtrema balance_extrema(const Trajectory& traj) {
    BalanceExtrema ex;
    ex.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.n_steps(); ++k) {
        const double scale = std::max(1.0, std::abs(traj.energies[k]));
        const double residual = traj.energies[k + 1] - traj.energies[k] -
                                traj.step_dt(k) * (traj.supply_rates[k] - traj.dissipation_rates[k]);
        const double margin =
            traj.step_dt(k) * traj.supply_rates[k] - (traj.energies[k + 1] - traj.energies[k]);
        ex.worst_pbe = std::max(ex.worst_pbe, std::abs(residual) / scale);
        ex.worst_margin = std::min(ex.worst_margin, margin / scale);
    }
    if (traj.n_steps() == 0) ex.worst_margin = 0.0;
    return ex;
}

// Shared runs for criteria 1 and 2: every es-form registry model under both
// inputs, discrete-gradient scheme, dt = 1e-2 over [0, 10].
std::vector<Trajectory>& criterion12_runs() {
    static std::vector<Trajectory> runs = [] {
        std::vector<Trajectory> out;
        SimConfig cfg;
        cfg.t_end = 10.0;
        cfg.dt = 1e-2;
        for (const ModelSpec& spec : model_registry()) {
            if (!spec.build_es) continue;
            const EsPhSystem sys = spec.build_es(spec.defaults);
            const Vec x0 = spec.default_x0(spec.defaults);
            out.push_back(simulate(sys, InputSignal::zero(sys.io_dim), cfg, x0));
            out.push_back(simulate(sys, sine_input(sys.io_dim, 0.5, 1.0), cfg, x0));
        }
        return out;
    }();
    return runs;
}

Outcome criterion1_power_balance(double seconds_budget, double& measured_seconds) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const Trajectory& traj : criterion12_runs())
        worst = std::max(worst, balance_extrema(traj).worst_pbe);
    measured_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
    out.require(worst <= 1e-10, "scaled PBE residual " + fmt(worst) + " > 1e-10");
    out.require(measured_seconds <= seconds_budget,
                "runtime " + fmt(measured_seconds) + " s over budget");
    out.note("worst scaled residual " + fmt(worst));
    return out;
}

Outcome criterion2_dissipation_inequality() {
    Outcome out;
    double worst = std::numeric_limits<double>::infinity();
    for (const Trajectory& traj : criterion12_runs())
        worst = std::min(worst, balance_extrema(traj).worst_margin);
    out.require(worst >= -1e-10, "scaled DI margin " + fmt(worst) + " < -1e-10");
    out.note("worst scaled margin " + fmt(worst));

    // negative control: energy rises with zero supply
    Trajectory planted;
    planted.times = {0.0, 1.0};
    planted.states = {Vec{{0.0}}, Vec{{1.0}}};
    planted.energies = {0.0, 1.0};
    planted.outputs = {Vec{{0.0}}};
    planted.supply_rates = {0.0};
    planted.dissipation_rates = {0.0};
    planted.pbe_residuals = {1.0};
    out.require(!dissipation_inequality(planted).passed_di,
                "planted energy-increasing trajectory was not rejected");
    return out;
}

Outcome criterion3_energy_conservation(double seconds_budget, double& measured_seconds) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    SimConfig cfg;
    cfg.t_end = 100.0;
    cfg.dt = 1e-2;

    const std::vector<EsPhSystem> systems = {damped_oscillator_es(1.0, 1.0, 0.0),
                                             duffing_es(1.0, 1.0, 0.0),
                                             modulated_oscillator_es(0.5)};
    double worst = 0.0;
    for (const EsPhSystem& sys : systems) {
        const Trajectory traj = simulate(sys, InputSignal::zero(1), cfg, Vec{{1.0, 0.0}});
        if (traj.n_steps() != 10000) {
            out.require(false, "expected 10^4 steps");
            continue;
        }
        for (double h : traj.energies) worst = std::max(worst, std::abs(h - traj.energies[0]));
    }
    measured_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
    out.require(worst <= 1e-9, "energy drift " + fmt(worst) + " > 1e-9");
    out.require(measured_seconds <= seconds_budget,
                "runtime " + fmt(measured_seconds) + " s over budget");
    out.note("worst drift " + fmt(worst));
    return out;
}

Outcome criterion4_midpoint_order() {
    Outcome out;
    const EsPhSystem sys = damped_oscillator_es(1.0, 1.0, 0.0);
    const Vec x0{{1.0, 0.0}};
    const Vec exact = oscillator_closed_form(x0, kTwoPi);

    std::vector<double> errors;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        SimConfig cfg;
        cfg.t_end = kTwoPi;
        cfg.dt = dt;
        cfg.scheme = Scheme::implicit_midpoint;
        const Trajectory traj = simulate(sys, InputSignal::zero(1), cfg, x0);
        errors.push_back((traj.states.back() - exact).lpNorm<Eigen::Infinity>());
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double ratio = errors[i] / errors[i + 1];
        out.require(ratio >= 4.0 * 0.85 && ratio <= 4.0 * 1.15,
                    "halving ratio " + fmt(ratio) + " outside 4 +/- 15%");
        out.note("ratio " + fmt(ratio));
    }
    return out;
}

Outcome criterion5_mor_structure(double seconds_budget, double& measured_seconds) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    const EsPhSystem sys = wave_chain_es(20, 1.0, 0.1);
    const Vec x0 = find_model("wave_chain_es").default_x0({{"n_cells", 20.0}});
    SimConfig cfg;
    cfg.t_end = 10.0;
    cfg.dt = 1e-2;

    const Trajectory full = simulate(sys, InputSignal::zero(1), cfg, x0);
    const ReductionBasis basis = pod_basis(full.states, PodTarget::energy(0.9999));
    const EsPhSystem rom = reduce(sys, basis);
    out.note("n = " + std::to_string(basis.reduced_dim()) + " of N = 40");

    // structure at 100 random reduced states, pinned tolerances
    double worst_skew = 0.0, min_eig = 0.0;
    for (const Vec& xr : sample_states(rom.state_dim, 100, 42)) {
        const Mat lam = assemble_lambda(rom, xr);
        const Mat phi = assemble_phi(rom, xr);
        const double scale = std::max(1.0, std::max(max_abs(lam), max_abs(phi)));
        worst_skew = std::max(worst_skew, skew_defect(lam) / scale);
        min_eig = std::min(min_eig, min_symmetric_eigenvalue(phi) / scale);
    }
    out.require(worst_skew <= 1e-12, "reduced skew defect " + fmt(worst_skew) + " > 1e-12");
    out.require(min_eig >= -1e-10, "reduced min eigenvalue " + fmt(min_eig) + " < -1e-10");

    // criteria 1-2 on the reduced system
    const Vec xr0 = basis.V.transpose() * x0;
    for (const bool forced : {false, true}) {
        const InputSignal u = forced ? sine_input(1, 0.5, 1.0) : InputSignal::zero(1);
        const BalanceExtrema ex = balance_extrema(simulate(rom, u, cfg, xr0));
        out.require(ex.worst_pbe <= 1e-10, "reduced PBE residual " + fmt(ex.worst_pbe));
        out.require(ex.worst_margin >= -1e-10, "reduced DI margin " + fmt(ex.worst_margin));
    }

    // identity reduction reproduces the full trajectory
    ReductionBasis identity;
    identity.V = Mat::Identity(sys.state_dim, sys.state_dim);
    const Trajectory ident = simulate(reduce(sys, identity), InputSignal::zero(1), cfg, x0);
    double dev = 0.0;
    for (std::size_t k = 0; k < full.states.size(); ++k)
        dev = std::max(dev, (full.states[k] - ident.states[k]).lpNorm<Eigen::Infinity>());
    out.require(dev <= 1e-10, "identity reduction deviates by " + fmt(dev));

    measured_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
    out.require(measured_seconds <= seconds_budget,
                "runtime " + fmt(measured_seconds) + " s over budget");
    return out;
}

Outcome criterion6_dirac_elimination() {
    Outcome out;
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.5);
    const EsPhSystem eliminated = eliminate_resistive_es(dsys);
    const InputSignal u = sine_input(1, 0.5, 1.0);
    SimConfig cfg;
    cfg.t_end = 10.0;
    cfg.dt = 1e-2;
    const Vec x0{{1.0, 0.0}};

    const DaeTrajectory dae = simulate_dae_es(dsys, u, cfg, x0);
    const Trajectory ode = simulate(eliminated, u, cfg, x0);
    double dev = 0.0;
    for (std::size_t k = 0; k < ode.states.size(); ++k)
        dev = std::max(dev,
                       (dae.trajectory.states[k] - ode.states[k]).lpNorm<Eigen::Infinity>());
    out.require(dev <= 10.0 * cfg.newton_tol,
                "DAE/eliminated deviation " + fmt(dev) + " > 10*newton_tol");
    out.note("state deviation " + fmt(dev));

    const DiracCheck check = verify_dirac(assemble_L(dsys, x0), 1000, 42);
    out.require(check.passed && check.max_power_defect <= 1e-12,
                "power defect " + fmt(check.max_power_defect) + " > 1e-12");
    out.note("power defect " + fmt(check.max_power_defect));
    return out;
}

Outcome criterion7_cross_formulation() {
    Outcome out;
    const Vec x0{{1.0, 0.0}};
    const InputSignal u = sine_input(1, 1.0, 1.0);
    SimConfig cfg;
    cfg.t_end = kTwoPi;
    cfg.dt = 1e-3;

    const Trajectory es = simulate(damped_oscillator_es(1.0, 1.0, 0.5), u, cfg, x0);
    SimConfig cfg_iso = cfg;
    cfg_iso.scheme = Scheme::implicit_midpoint;
    const Trajectory iso = simulate_iso(damped_oscillator_iso(1.0, 1.0, 0.5), u, cfg_iso, x0);
    SimConfig cfg_ref = cfg;
    cfg_ref.scheme = Scheme::reference_rk4;
    const Trajectory ref = simulate(damped_oscillator_es(1.0, 1.0, 0.5), u, cfg_ref, x0);

    double es_iso = 0.0, es_ref = 0.0, iso_ref = 0.0;
    for (std::size_t k = 0; k < es.states.size(); ++k) {
        es_iso = std::max(es_iso, (es.states[k] - iso.states[k]).lpNorm<Eigen::Infinity>());
        es_ref = std::max(es_ref, (es.states[k] - ref.states[k]).lpNorm<Eigen::Infinity>());
        iso_ref = std::max(iso_ref, (iso.states[k] - ref.states[k]).lpNorm<Eigen::Infinity>());
    }
    out.require(es_iso <= 1e-4, "es/iso deviation " + fmt(es_iso) + " > 1e-4");
    out.require(es_ref <= 1e-4, "es/reference deviation " + fmt(es_ref) + " > 1e-4");
    out.require(iso_ref <= 1e-4, "iso/reference deviation " + fmt(iso_ref) + " > 1e-4");
    out.note("es/iso " + fmt(es_iso) + ", es/ref " + fmt(es_ref));
    return out;
}

Outcome criterion8_congruence_psd() {
    Outcome out;
    std::mt19937_64 rng(42);
    const Index n = 4, ny = 2, r1 = 3, r2 = 2;
    const EnergyFunctional H(
        n, [](const Vec& x) { return 0.5 * x.squaredNorm(); }, [](const Vec& x) { return x; });

    double worst_es = 0.0, worst_iso = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const Mat tau1 = random_matrix(rng, n, r1);
        const Mat tau2 = random_matrix(rng, ny, r2);
        const Mat B = random_matrix(rng, r1 + r2, r1 + r2);
        const Mat psd = B.transpose() * B;

        const EsDiracSystem es(n, ny, r1, r2, OperatorField::zero(n, n, SymmetryClass::skew),
                               OperatorField::zero(n, ny), OperatorField::constant(tau1),
                               OperatorField::constant(tau2), OperatorField::zero(ny, ny),
                               OperatorField::constant(psd, SymmetryClass::symmetric_psd), H);
        const Mat phi = assemble_phi(eliminate_resistive_es(es), Vec::Zero(n));
        worst_es = std::min(worst_es,
                            min_symmetric_eigenvalue(phi) / std::max(1.0, max_abs(phi)));

        const IsoDiracSystem iso(n, ny, r1, r2, OperatorField::zero(n, n, SymmetryClass::skew),
                                 OperatorField::zero(n, ny), OperatorField::constant(tau1),
                                 OperatorField::constant(tau2), OperatorField::zero(ny, ny),
                                 OperatorField::constant(psd, SymmetryClass::symmetric_psd), H);
        const Mat W = assemble_W(eliminate_resistive_iso(iso), Vec::Zero(n));
        worst_iso = std::min(worst_iso,
                             min_symmetric_eigenvalue(W) / std::max(1.0, max_abs(W)));
    }
    out.require(worst_es >= -1e-10, "eliminated phi min eigenvalue " + fmt(worst_es));
    out.require(worst_iso >= -1e-10, "eliminated W min eigenvalue " + fmt(worst_iso));
    out.note("worst es " + fmt(worst_es) + ", worst iso " + fmt(worst_iso));
    return out;
}

Outcome criterion9_determinism_round_trip() {
    Outcome out;
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("acceptance_out");
    fs::create_directories(dir);

    const auto config_for = [&](const std::string& tag) {
        nlohmann::json j{{"model", "damped_oscillator_es"},
                         {"model_params", {{"m", 1.0}, {"k", 1.0}, {"d", 0.5}}},
                         {"x0", {1.0, 0.0}},
                         {"input", {{"kind", "sine"}, {"amplitude", 0.5}, {"frequency", 1.0}}},
                         {"seed", 42},
                         {"sim", {{"t0", 0.0}, {"t_end", 5.0}, {"dt", 0.01},
                                  {"scheme", "discrete_gradient"}}},
                         {"outputs", {{"trace_path", (dir / (tag + "_trace.csv")).string()},
                                      {"report_path", (dir / (tag + "_report.json")).string()}}}};
        const std::string path = (dir / (tag + ".json")).string();
        std::ofstream(path) << j.dump(2);
        return path;
    };

    CommandOptions opts;
    opts.quiet = true;
    out.require(cmd_simulate(config_for("a"), opts) == exit_code::ok, "run a failed");
    out.require(cmd_simulate(config_for("b"), opts) == exit_code::ok, "run b failed");

    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(dir / "a_trace.csv");
    out.require(!a.empty() && a == slurp(dir / "b_trace.csv"),
                "traces are not bit-identical");

    const Trajectory reread = read_trace_csv((dir / "a_trace.csv").string());
    const BalanceReport re = power_balance(reread);
    nlohmann::json report;
    std::ifstream((dir / "a_report.json").string()) >> report;
    const double reported = report["balance"]["max_abs_pbe_residual"].get<double>();
    out.require(std::abs(re.max_abs_pbe_residual - reported) <= 1e-14,
                "re-analysis deviates from the reported residual");
    out.note("re-analysis delta " + fmt(std::abs(re.max_abs_pbe_residual - reported)));
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome(double&)> run;
    };

    const std::vector<Entry> entries = {
        {1, "discrete power balance exactness (all models, both inputs)",
         [](double& s) { return criterion1_power_balance(5.0, s); }},
        {2, "dissipation inequality with negative control",
         [&](double&) { return criterion2_dissipation_inequality(); }},
        {3, "long-run energy conservation (10^4 steps)",
         [](double& s) { return criterion3_energy_conservation(5.0, s); }},
        {4, "implicit midpoint order-2 convergence",
         [&](double&) { return criterion4_midpoint_order(); }},
        {5, "POD reduction preserves structure and balance laws",
         [](double& s) { return criterion5_mor_structure(10.0, s); }},
        {6, "Dirac DAE matches resistive elimination; power conservation",
         [&](double&) { return criterion6_dirac_elimination(); }},
        {7, "es-pH / iso-pH / reference cross-formulation agreement",
         [&](double&) { return criterion7_cross_formulation(); }},
        {8, "congruence keeps eliminated dissipation PSD (100 draws)",
         [&](double&) { return criterion8_congruence_psd(); }},
        {9, "deterministic traces and exact round-trip re-analysis",
         [&](double&) { return criterion9_determinism_round_trip(); }},
    };

    bool all_passed = true;
    for (const Entry& entry : entries) {
        double seconds = 0.0;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = entry.run(seconds);
        } catch (const std::exception& e) {
            outcome.passed = false;
            outcome.note(std::string("exception: ") + e.what());
        }
        if (seconds == 0.0)
            seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_passed = all_passed && outcome.passed;
        std::printf("[%s] %d. %s (%.2f s)%s%s\n", outcome.passed ? "PASS" : "FAIL", entry.id,
                    entry.name, seconds, outcome.detail.tellp() > 0 ? " -- " : "",
                    outcome.detail.str().c_str());
    }
    std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES present");
    return all_passed ? 0 : 1;
}
