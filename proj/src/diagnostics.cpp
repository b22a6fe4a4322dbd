#include "esph/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esph {

namespace {

// max(1, max_k |H_k|): the common scale for the absolute tolerances.
double energy_scale(const Trajectory& traj) {
    double scale = 1.0;
    for (double h : traj.energies) scale = std::max(scale, std::abs(h));
    return scale;
}

}  // namespace

BalanceReport power_balance(const Trajectory& traj, double tol_pbe) {
    traj.check_consistent();
    BalanceReport report;
    report.approximate_scheme = traj.scheme != Scheme::discrete_gradient;
    report.tol_pbe = tol_pbe * energy_scale(traj);

    const std::size_t steps = traj.n_steps();
    report.per_step_pbe_residuals.reserve(steps);
    double sum = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double r = traj.energies[k + 1] - traj.energies[k] -
                         traj.step_dt(k) * (traj.supply_rates[k] - traj.dissipation_rates[k]);
        report.per_step_pbe_residuals.push_back(r);
        report.max_abs_pbe_residual = std::max(report.max_abs_pbe_residual, std::abs(r));
        sum += r;
    }
    report.cumulative_ebe_defect = std::abs(sum);
    report.passed_pbe = report.max_abs_pbe_residual <= report.tol_pbe;
    return report;
}

BalanceReport dissipation_inequality(const Trajectory& traj, double tol_di) {
    traj.check_consistent();
    BalanceReport report;
    report.approximate_scheme = traj.scheme != Scheme::discrete_gradient;
    report.tol_di = tol_di * energy_scale(traj);

    const std::size_t steps = traj.n_steps();
    report.di_margins.reserve(steps);
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < steps; ++k) {
        const double margin =
            traj.step_dt(k) * traj.supply_rates[k] - (traj.energies[k + 1] - traj.energies[k]);
        report.di_margins.push_back(margin);
        min_margin = std::min(min_margin, margin);
    }
    report.min_di_margin = steps == 0 ? 0.0 : min_margin;
    report.passed_di = report.min_di_margin >= -report.tol_di;
    return report;
}

double energy_balance(const Trajectory& traj) {
    traj.check_consistent();
    if (traj.n_steps() == 0) return 0.0;
    double integral = 0.0;
    for (std::size_t k = 0; k < traj.n_steps(); ++k)
        integral += traj.step_dt(k) * (traj.supply_rates[k] - traj.dissipation_rates[k]);
    return std::abs(traj.energies.back() - traj.energies.front() - integral);
}

BalanceReport analyze_balance(const Trajectory& traj, double tol_pbe, double tol_di) {
    BalanceReport report = power_balance(traj, tol_pbe);
    const BalanceReport di = dissipation_inequality(traj, tol_di);
    report.di_margins = di.di_margins;
    report.min_di_margin = di.min_di_margin;
    report.passed_di = di.passed_di;
    report.tol_di = di.tol_di;
    return report;
}

}  // namespace esph
