// diagnostics.hpp — power balance, dissipation inequality, energy balance.
#pragma once

#include "esph/trajectory.hpp"

#include <vector>

namespace esph {

inline constexpr double kDefaultBalanceTol = 1e-9;

// Verification record for one trajectory. Tolerances are absolute, scaled
// once by max(1, max_k |H_k|); tol_pbe / tol_di store the realized values and
// the pass flags satisfy
//   passed_pbe ⇔ max_abs_pbe_residual ≤ tol_pbe
//   passed_di  ⇔ min_di_margin ≥ −tol_di.
// Trajectories produced by schemes other than discrete_gradient are analyzed
// with the same formulas but flagged approximate_scheme = true: their
// residuals carry truncation error, so the pass flags are informational, not
// a verdict.
struct BalanceReport {
    std::vector<double> per_step_pbe_residuals;
    double max_abs_pbe_residual = 0.0;
    std::vector<double> di_margins;        // dt·supply_k − ΔH_k
    double min_di_margin = 0.0;
    double cumulative_ebe_defect = 0.0;
    bool passed_pbe = true;
    bool passed_di = true;
    bool approximate_scheme = false;
    double tol_pbe = 0.0;
    double tol_di = 0.0;
};

// residual_k = H(x_{k+1}) − H(x_k) − dt_k·(supply_k − dissipation_k),
// recomputed from the recorded per-step rates. Throws std::invalid_argument
// on a malformed trajectory.
BalanceReport power_balance(const Trajectory& traj, double tol_pbe = kDefaultBalanceTol);

// margin_k = dt_k·supply_k − (H(x_{k+1}) − H(x_k)).
BalanceReport dissipation_inequality(const Trajectory& traj, double tol_di = kDefaultBalanceTol);

// |H(x_end) − H(x_0) − Σ_k dt_k·(supply_k − dissipation_k)|: the integrated
// balance over the whole window, equal to |Σ_k pbe_residual_k| by
// telescoping.
double energy_balance(const Trajectory& traj);

// Both checks in one report.
BalanceReport analyze_balance(const Trajectory& traj,
                              double tol_pbe = kDefaultBalanceTol,
                              double tol_di = kDefaultBalanceTol);

}  // namespace esph
