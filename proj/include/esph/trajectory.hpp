// trajectory.hpp — sampled simulation results.
#pragma once

#include "esph/linalg.hpp"
#include "esph/sim_config.hpp"

#include <cstddef>
#include <vector>

namespace esph {

// Sampled trajectory of a simulation run. times/states/energies hold
// n_steps+1 entries; outputs and the per-step rate/residual lists hold one
// entry per step, aligned with the step's left endpoint (outputs are
// associated with the step midpoint). For es-pH runs the dissipation rate is
// z_kᵀ φ(x_m) z_k with z_k = (δx_k; u_k) and δx_k the difference quotient;
// for iso-pH runs it is z_kᵀ W(x_m) z_k with z_k = (∇̄H_k; u_k).
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<Vec> outputs;
    std::vector<double> energies;           // H(x_k)
    std::vector<double> supply_rates;       // y_kᵀ u_k
    std::vector<double> dissipation_rates;
    std::vector<double> pbe_residuals;      // ΔH_k − dt_k·(supply_k − dissipation_k)
    Scheme scheme = Scheme::discrete_gradient;

    std::size_t n_steps() const { return outputs.size(); }
    double step_dt(std::size_t k) const { return times[k + 1] - times[k]; }

    // Throws std::invalid_argument when the list lengths are inconsistent.
    void check_consistent() const;
};

}  // namespace esph
