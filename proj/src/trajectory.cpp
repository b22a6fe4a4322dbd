#include "esph/trajectory.hpp"

#include <stdexcept>

namespace esph {

void Trajectory::check_consistent() const {
    const std::size_t n_states = states.size();
    if (n_states == 0) throw std::invalid_argument("Trajectory: no states");
    if (times.size() != n_states || energies.size() != n_states)
        throw std::invalid_argument("Trajectory: times/energies length mismatch");
    const std::size_t steps = n_states - 1;
    if (outputs.size() != steps || supply_rates.size() != steps ||
        dissipation_rates.size() != steps || pbe_residuals.size() != steps)
        throw std::invalid_argument("Trajectory: per-step list length mismatch");
}

}  // namespace esph
