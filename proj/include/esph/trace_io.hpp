// trace_io.hpp — trajectory CSV persistence.
#pragma once

#include "esph/trajectory.hpp"

#include <string>

namespace esph {

// Trace CSV layout: a mandatory header row, then one row per stored state
// with columns, in order,
//   t, x_0..x_{N−1}, y_0..y_{n_y−1}, H, supply_rate, dissipation_rate, pbe_residual
// Per-step quantities are aligned with the step's left endpoint; the final
// row leaves them empty (H, a per-state quantity, is present on every row).
// Floats are printed with 17 significant digits, so re-reading is bit exact.
void write_trace_csv(const std::string& path, const Trajectory& traj);

// Inverse of write_trace_csv. The file does not record the scheme;
// assumed_scheme is attached to the result.
Trajectory read_trace_csv(const std::string& path,
                          Scheme assumed_scheme = Scheme::discrete_gradient);

}  // namespace esph
