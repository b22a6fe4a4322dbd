// sim_config.hpp — time-stepping configuration.
#pragma once

#include "esph/linalg.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace esph {

// discrete_gradient: lowest-order scheme with an exact per-step energy
//   balance (piecewise-linear trial states, piecewise-constant test functions
//   and inputs).
// implicit_midpoint: standard order-2 comparison scheme.
// reference_rk4: explicit high-resolution oracle; substeps at dt/100 and
//   requires (−ω+ρ) invertible at every evaluation.
enum class Scheme { discrete_gradient, implicit_midpoint, reference_rk4 };

enum class JacobianMode { finite_difference, user };

// Jacobian of the implicit step residual with respect to x_next; supplied by
// the caller when JacobianMode::user is selected.
using StepJacobianFn =
    std::function<Mat(const Vec& x_k, const Vec& u_k, double dt, const Vec& x_next)>;

struct SimConfig {
    double t0 = 0.0;
    double t_end = 1.0;
    double dt = 1e-2;
    Scheme scheme = Scheme::discrete_gradient;
    double newton_tol = 1e-11;
    int newton_max_iter = 50;
    JacobianMode jacobian = JacobianMode::finite_difference;
    double fd_step = 1e-7;
    StepJacobianFn user_jacobian;  // required iff jacobian == user

    // Throws std::invalid_argument on violated invariants (dt ≤ t_end − t0
    // for nonzero spans, positive tolerances, ...). t_end == t0 is allowed
    // and yields a single-state trajectory.
    void validate() const;
};

const char* to_string(Scheme s);
Scheme scheme_from_string(std::string_view s);  // throws std::invalid_argument

}  // namespace esph
