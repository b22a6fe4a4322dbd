// integrators.hpp — structure-preserving time discretization.
#pragma once

#include "esph/input_signal.hpp"
#include "esph/sim_config.hpp"
#include "esph/systems.hpp"
#include "esph/trajectory.hpp"

#include <functional>

namespace esph {

// Two-point discrete gradient ∇̄H(a, b) with the exact directional identity
// ∇̄H(a,b)ᵀ(b−a) = H(b) − H(a) (up to roundoff): the midpoint gradient plus
// a rank-one correction,
//
//   ∇̄H(a,b) = ∇H(m) + (H(b) − H(a) − ∇H(m)ᵀ(b−a)) / ‖b−a‖² · (b−a),
//   m = (a+b)/2,
//
// falling back to ∇H(a) when ‖b−a‖ ≤ 1e-14·max(1, ‖a‖). For quadratic H the
// correction vanishes and ∇̄H(a,b) = ∇H(m). An override installed on the
// functional takes precedence.
Vec discrete_gradient(const EnergyFunctional& H, const Vec& a, const Vec& b);

struct StepResult {
    Vec x_next;
    Vec output;
};

// One implicit step of size dt from x_k with frozen input u_k. Solves
//
//   (−ω(x_m) + ρ(x_m))·δx + ḡ − (γ(x_m) − π(x_m))·u_k = 0,
//   δx = (x_next − x_k)/dt,  x_m = (x_k + x_next)/2,
//
// with ḡ = ∇̄H(x_k, x_next) (discrete gradient) or ḡ = ∇H(x_m) (midpoint),
// by a damped-free Newton iteration to ‖F‖∞ ≤ cfg.newton_tol. The output is
// y_k = (γ(x_m)ᵀ + π(x_m)ᵀ)·δx + (−μ(x_m) + σ(x_m))·u_k. Throws
// NewtonDivergence / SingularJacobian on failure. Negative dt is accepted
// (used by the time-symmetry property); simulate() enforces dt > 0.
StepResult step_discrete_gradient(const EsPhSystem& sys, const Vec& x_k, const Vec& u_k,
                                  double dt, const SimConfig& cfg = {});
StepResult step_implicit_midpoint(const EsPhSystem& sys, const Vec& x_k, const Vec& u_k,
                                  double dt, const SimConfig& cfg = {});

// Advances the system over the uniform grid t_k = t0 + k·dt (final partial
// step shortened to hit t_end exactly; t_end == t0 yields the single-state
// trajectory). reference_rk4 integrates the explicit form with 100 substeps
// per grid step and throws SingularMassOperator when (−ω+ρ) is not
// invertible. Solver failures propagate with the failing step index attached.
Trajectory simulate(const EsPhSystem& sys, const InputSignal& u, const SimConfig& cfg,
                    const Vec& x0);

// Same grid for the iso-pH form. Schemes: implicit_midpoint on the explicit
// ODE form, or reference_rk4 (the discrete-gradient scheme applies to the
// es-pH form only).
Trajectory simulate_iso(const IsoPhSystem& sys, const InputSignal& u, const SimConfig& cfg,
                        const Vec& x0);

// Dense-LU Newton iteration on F(x) = 0 with a forward finite-difference
// Jacobian (column j stepped by fd_step·max(1,|x_j|)), refactorized every
// iteration; a caller-supplied Jacobian replaces the differencing.
struct NewtonSettings {
    double tol = 1e-11;
    int max_iter = 50;
    double fd_step = 1e-7;
};

struct NewtonResult {
    Vec x;
    int iterations = 0;
    double residual_norm = 0.0;
};

NewtonResult newton_solve(const std::function<Vec(const Vec&)>& F, const Vec& x0,
                          const NewtonSettings& settings,
                          const std::function<Mat(const Vec&)>& jacobian = {});

}  // namespace esph
