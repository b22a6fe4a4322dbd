#include "esph/integrators.hpp"

#include "esph/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace esph {

Vec discrete_gradient(const EnergyFunctional& H, const Vec& a, const Vec& b) {
    if (a.size() != H.dim() || b.size() != H.dim())
        throw std::invalid_argument("discrete_gradient: state length mismatch");
    if (H.discrete_gradient_override()) return H.discrete_gradient_override()(a, b);

    const Vec d = b - a;
    const double dist = d.norm();
    if (dist <= 1e-14 * std::max(1.0, a.norm())) return H.gradient(a);

    const Vec m = 0.5 * (a + b);
    Vec g = H.gradient(m);
    g += ((H.value(b) - H.value(a) - g.dot(d)) / d.squaredNorm()) * d;
    return g;
}

namespace {

constexpr int kReferenceSubsteps = 100;

// Pivoted LU leaves a (near-)zero diagonal entry in U exactly when the matrix
// is numerically singular. Eigen's rcond() estimate is unreliable on exactly
// singular input, so test the diagonal directly.
bool lu_singular(const Eigen::PartialPivLU<Mat>& lu) {
    const Vec d = lu.matrixLU().diagonal().cwiseAbs();
    if (d.size() == 0) return false;
    return !(d.minCoeff() > 1e-14 * std::max(1.0, d.maxCoeff()));
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& F, const Vec& x, const Vec& f0,
                double fd_step) {
    Mat J(f0.size(), x.size());
    Vec xp = x;
    for (Index j = 0; j < x.size(); ++j) {
        const double h = fd_step * std::max(1.0, std::abs(x(j)));
        const double xj = x(j);
        xp(j) = xj + h;
        J.col(j) = (F(xp) - f0) / h;
        xp(j) = xj;
    }
    return J;
}

}  // namespace

NewtonResult newton_solve(const std::function<Vec(const Vec&)>& F, const Vec& x0,
                          const NewtonSettings& settings,
                          const std::function<Mat(const Vec&)>& jacobian) {
    Vec x = x0;
    double norm = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= settings.max_iter; ++it) {
        const Vec f = F(x);
        if (!f.allFinite())
            throw NewtonDivergence("Newton residual is not finite", x, it, norm);
        norm = f.size() == 0 ? 0.0 : f.lpNorm<Eigen::Infinity>();
        if (norm <= settings.tol) return {x, it, norm};
        if (it == settings.max_iter) break;

        const Mat J = jacobian ? jacobian(x) : fd_jacobian(F, x, f, settings.fd_step);
        Eigen::PartialPivLU<Mat> lu(J);
        if (lu_singular(lu))
            throw SingularJacobian("Newton Jacobian is numerically singular");
        const Vec dx = lu.solve(-f);
        if (!dx.allFinite())
            throw NewtonDivergence("Newton update is not finite", x, it, norm);
        x += dx;
    }
    throw NewtonDivergence("Newton iteration cap reached (max_iter=" +
                               std::to_string(settings.max_iter) + ", ||F||_inf=" +
                               std::to_string(norm) + ")",
                           x, settings.max_iter, norm);
}

namespace {

StepResult implicit_es_step(const EsPhSystem& sys, const Vec& x_k, const Vec& u_k, double dt,
                            const SimConfig& cfg, bool use_discrete_gradient) {
    if (x_k.size() != sys.state_dim)
        throw std::invalid_argument("step: state length mismatch");
    if (u_k.size() != sys.io_dim)
        throw std::invalid_argument("step: input length mismatch");
    if (dt == 0.0) throw std::invalid_argument("step: dt must be nonzero");

    const auto residual = [&](const Vec& x_next) -> Vec {
        const Vec x_m = 0.5 * (x_k + x_next);
        const Vec dx = (x_next - x_k) / dt;
        const Vec g = use_discrete_gradient ? discrete_gradient(sys.hamiltonian, x_k, x_next)
                                            : sys.hamiltonian.gradient(x_m);
        return (sys.rho(x_m) - sys.omega(x_m)) * dx + g - (sys.gamma(x_m) - sys.pi(x_m)) * u_k;
    };

    std::function<Mat(const Vec&)> jac;
    if (cfg.jacobian == JacobianMode::user)
        jac = [&](const Vec& x_next) { return cfg.user_jacobian(x_k, u_k, dt, x_next); };

    const NewtonSettings ns{cfg.newton_tol, cfg.newton_max_iter, cfg.fd_step};
    const NewtonResult sol = newton_solve(residual, x_k, ns, jac);

    const Vec x_m = 0.5 * (x_k + sol.x);
    const Vec dx = (sol.x - x_k) / dt;
    StepResult out;
    out.x_next = sol.x;
    out.output = (sys.gamma(x_m) + sys.pi(x_m)).transpose() * dx +
                 (sys.sigma(x_m) - sys.mu(x_m)) * u_k;
    return out;
}

// Explicit right-hand side ẋ = (−ω+ρ)⁻¹(−∇H + (γ−π)u) for the reference
// oracle; the mass operator must be invertible.
Vec es_explicit_rhs(const EsPhSystem& sys, const Vec& x, const Vec& u) {
    const Mat A = sys.rho(x) - sys.omega(x);
    Eigen::PartialPivLU<Mat> lu(A);
    if (lu_singular(lu))
        throw SingularMassOperator("reference_rk4: (-omega+rho) is singular");
    const Vec rhs = (sys.gamma(x) - sys.pi(x)) * u - sys.hamiltonian.gradient(x);
    return lu.solve(rhs);
}

template <typename Rhs>
Vec rk4_advance(const Rhs& f, Vec x, double dt, int substeps) {
    const double h = dt / substeps;
    for (int i = 0; i < substeps; ++i) {
        const Vec k1 = f(x);
        const Vec k2 = f(x + 0.5 * h * k1);
        const Vec k3 = f(x + 0.5 * h * k2);
        const Vec k4 = f(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

struct Grid {
    long n_steps = 0;
    double t0 = 0.0;
    double dt = 0.0;
    double t_end = 0.0;

    double time_at(long k) const { return k == n_steps ? t_end : t0 + static_cast<double>(k) * dt; }
};

Grid make_grid(const SimConfig& cfg) {
    Grid g;
    g.t0 = cfg.t0;
    g.dt = cfg.dt;
    g.t_end = cfg.t_end;
    const double span = cfg.t_end - cfg.t0;
    if (span <= 0.0) return g;
    // round-to-nearest guard so span/dt = 999.999... still gives 1000 steps
    g.n_steps = std::max<long>(1, static_cast<long>(std::ceil(span / cfg.dt - 1e-9)));
    return g;
}

}  // namespace

StepResult step_discrete_gradient(const EsPhSystem& sys, const Vec& x_k, const Vec& u_k,
                                  double dt, const SimConfig& cfg) {
    return implicit_es_step(sys, x_k, u_k, dt, cfg, true);
}

StepResult step_implicit_midpoint(const EsPhSystem& sys, const Vec& x_k, const Vec& u_k,
                                  double dt, const SimConfig& cfg) {
    return implicit_es_step(sys, x_k, u_k, dt, cfg, false);
}

Trajectory simulate(const EsPhSystem& sys, const InputSignal& u, const SimConfig& cfg,
                    const Vec& x0) {
    cfg.validate();
    if (x0.size() != sys.state_dim) throw std::invalid_argument("simulate: x0 length mismatch");
    if (u.dim() != sys.io_dim) throw std::invalid_argument("simulate: input dimension mismatch");

    Trajectory traj;
    traj.scheme = cfg.scheme;
    traj.times.push_back(cfg.t0);
    traj.states.push_back(x0);
    traj.energies.push_back(sys.hamiltonian.value(x0));

    const Grid grid = make_grid(cfg);
    Vec x = x0;
    for (long k = 0; k < grid.n_steps; ++k) {
        const double t_left = grid.time_at(k);
        const double t_right = grid.time_at(k + 1);
        const double dt_k = t_right - t_left;
        const Vec u_k = u.step_value(t_left, dt_k);

        Vec x_next;
        Vec y_k;
        try {
            switch (cfg.scheme) {
                case Scheme::discrete_gradient:
                case Scheme::implicit_midpoint: {
                    const StepResult st = implicit_es_step(
                        sys, x, u_k, dt_k, cfg, cfg.scheme == Scheme::discrete_gradient);
                    x_next = st.x_next;
                    y_k = st.output;
                    break;
                }
                case Scheme::reference_rk4: {
                    const auto f = [&](const Vec& xs) { return es_explicit_rhs(sys, xs, u_k); };
                    x_next = rk4_advance(f, x, dt_k, kReferenceSubsteps);
                    const Vec x_m = 0.5 * (x + x_next);
                    const Vec dx = (x_next - x) / dt_k;
                    y_k = (sys.gamma(x_m) + sys.pi(x_m)).transpose() * dx +
                          (sys.sigma(x_m) - sys.mu(x_m)) * u_k;
                    break;
                }
            }
        } catch (SolverError& e) {
            e.step_index = k;
            throw;
        }

        const Vec x_m = 0.5 * (x + x_next);
        const Vec dx = (x_next - x) / dt_k;
        Vec z(sys.state_dim + sys.io_dim);
        z.head(sys.state_dim) = dx;
        z.tail(sys.io_dim) = u_k;
        const double dissipation = z.dot(assemble_phi(sys, x_m) * z);
        const double supply = y_k.dot(u_k);
        const double h_next = sys.hamiltonian.value(x_next);

        traj.outputs.push_back(y_k);
        traj.supply_rates.push_back(supply);
        traj.dissipation_rates.push_back(dissipation);
        traj.pbe_residuals.push_back(h_next - traj.energies.back() -
                                     dt_k * (supply - dissipation));
        traj.times.push_back(t_right);
        traj.states.push_back(x_next);
        traj.energies.push_back(h_next);
        x = x_next;
    }
    return traj;
}

Trajectory simulate_iso(const IsoPhSystem& sys, const InputSignal& u, const SimConfig& cfg,
                        const Vec& x0) {
    cfg.validate();
    if (cfg.scheme == Scheme::discrete_gradient)
        throw std::invalid_argument(
            "simulate_iso: the discrete_gradient scheme applies to the es-pH form only; "
            "use implicit_midpoint or reference_rk4");
    if (x0.size() != sys.state_dim) throw std::invalid_argument("simulate_iso: x0 length mismatch");
    if (u.dim() != sys.io_dim) throw std::invalid_argument("simulate_iso: input dimension mismatch");

    Trajectory traj;
    traj.scheme = cfg.scheme;
    traj.times.push_back(cfg.t0);
    traj.states.push_back(x0);
    traj.energies.push_back(sys.hamiltonian.value(x0));

    const Grid grid = make_grid(cfg);
    Vec x = x0;
    for (long k = 0; k < grid.n_steps; ++k) {
        const double t_left = grid.time_at(k);
        const double t_right = grid.time_at(k + 1);
        const double dt_k = t_right - t_left;
        const Vec u_k = u.step_value(t_left, dt_k);

        Vec x_next;
        try {
            if (cfg.scheme == Scheme::implicit_midpoint) {
                const auto residual = [&](const Vec& xn) -> Vec {
                    const Vec x_m = 0.5 * (x + xn);
                    return (xn - x) / dt_k - isoph_rhs(sys, x_m, u_k).xdot;
                };
                std::function<Mat(const Vec&)> jac;
                if (cfg.jacobian == JacobianMode::user)
                    jac = [&](const Vec& xn) { return cfg.user_jacobian(x, u_k, dt_k, xn); };
                const NewtonSettings ns{cfg.newton_tol, cfg.newton_max_iter, cfg.fd_step};
                x_next = newton_solve(residual, x, ns, jac).x;
            } else {
                const auto f = [&](const Vec& xs) { return isoph_rhs(sys, xs, u_k).xdot; };
                x_next = rk4_advance(f, x, dt_k, kReferenceSubsteps);
            }
        } catch (SolverError& e) {
            e.step_index = k;
            throw;
        }

        const Vec x_m = 0.5 * (x + x_next);
        const Vec grad_m = sys.hamiltonian.gradient(x_m);
        const Vec y_k = (sys.G(x_m) + sys.P(x_m)).transpose() * grad_m +
                        (sys.S(x_m) - sys.Nf(x_m)) * u_k;
        // discrete analogue of the iso power split: z = (∇̄H; u) against W(x_m)
        const Vec gbar = discrete_gradient(sys.hamiltonian, x, x_next);
        Vec z(sys.state_dim + sys.io_dim);
        z.head(sys.state_dim) = gbar;
        z.tail(sys.io_dim) = u_k;
        const double dissipation = z.dot(assemble_W(sys, x_m) * z);
        const double supply = y_k.dot(u_k);
        const double h_next = sys.hamiltonian.value(x_next);

        traj.outputs.push_back(y_k);
        traj.supply_rates.push_back(supply);
        traj.dissipation_rates.push_back(dissipation);
        traj.pbe_residuals.push_back(h_next - traj.energies.back() -
                                     dt_k * (supply - dissipation));
        traj.times.push_back(t_right);
        traj.states.push_back(x_next);
        traj.energies.push_back(h_next);
        x = x_next;
    }
    return traj;
}

}  // namespace esph
