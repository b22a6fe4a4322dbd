#include "esph/dirac.hpp"

#include "esph/errors.hpp"

#include <stdexcept>
#include <string>

namespace esph {

namespace {

void require_shape(const OperatorField& f, Index rows, Index cols, const char* name) {
    if (f.rows() != rows || f.cols() != cols) {
        throw std::invalid_argument(std::string("dirac system: field ") + name + " is " +
                                    std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                                    ", expected " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
}

// Composes three fields into a product A(x)·B(x)·C(x)ᵀ, folding to a constant
// when every factor is constant.
OperatorField congruence_field(const OperatorField& a, const OperatorField& b,
                               const OperatorField& c, SymmetryClass sym) {
    if (a.is_constant() && b.is_constant() && c.is_constant()) {
        return OperatorField::constant(
            a.constant_value() * b.constant_value() * c.constant_value().transpose(), sym);
    }
    return OperatorField(a.rows(), c.rows(), sym, [a, b, c](const Vec& x) -> Mat {
        return a(x) * b(x) * c(x).transpose();
    });
}

// Extracts a block of a (possibly state-dependent) square field.
OperatorField block_field(const OperatorField& f, Index row0, Index col0, Index rows, Index cols,
                          SymmetryClass sym) {
    if (f.is_constant())
        return OperatorField::constant(f.constant_value().block(row0, col0, rows, cols), sym);
    return OperatorField(rows, cols, sym, [f, row0, col0, rows, cols](const Vec& x) -> Mat {
        return f(x).block(row0, col0, rows, cols);
    });
}

}  // namespace

EsDiracSystem::EsDiracSystem(Index state_dim_, Index io_dim_, Index r1_, Index r2_,
                             OperatorField omega_, OperatorField gamma_, OperatorField tau1_,
                             OperatorField tau2_, OperatorField mu_, OperatorField phibar_,
                             EnergyFunctional hamiltonian_, std::string label_)
    : state_dim(state_dim_),
      io_dim(io_dim_),
      r1(r1_),
      r2(r2_),
      omega(std::move(omega_)),
      gamma(std::move(gamma_)),
      tau1(std::move(tau1_)),
      tau2(std::move(tau2_)),
      mu(std::move(mu_)),
      phibar(std::move(phibar_)),
      hamiltonian(std::move(hamiltonian_)),
      label(std::move(label_)) {
    if (state_dim <= 0) throw std::invalid_argument("dirac system: state_dim must be positive");
    if (io_dim < 0 || r1 < 0 || r2 < 0)
        throw std::invalid_argument("dirac system: negative port dimension");
    if (hamiltonian.dim() != state_dim)
        throw std::invalid_argument("dirac system: hamiltonian dimension mismatch");
    require_shape(omega, state_dim, state_dim, "omega");
    require_shape(gamma, state_dim, io_dim, "gamma");
    require_shape(tau1, state_dim, r1, "tau1");
    require_shape(tau2, io_dim, r2, "tau2");
    require_shape(mu, io_dim, io_dim, "mu");
    require_shape(phibar, r1 + r2, r1 + r2, "phibar");
}

IsoDiracSystem::IsoDiracSystem(Index state_dim_, Index io_dim_, Index r1_, Index r2_,
                               OperatorField J_, OperatorField G_, OperatorField T1_,
                               OperatorField T2_, OperatorField Nf_, OperatorField wbar_,
                               EnergyFunctional hamiltonian_, std::string label_)
    : state_dim(state_dim_),
      io_dim(io_dim_),
      r1(r1_),
      r2(r2_),
      J(std::move(J_)),
      G(std::move(G_)),
      T1(std::move(T1_)),
      T2(std::move(T2_)),
      Nf(std::move(Nf_)),
      wbar(std::move(wbar_)),
      hamiltonian(std::move(hamiltonian_)),
      label(std::move(label_)) {
    if (state_dim <= 0) throw std::invalid_argument("dirac system: state_dim must be positive");
    if (io_dim < 0 || r1 < 0 || r2 < 0)
        throw std::invalid_argument("dirac system: negative port dimension");
    if (hamiltonian.dim() != state_dim)
        throw std::invalid_argument("dirac system: hamiltonian dimension mismatch");
    require_shape(J, state_dim, state_dim, "J");
    require_shape(G, state_dim, io_dim, "G");
    require_shape(T1, state_dim, r1, "T1");
    require_shape(T2, io_dim, r2, "T2");
    require_shape(Nf, io_dim, io_dim, "N");
    require_shape(wbar, r1 + r2, r1 + r2, "wbar");
}

Mat assemble_L(const EsDiracSystem& sys, const Vec& x) {
    if (x.size() != sys.state_dim) throw std::invalid_argument("assemble_L: state length mismatch");
    const Index n = sys.state_dim, ny = sys.io_dim, r1 = sys.r1, r2 = sys.r2;
    const Mat g = sys.gamma(x);
    const Mat t1 = sys.tau1(x);
    const Mat t2 = sys.tau2(x);

    Mat L = Mat::Zero(n + ny + r1 + r2, n + ny + r1 + r2);
    L.block(0, 0, n, n) = -sys.omega(x);
    L.block(0, n, n, ny) = g;
    L.block(0, n + ny, n, r1) = t1;
    L.block(n, 0, ny, n) = -g.transpose();
    L.block(n, n, ny, ny) = -sys.mu(x);
    L.block(n, n + ny + r1, ny, r2) = -t2;
    L.block(n + ny, 0, r1, n) = -t1.transpose();
    L.block(n + ny + r1, n, r2, ny) = t2.transpose();
    return L;
}

Mat assemble_K(const IsoDiracSystem& sys, const Vec& x) {
    if (x.size() != sys.state_dim) throw std::invalid_argument("assemble_K: state length mismatch");
    const Index n = sys.state_dim, ny = sys.io_dim, r1 = sys.r1, r2 = sys.r2;
    const Mat g = sys.G(x);
    const Mat t1 = sys.T1(x);
    const Mat t2 = sys.T2(x);

    Mat K = Mat::Zero(n + ny + r1 + r2, n + ny + r1 + r2);
    K.block(0, 0, n, n) = -sys.J(x);
    K.block(0, n, n, ny) = -g;
    K.block(0, n + ny, n, r1) = -t1;
    K.block(n, 0, ny, n) = g.transpose();
    K.block(n, n, ny, ny) = -sys.Nf(x);
    K.block(n, n + ny + r1, ny, r2) = -t2;
    K.block(n + ny, 0, r1, n) = t1.transpose();
    K.block(n + ny + r1, n, r2, ny) = t2.transpose();
    return K;
}

DiracCheck verify_dirac(const Mat& M, int n_samples, std::uint64_t seed) {
    if (M.rows() != M.cols()) throw std::invalid_argument("verify_dirac: matrix must be square");
    DiracCheck check;
    check.dimension = M.rows();

    std::mt19937_64 rng(seed);
    for (int i = 0; i < n_samples; ++i) {
        const Vec f = random_vector(rng, M.rows(), -1.0, 1.0);
        const Vec e = M * f;
        const double denom = f.norm() * e.norm() + 1e-30;
        check.max_power_defect = std::max(check.max_power_defect, std::abs(f.dot(e)) / denom);
    }
    const double skew = skew_defect(M) / std::max(1.0, max_abs(M));
    check.passed = check.max_power_defect <= 1e-12 && skew <= 1e-12;
    return check;
}

EsPhSystem eliminate_resistive_es(const EsDiracSystem& sys) {
    const Index r1 = sys.r1, r2 = sys.r2;
    const OperatorField pb11 = block_field(sys.phibar, 0, 0, r1, r1, SymmetryClass::symmetric_psd);
    const OperatorField pb12 = block_field(sys.phibar, 0, r1, r1, r2, SymmetryClass::general);
    const OperatorField pb22 =
        block_field(sys.phibar, r1, r1, r2, r2, SymmetryClass::symmetric_psd);

    OperatorField rho = congruence_field(sys.tau1, pb11, sys.tau1, SymmetryClass::symmetric_psd);
    OperatorField pi = congruence_field(sys.tau1, pb12, sys.tau2, SymmetryClass::general);
    OperatorField sigma = congruence_field(sys.tau2, pb22, sys.tau2, SymmetryClass::symmetric_psd);

    return EsPhSystem(sys.state_dim, sys.io_dim, sys.omega, std::move(rho), sys.gamma,
                      std::move(pi), sys.mu, std::move(sigma), sys.hamiltonian,
                      sys.label.empty() ? std::string("eliminated") : sys.label + "_eliminated");
}

IsoPhSystem eliminate_resistive_iso(const IsoDiracSystem& sys) {
    const Index r1 = sys.r1, r2 = sys.r2;
    const OperatorField wb11 = block_field(sys.wbar, 0, 0, r1, r1, SymmetryClass::symmetric_psd);
    const OperatorField wb12 = block_field(sys.wbar, 0, r1, r1, r2, SymmetryClass::general);
    const OperatorField wb22 = block_field(sys.wbar, r1, r1, r2, r2, SymmetryClass::symmetric_psd);

    OperatorField R = congruence_field(sys.T1, wb11, sys.T1, SymmetryClass::symmetric_psd);
    OperatorField P = congruence_field(sys.T1, wb12, sys.T2, SymmetryClass::general);
    OperatorField S = congruence_field(sys.T2, wb22, sys.T2, SymmetryClass::symmetric_psd);

    return IsoPhSystem(sys.state_dim, sys.io_dim, sys.J, std::move(R), sys.G, std::move(P),
                       std::move(S), sys.Nf, sys.hamiltonian,
                       sys.label.empty() ? std::string("eliminated") : sys.label + "_eliminated");
}

DaeTrajectory simulate_dae_es(const EsDiracSystem& sys, const InputSignal& u,
                              const SimConfig& cfg, const Vec& x0) {
    cfg.validate();
    if (cfg.scheme != Scheme::discrete_gradient)
        throw std::invalid_argument("simulate_dae_es: only the discrete_gradient scheme is defined");
    if (x0.size() != sys.state_dim)
        throw std::invalid_argument("simulate_dae_es: x0 length mismatch");
    if (u.dim() != sys.io_dim)
        throw std::invalid_argument("simulate_dae_es: input dimension mismatch");

    const Index r1 = sys.r1, r2 = sys.r2;

    DaeTrajectory out;
    Trajectory& traj = out.trajectory;
    traj.scheme = cfg.scheme;
    traj.times.push_back(cfg.t0);
    traj.states.push_back(x0);
    traj.energies.push_back(sys.hamiltonian.value(x0));

    const double span = cfg.t_end - cfg.t0;
    const long n_steps =
        span <= 0.0 ? 0 : std::max<long>(1, static_cast<long>(std::ceil(span / cfg.dt - 1e-9)));

    Vec x = x0;
    for (long k = 0; k < n_steps; ++k) {
        const double t_left = cfg.t0 + static_cast<double>(k) * cfg.dt;
        const double t_right = (k + 1 == n_steps) ? cfg.t_end : cfg.t0 + (k + 1) * cfg.dt;
        const double dt_k = t_right - t_left;
        const Vec u_k = u.step_value(t_left, dt_k);

        // state row of L with f_R = −φ̄ e_R, e_R1 = τ₁ᵀδx, e_R2 = τ₂ᵀu
        // substituted algebraically:
        //   ω(x_m) δx + γ(x_m) u + τ₁(x_m) f_R1 − ∇̄H(x_k, x_next) = 0
        const auto resistive_efforts = [&](const Vec& x_m, const Vec& dx) -> Vec {
            Vec e_R(r1 + r2);
            e_R.head(r1) = sys.tau1(x_m).transpose() * dx;
            e_R.tail(r2) = sys.tau2(x_m).transpose() * u_k;
            return e_R;
        };
        const auto residual = [&](const Vec& x_next) -> Vec {
            const Vec x_m = 0.5 * (x + x_next);
            const Vec dx = (x_next - x) / dt_k;
            const Vec e_R = resistive_efforts(x_m, dx);
            const Vec f_R = -(sys.phibar(x_m) * e_R);
            return sys.omega(x_m) * dx + sys.gamma(x_m) * u_k + sys.tau1(x_m) * f_R.head(r1) -
                   discrete_gradient(sys.hamiltonian, x, x_next);
        };

        Vec x_next;
        try {
            const NewtonSettings ns{cfg.newton_tol, cfg.newton_max_iter, cfg.fd_step};
            x_next = newton_solve(residual, x, ns).x;
        } catch (SolverError& e) {
            e.step_index = k;
            throw;
        }

        const Vec x_m = 0.5 * (x + x_next);
        const Vec dx = (x_next - x) / dt_k;
        const Vec e_R = resistive_efforts(x_m, dx);
        const Vec f_R = -(sys.phibar(x_m) * e_R);
        // second row of L: y = γᵀ δx − μ u − τ₂ f_R2
        const Vec y_k = sys.gamma(x_m).transpose() * dx - sys.mu(x_m) * u_k -
                        sys.tau2(x_m) * f_R.tail(r2);
        const double pairing = e_R.dot(f_R);  // = −e_Rᵀ φ̄ e_R ≤ 0
        const double supply = y_k.dot(u_k);
        const double h_next = sys.hamiltonian.value(x_next);

        traj.outputs.push_back(y_k);
        traj.supply_rates.push_back(supply);
        traj.dissipation_rates.push_back(-pairing);
        traj.pbe_residuals.push_back(h_next - traj.energies.back() -
                                     dt_k * (supply + pairing));
        traj.times.push_back(t_right);
        traj.states.push_back(x_next);
        traj.energies.push_back(h_next);
        out.resistive_efforts.push_back(e_R);
        out.resistive_flows.push_back(f_R);
        out.resistive_pairings.push_back(pairing);
        x = x_next;
    }
    return out;
}

}  // namespace esph
