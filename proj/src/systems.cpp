#include "esph/systems.hpp"

#include <stdexcept>
#include <string>

namespace esph {

namespace {

void require_shape(const OperatorField& f, Index rows, Index cols, const char* name) {
    if (f.rows() != rows || f.cols() != cols) {
        throw std::invalid_argument(std::string("system: field ") + name + " is " +
                                    std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                                    ", expected " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
}

void require_dims(Index state_dim, Index io_dim, const EnergyFunctional& ham) {
    if (state_dim <= 0) throw std::invalid_argument("system: state_dim must be positive");
    if (io_dim < 0) throw std::invalid_argument("system: io_dim must be non-negative");
    if (ham.dim() != state_dim)
        throw std::invalid_argument("system: hamiltonian dimension does not match state_dim");
}

}  // namespace

EsPhSystem::EsPhSystem(Index state_dim_, Index io_dim_, OperatorField omega_, OperatorField rho_,
                       OperatorField gamma_, OperatorField pi_, OperatorField mu_,
                       OperatorField sigma_, EnergyFunctional hamiltonian_, std::string label_)
    : state_dim(state_dim_),
      io_dim(io_dim_),
      omega(std::move(omega_)),
      rho(std::move(rho_)),
      gamma(std::move(gamma_)),
      pi(std::move(pi_)),
      mu(std::move(mu_)),
      sigma(std::move(sigma_)),
      hamiltonian(std::move(hamiltonian_)),
      label(std::move(label_)) {
    require_dims(state_dim, io_dim, hamiltonian);
    require_shape(omega, state_dim, state_dim, "omega");
    require_shape(rho, state_dim, state_dim, "rho");
    require_shape(gamma, state_dim, io_dim, "gamma");
    require_shape(pi, state_dim, io_dim, "pi");
    require_shape(mu, io_dim, io_dim, "mu");
    require_shape(sigma, io_dim, io_dim, "sigma");
}

IsoPhSystem::IsoPhSystem(Index state_dim_, Index io_dim_, OperatorField J_, OperatorField R_,
                         OperatorField G_, OperatorField P_, OperatorField S_, OperatorField Nf_,
                         EnergyFunctional hamiltonian_, std::string label_)
    : state_dim(state_dim_),
      io_dim(io_dim_),
      J(std::move(J_)),
      R(std::move(R_)),
      G(std::move(G_)),
      P(std::move(P_)),
      S(std::move(S_)),
      Nf(std::move(Nf_)),
      hamiltonian(std::move(hamiltonian_)),
      label(std::move(label_)) {
    require_dims(state_dim, io_dim, hamiltonian);
    require_shape(J, state_dim, state_dim, "J");
    require_shape(R, state_dim, state_dim, "R");
    require_shape(G, state_dim, io_dim, "G");
    require_shape(P, state_dim, io_dim, "P");
    require_shape(S, io_dim, io_dim, "S");
    require_shape(Nf, io_dim, io_dim, "N");
}

namespace {

void require_state(const Vec& x, Index n, const char* what) {
    if (x.size() != n)
        throw std::invalid_argument(std::string(what) + ": state length " +
                                    std::to_string(x.size()) + ", expected " + std::to_string(n));
}

Mat assemble_blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const Index n = a.rows(), m = d.rows();
    Mat out(n + m, n + m);
    out.topLeftCorner(n, n) = a;
    out.topRightCorner(n, m) = b;
    out.bottomLeftCorner(m, n) = c;
    out.bottomRightCorner(m, m) = d;
    return out;
}

}  // namespace

Mat assemble_lambda(const EsPhSystem& sys, const Vec& x) {
    require_state(x, sys.state_dim, "assemble_lambda");
    const Mat g = sys.gamma(x);
    return assemble_blocks(sys.omega(x), g, -g.transpose(), sys.mu(x));
}

Mat assemble_phi(const EsPhSystem& sys, const Vec& x) {
    require_state(x, sys.state_dim, "assemble_phi");
    const Mat p = sys.pi(x);
    return assemble_blocks(sys.rho(x), p, p.transpose(), sys.sigma(x));
}

Mat assemble_Z(const IsoPhSystem& sys, const Vec& x) {
    require_state(x, sys.state_dim, "assemble_Z");
    const Mat g = sys.G(x);
    return assemble_blocks(sys.J(x), g, -g.transpose(), sys.Nf(x));
}

Mat assemble_W(const IsoPhSystem& sys, const Vec& x) {
    require_state(x, sys.state_dim, "assemble_W");
    const Mat p = sys.P(x);
    return assemble_blocks(sys.R(x), p, p.transpose(), sys.S(x));
}

Vec esph_residual(const EsPhSystem& sys, const Vec& x, const Vec& xdot, const Vec& u) {
    require_state(x, sys.state_dim, "esph_residual");
    require_state(xdot, sys.state_dim, "esph_residual (xdot)");
    require_state(u, sys.io_dim, "esph_residual (u)");
    return (sys.rho(x) - sys.omega(x)) * xdot + sys.hamiltonian.gradient(x) -
           (sys.gamma(x) - sys.pi(x)) * u;
}

Vec esph_output(const EsPhSystem& sys, const Vec& x, const Vec& xdot, const Vec& u) {
    require_state(x, sys.state_dim, "esph_output");
    require_state(xdot, sys.state_dim, "esph_output (xdot)");
    require_state(u, sys.io_dim, "esph_output (u)");
    return (sys.gamma(x) + sys.pi(x)).transpose() * xdot + (sys.sigma(x) - sys.mu(x)) * u;
}

IsoRhs isoph_rhs(const IsoPhSystem& sys, const Vec& x, const Vec& u) {
    require_state(x, sys.state_dim, "isoph_rhs");
    require_state(u, sys.io_dim, "isoph_rhs (u)");
    const Vec grad = sys.hamiltonian.gradient(x);
    IsoRhs out;
    out.xdot = (sys.J(x) - sys.R(x)) * grad + (sys.G(x) - sys.P(x)) * u;
    out.output = (sys.G(x) + sys.P(x)).transpose() * grad + (sys.S(x) - sys.Nf(x)) * u;
    return out;
}

}  // namespace esph
