// systems.hpp — es-pH and iso-pH system records and their defining equations.
#pragma once

#include "esph/energy.hpp"
#include "esph/operator_field.hpp"

#include <string>

namespace esph {

// Energy-stable port-Hamiltonian system
//
//   (−ω(x) + ρ(x)) ẋ = −∇H(x) + (γ(x) − π(x)) u
//              y = (γ(x)ᵀ + π(x)ᵀ) ẋ + (−μ(x) + σ(x)) u
//
// where the combined blocks λ = [[ω, γ], [−γᵀ, μ]] must be pointwise skew
// and φ = [[ρ, π], [πᵀ, σ]] pointwise symmetric positive semi-definite.
// μ is stored as a general field; skewness is enforced at the λ level.
// io_dim = 0 (no ports) degenerates to a plain energy-stable system.
struct EsPhSystem {
    EsPhSystem(Index state_dim, Index io_dim,
               OperatorField omega, OperatorField rho,
               OperatorField gamma, OperatorField pi,
               OperatorField mu, OperatorField sigma,
               EnergyFunctional hamiltonian, std::string label = {});

    Index state_dim = 0;  // N
    Index io_dim = 0;     // n_y
    OperatorField omega, rho;    // N×N
    OperatorField gamma, pi;     // N×n_y
    OperatorField mu, sigma;     // n_y×n_y
    EnergyFunctional hamiltonian;
    std::string label;
};

// Input–state–output port-Hamiltonian system with feedthrough
//
//   ẋ = (J(x) − R(x)) ∇H(x) + (G(x) − P(x)) u
//   y = (G(x)ᵀ + P(x)ᵀ) ∇H(x) + (S(x) − N(x)) u
//
// with Z = [[J, G], [−Gᵀ, N]] pointwise skew and W = [[R, P], [Pᵀ, S]]
// pointwise symmetric PSD. The N block is named Nf to avoid clashing with
// the state dimension.
struct IsoPhSystem {
    IsoPhSystem(Index state_dim, Index io_dim,
                OperatorField J, OperatorField R,
                OperatorField G, OperatorField P,
                OperatorField S, OperatorField Nf,
                EnergyFunctional hamiltonian, std::string label = {});

    Index state_dim = 0;
    Index io_dim = 0;
    OperatorField J, R;    // N×N
    OperatorField G, P;    // N×n_y
    OperatorField S, Nf;   // n_y×n_y
    EnergyFunctional hamiltonian;
    std::string label;
};

// λ(x) = [[ω, γ], [−γᵀ, μ]], size (N+n_y)×(N+n_y).
Mat assemble_lambda(const EsPhSystem& sys, const Vec& x);

// φ(x) = [[ρ, π], [πᵀ, σ]], size (N+n_y)×(N+n_y).
Mat assemble_phi(const EsPhSystem& sys, const Vec& x);

// Z(x) = [[J, G], [−Gᵀ, N]] and W(x) = [[R, P], [Pᵀ, S]].
Mat assemble_Z(const IsoPhSystem& sys, const Vec& x);
Mat assemble_W(const IsoPhSystem& sys, const Vec& x);

// (−ω(x)+ρ(x))·ẋ + ∇H(x) − (γ(x)−π(x))·u; zero iff (x, ẋ, u) satisfies the
// state equation.
Vec esph_residual(const EsPhSystem& sys, const Vec& x, const Vec& xdot, const Vec& u);

// (γ(x)ᵀ+π(x)ᵀ)·ẋ + (−μ(x)+σ(x))·u.
Vec esph_output(const EsPhSystem& sys, const Vec& x, const Vec& xdot, const Vec& u);

struct IsoRhs {
    Vec xdot;
    Vec output;
};

IsoRhs isoph_rhs(const IsoPhSystem& sys, const Vec& x, const Vec& u);

}  // namespace esph
