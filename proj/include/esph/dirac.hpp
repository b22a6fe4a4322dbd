// dirac.hpp — Dirac-structure representations and resistive elimination.
#pragma once

#include "esph/integrators.hpp"
#include "esph/systems.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace esph {

// es-pH system as the graph Dirac structure {(f, e) : e = L(x) f} over the
// flow space f = (−ẋ, u, f_R1, f_R2) with efforts e = (∇H, y, e_R1, e_R2),
//
//        ⎡ −ω    γ   τ₁   0  ⎤
//   L =  ⎢ −γᵀ  −μ   0   −τ₂ ⎥
//        ⎢ −τ₁ᵀ  0   0    0  ⎥
//        ⎣  0    τ₂ᵀ 0    0  ⎦
//
// closed by the resistive relation f_R = −φ̄(x) e_R with φ̄ symmetric PSD.
// L is skew whenever ω is skew and μ is skew-compatible.
struct EsDiracSystem {
    EsDiracSystem(Index state_dim, Index io_dim, Index r1, Index r2,
                  OperatorField omega, OperatorField gamma,
                  OperatorField tau1, OperatorField tau2,
                  OperatorField mu, OperatorField phibar,
                  EnergyFunctional hamiltonian, std::string label = {});

    Index state_dim = 0;
    Index io_dim = 0;
    Index r1 = 0;          // resistive dims acting on the state / IO ports
    Index r2 = 0;
    OperatorField omega;   // N×N
    OperatorField gamma;   // N×n_y
    OperatorField tau1;    // N×r1
    OperatorField tau2;    // n_y×r2
    OperatorField mu;      // n_y×n_y
    OperatorField phibar;  // (r1+r2)×(r1+r2), blocks φ̄₁₁ φ̄₁₂ / φ̄₁₂ᵀ φ̄₂₂
    EnergyFunctional hamiltonian;
    std::string label;
};

// iso-pH mirror: the graph {(f, e) : f = K(x) e} with
//
//        ⎡ −J   −G  −T₁   0  ⎤
//   K =  ⎢  Gᵀ  −N   0   −T₂ ⎥
//        ⎢  T₁ᵀ  0   0    0  ⎥
//        ⎣  0    T₂ᵀ 0    0  ⎦
//
// and resistive relation e_R = −W̄(x) f_R.
struct IsoDiracSystem {
    IsoDiracSystem(Index state_dim, Index io_dim, Index r1, Index r2,
                   OperatorField J, OperatorField G,
                   OperatorField T1, OperatorField T2,
                   OperatorField Nf, OperatorField wbar,
                   EnergyFunctional hamiltonian, std::string label = {});

    Index state_dim = 0;
    Index io_dim = 0;
    Index r1 = 0;
    Index r2 = 0;
    OperatorField J;     // N×N
    OperatorField G;     // N×n_y
    OperatorField T1;    // N×r1
    OperatorField T2;    // n_y×r2
    OperatorField Nf;    // n_y×n_y
    OperatorField wbar;  // (r1+r2)×(r1+r2)
    EnergyFunctional hamiltonian;
    std::string label;
};

Mat assemble_L(const EsDiracSystem& sys, const Vec& x);
Mat assemble_K(const IsoDiracSystem& sys, const Vec& x);

struct DiracCheck {
    double max_power_defect = 0.0;
    Index dimension = 0;   // dim(F), by graph construction
    bool passed = false;
};

// Certifies the Dirac axioms for the graph of a linear map: samples n random
// flow vectors f, computes e = M f, and reports the worst normalized power
// pairing |fᵀe| / (‖f‖‖e‖ + δ). The dimension axiom holds structurally for a
// graph and is reported as the matrix size. passed requires the power defect
// and the skew defect of M (relative to its magnitude) to be ≤ 1e-12.
DiracCheck verify_dirac(const Mat& L_or_K, int n_samples, std::uint64_t seed = 42);

// Resolves the resistive ports algebraically (f_R = −φ̄ e_R), producing the
// ODE-form system with ρ = τ₁ φ̄₁₁ τ₁ᵀ, π = τ₁ φ̄₁₂ τ₂ᵀ, σ = τ₂ φ̄₂₂ τ₂ᵀ;
// ω, γ, μ, H carry over. The congruence keeps φ symmetric PSD.
EsPhSystem eliminate_resistive_es(const EsDiracSystem& sys);

// Iso path: R = T₁ W̄₁₁ T₁ᵀ, P = T₁ W̄₁₂ T₂ᵀ, S = T₂ W̄₂₂ T₂ᵀ.
IsoPhSystem eliminate_resistive_iso(const IsoDiracSystem& sys);

struct DaeTrajectory {
    Trajectory trajectory;
    std::vector<Vec> resistive_efforts;      // e_R = (τ₁ᵀ δx; τ₂ᵀ u) per step
    std::vector<Vec> resistive_flows;        // f_R = −φ̄ e_R per step
    std::vector<double> resistive_pairings;  // ⟨e_R, f_R⟩ = −e_Rᵀ φ̄ e_R ≤ 0
};

// Advances the differential-algebraic form directly: per step the state row
// of L is solved with the discrete gradient, with e_R1 = τ₁ᵀδx, e_R2 = τ₂ᵀu
// and f_R = −φ̄ e_R substituted algebraically; the output comes from the
// second row of L. Serves as the independent oracle for
// eliminate_resistive_es. Requires cfg.scheme == discrete_gradient.
DaeTrajectory simulate_dae_es(const EsDiracSystem& sys, const InputSignal& u,
                              const SimConfig& cfg, const Vec& x0);

}  // namespace esph
