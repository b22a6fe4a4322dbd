// models.hpp — analytically controlled example systems and the model registry.
#pragma once

#include "esph/dirac.hpp"
#include "esph/systems.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace esph {

using Params = std::map<std::string, double>;

double param(const Params& params, const std::string& key, double fallback);

// Damped harmonic oscillator in es-pH form: state x = (q, p),
// H = k q²/2 + p²/(2m), ω = [[0,−1],[1,0]], ρ = diag(d, 0), γ = (1,0)ᵀ,
// π = μ = σ = 0. Equivalent to q̇ = p/m, ṗ = −kq − (d/m)p + u with
// collocated velocity output y = q̇.
EsPhSystem damped_oscillator_es(double m, double k, double d);

// Same structure with the non-quadratic H = k q²/2 + α q⁴/4 + p²/2.
EsPhSystem duffing_es(double k, double alpha, double d);

// 1D chain of n_cells unit masses joined by springs of stiffness c², anchored
// at the right end; state x = (q, p) with N = 2·n_cells. Boundary force input
// on the first cell, collocated boundary velocity output y = q̇₁, optional
// boundary damping d_boundary entering ρ.
EsPhSystem wave_chain_es(int n_cells, double c, double d_boundary);

// The same plant as damped_oscillator_es in iso-pH form: J = [[0,1],[−1,0]],
// R = diag(0, d), G = (0,1)ᵀ, P = S = N = 0.
IsoPhSystem damped_oscillator_iso(double m, double k, double d);

// Oscillator with state-dependent ω(x) = (1+eps·q²)·[[0,−1],[1,0]], ρ = 0,
// γ = (1,0)ᵀ, H = (q²+p²)/2; skew for every x by construction.
EsPhSystem modulated_oscillator_es(double eps);

// Dirac-structure twins (resistive ports carrying the damping).
EsDiracSystem damped_oscillator_dirac(double m, double k, double d);
EsDiracSystem duffing_dirac(double k, double alpha, double d);
EsDiracSystem wave_chain_dirac(int n_cells, double c, double d_boundary);
EsDiracSystem modulated_oscillator_dirac(double eps);
IsoDiracSystem damped_oscillator_dirac_iso(double m, double k, double d);

// Registry entry: named builders over a parameter map. Builders are pure;
// the registry is immutable after startup. Variants a model does not provide
// are left empty.
struct ModelSpec {
    std::string name;
    Params defaults;
    std::function<EsPhSystem(const Params&)> build_es;
    std::function<IsoPhSystem(const Params&)> build_iso;
    std::function<EsDiracSystem(const Params&)> build_dirac;
    // Closed-form solution for u ≡ 0 where available (nullopt otherwise).
    std::function<std::optional<Vec>(const Params&, const Vec& x0, double t)> reference_solution;
    std::function<Vec(const Params&)> default_x0;
};

const std::vector<ModelSpec>& model_registry();

// Negative-control fixtures (deliberately broken structure) reachable by
// name for CLI tests but excluded from model_registry().
const std::vector<ModelSpec>& fixture_registry();

// Looks up registry + fixtures; throws ConfigError listing the registry
// names when the model is unknown.
const ModelSpec& find_model(const std::string& name);

}  // namespace esph
