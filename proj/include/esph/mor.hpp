// mor.hpp — POD basis construction and structure-preserving Galerkin reduction.
#pragma once

#include "esph/systems.hpp"
#include "esph/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace esph {

struct ReductionBasis {
    Mat V;                                // N×n with orthonormal columns
    std::vector<double> singular_values;  // full POD spectrum, descending
    double energy_captured = 0.0;         // Σ_{i≤n} σ_i² / Σ σ_i²

    Index full_dim() const { return V.rows(); }
    Index reduced_dim() const { return V.cols(); }
};

// Either a fixed mode count or a cumulative energy fraction in (0, 1].
class PodTarget {
public:
    static PodTarget dimension(Index n);
    static PodTarget energy(double fraction);

    bool is_dimension() const { return n_.has_value(); }
    Index dimension_value() const { return *n_; }
    double energy_value() const { return energy_; }

private:
    PodTarget() = default;
    std::optional<Index> n_;
    double energy_ = 0.0;
};

// Snapshot POD: thin SVD of the raw snapshot matrix (no mean subtraction, so
// x̂ ↦ Vx̂ stays linear). For an energy target, n is the smallest count with
// Σ_{i≤n} σ_i²/Σσ² ≥ energy, extended while σ_{n+1} ties σ_n. Throws
// std::invalid_argument on an empty or all-zero snapshot set, or an
// out-of-range dimension target.
ReductionBasis pod_basis(const std::vector<Vec>& snapshots, const PodTarget& target);

// Galerkin projection onto span(V): ω̂(x̂) = Vᵀω(Vx̂)V, ρ̂ = Vᵀρ(Vx̂)V,
// γ̂ = Vᵀγ(Vx̂), π̂ = Vᵀπ(Vx̂), μ̂(x̂) = μ(Vx̂), σ̂(x̂) = σ(Vx̂),
// Ĥ(x̂) = H(Vx̂), ∇Ĥ(x̂) = Vᵀ∇H(Vx̂). The result is again an es-pH system
// of dimension n (congruence with blockdiag(V, I) preserves skew λ and PSD
// φ). Constant full-order fields are contracted once; state-dependent fields
// wrap the full-order evaluations lazily. The IO space is kept full.
EsPhSystem reduce(const EsPhSystem& sys, const ReductionBasis& basis);

struct ReductionError {
    double state_l2 = 0.0;       // sqrt(∫ ‖x(t) − V x̂(t)‖² dt), trapezoidal
    double output_l2 = 0.0;      // sqrt(Σ_k dt_k ‖y_k − ŷ_k‖²)
    double energy_max_dev = 0.0; // max_k |H(x_k) − Ĥ(x̂_k)|
};

// Requires matching time grids; throws std::invalid_argument otherwise.
ReductionError reduction_error(const Trajectory& full, const Trajectory& reduced,
                               const ReductionBasis& basis);

// Basis persistence: 16-byte header (magic "ESPHBAS1", then uint32 LE N and
// n) followed by N·n little-endian doubles in column-major order. load
// returns a basis with empty singular_values and energy_captured = NaN.
void save_basis(const std::string& path, const ReductionBasis& basis);
ReductionBasis load_basis(const std::string& path);

}  // namespace esph
