// structure.hpp — numerical verification of the skew/PSD block structure.
#pragma once

#include "esph/systems.hpp"

#include <cstdint>
#include <vector>

namespace esph {

// Relative tolerance factors. A sampled matrix passes the skew (symmetry)
// check when the defect is ≤ kStructTolFactor·max(1, largest |entry|) and the
// PSD check when its smallest eigenvalue is ≥ −kPsdTolFactor·max(1, largest
// |eigenvalue|). The exact pointwise properties are unverifiable numerically;
// validation is sample-based and probabilistic.
inline constexpr double kStructTolFactor = 1e-12;
inline constexpr double kPsdTolFactor = 1e-10;

struct StructureReport {
    std::vector<Vec> sampled_states;
    double max_skew_defect = 0.0;      // of λ (or Z) over the samples
    double max_sym_defect = 0.0;       // of φ (or W) over the samples
    double min_eigenvalue_phi = 0.0;   // of symmetrized φ (or W)
    double eps_struct = 0.0;           // realized absolute tolerances
    double eps_psd = 0.0;
    bool passed = false;
};

// Evaluates λ/φ (resp. Z/W) at each sample and reports the worst defects.
// passed ⇔ max_skew_defect ≤ eps_struct ∧ max_sym_defect ≤ eps_struct ∧
// min_eigenvalue_phi ≥ −eps_psd. Throws std::invalid_argument on an empty
// sample set.
StructureReport validate_structure(const EsPhSystem& sys, const std::vector<Vec>& samples);
StructureReport validate_structure(const IsoPhSystem& sys, const std::vector<Vec>& samples);

// count states with entries uniform in [lo, hi), deterministic in seed.
std::vector<Vec> sample_states(Index dim, int count, std::uint64_t seed,
                               double lo = -2.0, double hi = 2.0);

}  // namespace esph
