#include "esph/structure.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace esph {

namespace {

// Shared core: worst skew defect of the skew-block assembly, worst symmetry
// defect and smallest eigenvalue of the PSD-block assembly.
StructureReport validate_assemblies(const std::vector<Vec>& samples,
                                    const std::function<Mat(const Vec&)>& skew_part,
                                    const std::function<Mat(const Vec&)>& psd_part) {
    if (samples.empty())
        throw std::invalid_argument("validate_structure: sample set must be non-empty");

    StructureReport report;
    report.sampled_states = samples;
    double entry_scale = 0.0;
    double eig_scale = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();

    for (const Vec& x : samples) {
        const Mat lam = skew_part(x);
        const Mat phi = psd_part(x);
        report.max_skew_defect = std::max(report.max_skew_defect, skew_defect(lam));
        report.max_sym_defect = std::max(report.max_sym_defect, symmetry_defect(phi));
        min_eig = std::min(min_eig, min_symmetric_eigenvalue(phi));
        eig_scale = std::max(eig_scale, max_abs_symmetric_eigenvalue(phi));
        entry_scale = std::max({entry_scale, max_abs(lam), max_abs(phi)});
    }

    report.min_eigenvalue_phi = std::isfinite(min_eig) ? min_eig : 0.0;
    report.eps_struct = kStructTolFactor * std::max(1.0, entry_scale);
    report.eps_psd = kPsdTolFactor * std::max(1.0, eig_scale);
    report.passed = report.max_skew_defect <= report.eps_struct &&
                    report.max_sym_defect <= report.eps_struct &&
                    report.min_eigenvalue_phi >= -report.eps_psd;
    return report;
}

}  // namespace

StructureReport validate_structure(const EsPhSystem& sys, const std::vector<Vec>& samples) {
    return validate_assemblies(
        samples, [&](const Vec& x) { return assemble_lambda(sys, x); },
        [&](const Vec& x) { return assemble_phi(sys, x); });
}

StructureReport validate_structure(const IsoPhSystem& sys, const std::vector<Vec>& samples) {
    return validate_assemblies(
        samples, [&](const Vec& x) { return assemble_Z(sys, x); },
        [&](const Vec& x) { return assemble_W(sys, x); });
}

std::vector<Vec> sample_states(Index dim, int count, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::vector<Vec> states;
    states.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) states.push_back(random_vector(rng, dim, lo, hi));
    return states;
}

}  // namespace esph
