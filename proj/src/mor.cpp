#include "esph/mor.hpp"

#include "esph/errors.hpp"

#include <Eigen/SVD>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace esph {

static_assert(std::endian::native == std::endian::little,
              "basis files are little-endian; byte swapping is not implemented");

PodTarget PodTarget::dimension(Index n) {
    PodTarget t;
    t.n_ = n;
    return t;
}

PodTarget PodTarget::energy(double fraction) {
    PodTarget t;
    t.energy_ = fraction;
    return t;
}

ReductionBasis pod_basis(const std::vector<Vec>& snapshots, const PodTarget& target) {
    if (snapshots.empty()) throw std::invalid_argument("pod_basis: empty snapshot set");
    const Index N = snapshots.front().size();
    for (const Vec& s : snapshots)
        if (s.size() != N) throw std::invalid_argument("pod_basis: inconsistent snapshot sizes");

    Mat S(N, static_cast<Index>(snapshots.size()));
    for (Index j = 0; j < S.cols(); ++j) S.col(j) = snapshots[static_cast<std::size_t>(j)];

    Eigen::BDCSVD<Mat> svd(S, Eigen::ComputeThinU);
    const Vec& sv = svd.singularValues();
    const double total = sv.squaredNorm();
    if (total == 0.0) throw std::invalid_argument("pod_basis: snapshots carry no energy");

    Index n = 0;
    if (target.is_dimension()) {
        n = target.dimension_value();
        if (n < 1 || n > sv.size())
            throw std::invalid_argument("pod_basis: dimension target out of range");
    } else {
        const double energy = target.energy_value();
        if (!(energy > 0.0) || energy > 1.0)
            throw std::invalid_argument("pod_basis: energy target must lie in (0, 1]");
        double cum = 0.0;
        for (n = 1; n <= sv.size(); ++n) {
            cum += sv(n - 1) * sv(n - 1);
            if (cum / total >= energy) break;
        }
        n = std::min(n, sv.size());
        // equal singular values at the cut are kept together
        while (n < sv.size() && sv(n) == sv(n - 1)) ++n;
    }

    ReductionBasis basis;
    basis.V = svd.matrixU().leftCols(n);
    basis.singular_values.assign(sv.data(), sv.data() + sv.size());
    basis.energy_captured = sv.head(n).squaredNorm() / total;
    return basis;
}

EsPhSystem reduce(const EsPhSystem& sys, const ReductionBasis& basis) {
    const Mat& V = basis.V;
    if (V.rows() != sys.state_dim)
        throw std::invalid_argument("reduce: basis row count does not match state_dim");
    if (V.cols() < 1) throw std::invalid_argument("reduce: basis must have at least one column");

    const auto project_square = [&V](const OperatorField& f, SymmetryClass sym) {
        if (f.is_constant())
            return OperatorField::constant(V.transpose() * f.constant_value() * V, sym);
        return OperatorField(V.cols(), V.cols(), sym, [V, f](const Vec& xr) -> Mat {
            return V.transpose() * f(V * xr) * V;
        });
    };
    const auto project_left = [&V](const OperatorField& f, SymmetryClass sym) {
        if (f.is_constant())
            return OperatorField::constant(V.transpose() * f.constant_value(), sym);
        return OperatorField(V.cols(), f.cols(), sym, [V, f](const Vec& xr) -> Mat {
            return V.transpose() * f(V * xr);
        });
    };
    const auto lift_eval = [&V](const OperatorField& f) {
        if (f.is_constant()) return f;
        return OperatorField(f.rows(), f.cols(), f.symmetry_class(), [V, f](const Vec& xr) -> Mat {
            return f(V * xr);
        });
    };

    const EnergyFunctional& H = sys.hamiltonian;
    EnergyFunctional reduced_H(
        V.cols(), [V, H](const Vec& xr) { return H.value(V * xr); },
        [V, H](const Vec& xr) -> Vec { return V.transpose() * H.gradient(V * xr); });
    if (H.discrete_gradient_override()) {
        auto dg = H.discrete_gradient_override();
        reduced_H.set_discrete_gradient_override([V, dg](const Vec& a, const Vec& b) -> Vec {
            return V.transpose() * dg(V * a, V * b);
        });
    }

    return EsPhSystem(V.cols(), sys.io_dim,
                      project_square(sys.omega, SymmetryClass::skew),
                      project_square(sys.rho, SymmetryClass::symmetric_psd),
                      project_left(sys.gamma, SymmetryClass::general),
                      project_left(sys.pi, SymmetryClass::general),
                      lift_eval(sys.mu), lift_eval(sys.sigma), std::move(reduced_H),
                      sys.label.empty() ? std::string("rom") : sys.label + "_rom");
}

ReductionError reduction_error(const Trajectory& full, const Trajectory& reduced,
                               const ReductionBasis& basis) {
    full.check_consistent();
    reduced.check_consistent();
    if (full.times.size() != reduced.times.size())
        throw std::invalid_argument("reduction_error: trajectories have different lengths");
    for (std::size_t k = 0; k < full.times.size(); ++k)
        if (std::abs(full.times[k] - reduced.times[k]) >
            1e-12 * std::max(1.0, std::abs(full.times[k])))
            throw std::invalid_argument("reduction_error: time grids do not match");

    const std::size_t n_states = full.states.size();
    ReductionError err;

    // trapezoidal quadrature of ∫‖x − Vx̂‖² dt over the grid
    double acc = 0.0;
    for (std::size_t k = 0; k < n_states; ++k) {
        double w = 0.0;
        if (k > 0) w += 0.5 * (full.times[k] - full.times[k - 1]);
        if (k + 1 < n_states) w += 0.5 * (full.times[k + 1] - full.times[k]);
        acc += w * (full.states[k] - basis.V * reduced.states[k]).squaredNorm();
    }
    err.state_l2 = std::sqrt(acc);

    acc = 0.0;
    for (std::size_t k = 0; k < full.n_steps(); ++k)
        acc += full.step_dt(k) * (full.outputs[k] - reduced.outputs[k]).squaredNorm();
    err.output_l2 = std::sqrt(acc);

    for (std::size_t k = 0; k < n_states; ++k)
        err.energy_max_dev =
            std::max(err.energy_max_dev, std::abs(full.energies[k] - reduced.energies[k]));
    return err;
}

namespace {

constexpr char kBasisMagic[8] = {'E', 'S', 'P', 'H', 'B', 'A', 'S', '1'};

}  // namespace

void save_basis(const std::string& path, const ReductionBasis& basis) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open basis file for writing: " + path);

    const auto n_full = static_cast<std::uint32_t>(basis.V.rows());
    const auto n_red = static_cast<std::uint32_t>(basis.V.cols());
    out.write(kBasisMagic, sizeof(kBasisMagic));
    out.write(reinterpret_cast<const char*>(&n_full), sizeof(n_full));
    out.write(reinterpret_cast<const char*>(&n_red), sizeof(n_red));
    // Eigen stores column-major, matching the file layout
    out.write(reinterpret_cast<const char*>(basis.V.data()),
              static_cast<std::streamsize>(sizeof(double) * basis.V.size()));
    if (!out) throw IoError("failed writing basis file: " + path);
}

ReductionBasis load_basis(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open basis file: " + path);

    char magic[8];
    std::uint32_t n_full = 0, n_red = 0;
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(&n_full), sizeof(n_full));
    in.read(reinterpret_cast<char*>(&n_red), sizeof(n_red));
    if (!in || std::memcmp(magic, kBasisMagic, sizeof(magic)) != 0)
        throw IoError("not a basis file (bad header): " + path);

    ReductionBasis basis;
    basis.V.resize(static_cast<Index>(n_full), static_cast<Index>(n_red));
    in.read(reinterpret_cast<char*>(basis.V.data()),
            static_cast<std::streamsize>(sizeof(double) * basis.V.size()));
    if (!in) throw IoError("truncated basis file: " + path);
    basis.energy_captured = std::numeric_limits<double>::quiet_NaN();
    return basis;
}

}  // namespace esph
