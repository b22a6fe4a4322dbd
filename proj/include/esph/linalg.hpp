// linalg.hpp — dense matrix/vector aliases and small numeric helpers.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace esph {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// Largest absolute entry; 0 for empty matrices.
inline double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Defect of skew-symmetry: max-abs entry of M + Mᵀ.
inline double skew_defect(const Mat& m) {
    return max_abs(m + m.transpose());
}

// Defect of symmetry: max-abs entry of M − Mᵀ.
inline double symmetry_defect(const Mat& m) {
    return max_abs(m - m.transpose());
}

// Smallest eigenvalue of the symmetric part (M + Mᵀ)/2; 0 for empty matrices.
double min_symmetric_eigenvalue(const Mat& m);

// Largest |eigenvalue| of the symmetric part; 0 for empty matrices.
double max_abs_symmetric_eigenvalue(const Mat& m);

// Uniform double in [lo, hi) built from raw 64-bit draws. Unlike
// std::uniform_real_distribution the mapping is pinned, so sequences are
// reproducible across standard library implementations.
inline double uniform_double(std::mt19937_64& rng, double lo, double hi) {
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * r;
}

Vec random_vector(std::mt19937_64& rng, Index n, double lo = -2.0, double hi = 2.0);
Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols, double lo = -1.0, double hi = 1.0);

}  // namespace esph
