#include "esph/linalg.hpp"

namespace esph {

double min_symmetric_eigenvalue(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_abs_symmetric_eigenvalue(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Vec random_vector(std::mt19937_64& rng, Index n, double lo, double hi) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = uniform_double(rng, lo, hi);
    return v;
}

Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols, double lo, double hi) {
    Mat m(rows, cols);
    // column-major fill to keep draw order independent of Eigen internals
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = uniform_double(rng, lo, hi);
    return m;
}

}  // namespace esph
