// Shared oracles and generators for the test suites.
#pragma once

#include "esph/energy.hpp"
#include "esph/linalg.hpp"

#include <cmath>
#include <random>

namespace esph::test {

// Closed-form flow of the undamped oscillator q̈ = −(k/m) q for u ≡ 0.
inline Vec oscillator_closed_form(double m, double k, const Vec& x0, double t) {
    const double w0 = std::sqrt(k / m);
    const double c = std::cos(w0 * t), s = std::sin(w0 * t);
    Vec x(2);
    x(0) = x0(0) * c + x0(1) / (m * w0) * s;
    x(1) = -x0(0) * m * w0 * s + x0(1) * c;
    return x;
}

// Worst relative deviation between the analytic gradient and central finite
// differences of the value (step 1e-6·max(1,|x_i|)).
inline double gradient_fd_error(const EnergyFunctional& H, const Vec& x) {
    double worst = 0.0;
    Vec xp = x;
    const Vec g = H.gradient(x);
    for (Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
        const double xi = x(i);
        xp(i) = xi + h;
        const double fp = H.value(xp);
        xp(i) = xi - h;
        const double fm = H.value(xp);
        xp(i) = xi;
        const double fd = (fp - fm) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - g(i)) / std::max(1.0, std::abs(g(i))));
    }
    return worst;
}

// Orthonormal columns from a QR factorization of a random matrix.
inline Mat random_orthonormal(std::mt19937_64& rng, Index rows, Index cols) {
    const Mat A = random_matrix(rng, rows, cols, -1.0, 1.0);
    Eigen::HouseholderQR<Mat> qr(A);
    Mat Q = qr.householderQ();
    return Q.leftCols(cols);
}

}  // namespace esph::test
