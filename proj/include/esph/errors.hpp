// errors.hpp — exception taxonomy shared by the library and the CLI.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace esph {

// Invalid run configuration, unknown model, bad parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File read/write failure (CLI exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Base for time-stepping failures (CLI exit code 3). The simulation loop
// attaches the failing step before rethrowing.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
    long step_index = -1;
};

// Newton iteration hit its cap or produced non-finite values; carries the
// last iterate for post-mortem inspection.
struct NewtonDivergence : SolverError {
    NewtonDivergence(const std::string& msg, Eigen::VectorXd last, int iters, double res)
        : SolverError(msg), last_iterate(std::move(last)), iterations(iters), residual_norm(res) {}
    Eigen::VectorXd last_iterate;
    int iterations = 0;
    double residual_norm = 0.0;
};

// Newton Jacobian numerically singular; reported distinctly from divergence.
struct SingularJacobian : SolverError {
    using SolverError::SolverError;
};

// reference_rk4 requires an invertible (−ω+ρ); raised when it is not.
struct SingularMassOperator : SolverError {
    using SolverError::SolverError;
};

}  // namespace esph
