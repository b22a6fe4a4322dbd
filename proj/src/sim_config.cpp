#include "esph/sim_config.hpp"

#include <stdexcept>
#include <string>

namespace esph {

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
    if (t_end < t0) throw std::invalid_argument("SimConfig: t_end must be >= t0");
    if (t_end > t0 && dt > t_end - t0)
        throw std::invalid_argument("SimConfig: dt exceeds the time span");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("SimConfig: newton_tol must be positive");
    if (newton_max_iter < 1)
        throw std::invalid_argument("SimConfig: newton_max_iter must be at least 1");
    if (!(fd_step > 0.0)) throw std::invalid_argument("SimConfig: fd_step must be positive");
    if (jacobian == JacobianMode::user && !user_jacobian)
        throw std::invalid_argument("SimConfig: jacobian mode 'user' requires user_jacobian");
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::discrete_gradient: return "discrete_gradient";
        case Scheme::implicit_midpoint: return "implicit_midpoint";
        case Scheme::reference_rk4: return "reference_rk4";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view s) {
    if (s == "discrete_gradient") return Scheme::discrete_gradient;
    if (s == "implicit_midpoint") return Scheme::implicit_midpoint;
    if (s == "reference_rk4") return Scheme::reference_rk4;
    throw std::invalid_argument("unknown scheme '" + std::string(s) +
                                "' (expected discrete_gradient, implicit_midpoint or reference_rk4)");
}

}  // namespace esph
