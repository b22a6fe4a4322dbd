#include "esph/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace esph {

namespace {

// Central finite differences of the value, step 1e-6·max(1,|x_i|).
EnergyFunctional::GradientFn make_fd_gradient(EnergyFunctional::ValueFn value) {
    return [value = std::move(value)](const Vec& x) -> Vec {
        Vec g(x.size());
        Vec xp = x;
        for (Index i = 0; i < x.size(); ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
            const double xi = x(i);
            xp(i) = xi + h;
            const double fp = value(xp);
            xp(i) = xi - h;
            const double fm = value(xp);
            xp(i) = xi;
            g(i) = (fp - fm) / (2.0 * h);
        }
        return g;
    };
}

}  // namespace

EnergyFunctional::EnergyFunctional(Index dim, ValueFn value)
    : dim_(dim), value_(value), gradient_(make_fd_gradient(value)), analytic_gradient_(false) {
    if (dim <= 0) throw std::invalid_argument("EnergyFunctional: dim must be positive");
    if (!value_) throw std::invalid_argument("EnergyFunctional: null value callback");
}

EnergyFunctional::EnergyFunctional(Index dim, ValueFn value, GradientFn gradient)
    : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)), analytic_gradient_(true) {
    if (dim <= 0) throw std::invalid_argument("EnergyFunctional: dim must be positive");
    if (!value_ || !gradient_) throw std::invalid_argument("EnergyFunctional: null callback");
}

double EnergyFunctional::value(const Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("EnergyFunctional: state length mismatch");
    return value_(x);
}

Vec EnergyFunctional::gradient(const Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("EnergyFunctional: state length mismatch");
    Vec g = gradient_(x);
    if (g.size() != dim_) throw std::runtime_error("EnergyFunctional: gradient length mismatch");
    return g;
}

}  // namespace esph
