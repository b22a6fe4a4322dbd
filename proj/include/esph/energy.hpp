// energy.hpp — scalar energy functionals H(x) with gradients.
#pragma once

#include "esph/linalg.hpp"

#include <functional>

namespace esph {

// Energy functional H: ℝ^N → ℝ with gradient ∂H/∂x. When no analytic
// gradient is supplied, a central finite-difference fallback is installed
// (step 1e-6·max(1,|x_i|) per component). An optional two-point discrete
// gradient override replaces the default rule used by the integrators; see
// discrete_gradient() in integrators.hpp for the default and the exactness
// property it guarantees.
class EnergyFunctional {
public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradientFn = std::function<Vec(const Vec&)>;
    using DiscreteGradientFn = std::function<Vec(const Vec&, const Vec&)>;

    EnergyFunctional() = default;
    EnergyFunctional(Index dim, ValueFn value);
    EnergyFunctional(Index dim, ValueFn value, GradientFn gradient);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;

    Index dim() const { return dim_; }
    bool has_analytic_gradient() const { return analytic_gradient_; }

    const DiscreteGradientFn& discrete_gradient_override() const { return dg_override_; }
    void set_discrete_gradient_override(DiscreteGradientFn fn) { dg_override_ = std::move(fn); }

private:
    Index dim_ = 0;
    ValueFn value_;
    GradientFn gradient_;
    DiscreteGradientFn dg_override_;
    bool analytic_gradient_ = false;
};

}  // namespace esph
