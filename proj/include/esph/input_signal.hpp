// input_signal.hpp — input curves u(·) with the per-step evaluation rule.
#pragma once

#include "esph/linalg.hpp"

#include <functional>
#include <vector>

namespace esph {

enum class InputKind { zero, constant, callable, sampled };

// Input signal u: [t0, t_end] → ℝ^{n_y}. Inputs are treated as piecewise
// constant per step: a step [t, t+dt] uses u(t + dt/2) for callable signals,
// the exact value for zero/constant, and the nearest sample for sampled
// signals.
class InputSignal {
public:
    InputSignal() = default;

    static InputSignal zero(Index dim);
    static InputSignal constant(Vec value);
    static InputSignal callable(Index dim, std::function<Vec(double)> fn);
    // times must be non-empty and strictly increasing; one value per time.
    static InputSignal sampled(std::vector<double> times, std::vector<Vec> values);

    // Pointwise evaluation (nearest sample for sampled signals; ties resolve
    // to the earlier sample).
    Vec operator()(double t) const;

    // Per-step value for the step [t_left, t_left + dt].
    Vec step_value(double t_left, double dt) const;

    Index dim() const { return dim_; }
    InputKind kind() const { return kind_; }

private:
    InputKind kind_ = InputKind::zero;
    Index dim_ = 0;
    Vec value_;
    std::function<Vec(double)> fn_;
    std::vector<double> sample_times_;
    std::vector<Vec> sample_values_;
};

}  // namespace esph
