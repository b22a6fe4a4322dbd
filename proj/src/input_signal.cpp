#include "esph/input_signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esph {

InputSignal InputSignal::zero(Index dim) {
    InputSignal s;
    s.kind_ = InputKind::zero;
    s.dim_ = dim;
    s.value_ = Vec::Zero(dim);
    return s;
}

InputSignal InputSignal::constant(Vec value) {
    InputSignal s;
    s.kind_ = InputKind::constant;
    s.dim_ = value.size();
    s.value_ = std::move(value);
    return s;
}

InputSignal InputSignal::callable(Index dim, std::function<Vec(double)> fn) {
    if (!fn) throw std::invalid_argument("InputSignal: null callback");
    InputSignal s;
    s.kind_ = InputKind::callable;
    s.dim_ = dim;
    s.fn_ = std::move(fn);
    return s;
}

InputSignal InputSignal::sampled(std::vector<double> times, std::vector<Vec> values) {
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument("InputSignal: sampled signal needs one value per time");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("InputSignal: sample times must be strictly increasing");
    const Index dim = values.front().size();
    for (const Vec& v : values)
        if (v.size() != dim)
            throw std::invalid_argument("InputSignal: inconsistent sample dimensions");
    InputSignal s;
    s.kind_ = InputKind::sampled;
    s.dim_ = dim;
    s.sample_times_ = std::move(times);
    s.sample_values_ = std::move(values);
    return s;
}

Vec InputSignal::operator()(double t) const {
    switch (kind_) {
        case InputKind::zero:
        case InputKind::constant:
            return value_;
        case InputKind::callable: {
            Vec u = fn_(t);
            if (u.size() != dim_)
                throw std::runtime_error("InputSignal: callback returned wrong dimension");
            return u;
        }
        case InputKind::sampled: {
            auto it = std::lower_bound(sample_times_.begin(), sample_times_.end(), t);
            if (it == sample_times_.end()) return sample_values_.back();
            if (it == sample_times_.begin()) return sample_values_.front();
            const auto hi = static_cast<std::size_t>(it - sample_times_.begin());
            const std::size_t lo = hi - 1;
            // nearest sample; equidistant resolves to the earlier one
            return (t - sample_times_[lo] <= sample_times_[hi] - t) ? sample_values_[lo]
                                                                    : sample_values_[hi];
        }
    }
    return value_;
}

Vec InputSignal::step_value(double t_left, double dt) const {
    if (kind_ == InputKind::zero || kind_ == InputKind::constant) return value_;
    return (*this)(t_left + 0.5 * dt);
}

}  // namespace esph
