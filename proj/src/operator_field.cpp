#include "esph/operator_field.hpp"

#include <stdexcept>
#include <string>

namespace esph {

OperatorField::OperatorField(Index rows, Index cols, SymmetryClass sym, EvalFn eval)
    : rows_(rows), cols_(cols), sym_(sym), eval_(std::move(eval)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("OperatorField: negative shape");
    if (!eval_) throw std::invalid_argument("OperatorField: null eval callback");
}

OperatorField OperatorField::constant(Mat value, SymmetryClass sym) {
    OperatorField f;
    f.rows_ = value.rows();
    f.cols_ = value.cols();
    f.sym_ = sym;
    f.const_value_ = std::move(value);
    return f;
}

OperatorField OperatorField::zero(Index rows, Index cols, SymmetryClass sym) {
    return constant(Mat::Zero(rows, cols), sym);
}

Mat OperatorField::operator()(const Vec& x) const {
    if (const_value_) return *const_value_;
    if (!eval_) throw std::runtime_error("OperatorField: evaluating a default-constructed field");
    Mat m = eval_(x);
    if (m.rows() != rows_ || m.cols() != cols_) {
        throw std::runtime_error("OperatorField: eval returned " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", declared " + std::to_string(rows_) +
                                 "x" + std::to_string(cols_));
    }
    return m;
}

const Mat& OperatorField::constant_value() const {
    if (!const_value_) throw std::runtime_error("OperatorField: not a constant field");
    return *const_value_;
}

}  // namespace esph
