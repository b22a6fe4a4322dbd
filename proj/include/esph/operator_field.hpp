// operator_field.hpp — state-dependent matrix coefficients.
#pragma once

#include "esph/linalg.hpp"

#include <functional>
#include <optional>

namespace esph {

enum class SymmetryClass { general, skew, symmetric_psd };

// A mapping x ↦ M(x) from a state vector to a dense matrix of declared shape
// and symmetry class. Constant fields store their value directly and never
// invoke a callback. Evaluation must be free of side effects; fields are
// immutable after construction and safe to share across threads.
class OperatorField {
public:
    using EvalFn = std::function<Mat(const Vec&)>;

    OperatorField() = default;
    OperatorField(Index rows, Index cols, SymmetryClass sym, EvalFn eval);

    static OperatorField constant(Mat value, SymmetryClass sym = SymmetryClass::general);
    static OperatorField zero(Index rows, Index cols, SymmetryClass sym = SymmetryClass::general);

    // Evaluates the field; throws std::runtime_error if the callback returns
    // a matrix of the wrong shape.
    Mat operator()(const Vec& x) const;

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    SymmetryClass symmetry_class() const { return sym_; }
    bool is_constant() const { return const_value_.has_value(); }
    const Mat& constant_value() const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    SymmetryClass sym_ = SymmetryClass::general;
    EvalFn eval_;
    std::optional<Mat> const_value_;
};

}  // namespace esph
