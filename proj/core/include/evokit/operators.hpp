#pragma once

#include "evokit/matrix.hpp"

namespace evokit {

inline constexpr double kHermTol = 1e-12;
inline constexpr double kUnitTol = 1e-12;

/// A matrix checked Hermitian on construction and then symmetrized, so that
/// round-off cannot accumulate across recursion orders.
class HermitianOperator {
public:
  explicit HermitianOperator(Mat m, double herm_tol = kHermTol);

  const Mat& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

private:
  Mat mat_;
};

/// A matrix checked unitary on construction.
class UnitaryOperator {
public:
  explicit UnitaryOperator(Mat u, double unit_tol = kUnitTol);

  const Mat& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

private:
  Mat mat_;
};

/// exp(-i * scale * G) for Hermitian G, evaluated through the spectral
/// decomposition so the result is unitary whatever the size of the phases.
UnitaryOperator unitary_exp(const Mat& generator, double scale = 1.0);

}  // namespace evokit
