#pragma once

#include <vector>

#include "evokit/adjoint_series.hpp"
#include "evokit/quadrature.hpp"

namespace evokit {

/// Default truncation order; term counts grow quickly beyond this.
inline constexpr int kDefaultMaxOrder = 6;

/// Coefficients of a power series in the perturbative parameter, indexed by
/// order n = 1..N (the order-zero coefficient is identically zero).
template <class T>
class OperatorSeries {
public:
  OperatorSeries() = default;
  explicit OperatorSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}

  int order() const { return static_cast<int>(coeffs_.size()); }
  bool empty() const { return coeffs_.empty(); }

  const T& at(int n) const { return coeffs_.at(static_cast<std::size_t>(n - 1)); }
  T& at(int n) { return coeffs_.at(static_cast<std::size_t>(n - 1)); }

  void append(T coeff) { coeffs_.push_back(std::move(coeff)); }

  const std::vector<T>& coeffs() const { return coeffs_; }

private:
  std::vector<T> coeffs_;
};

using MatrixSeries = OperatorSeries<Mat>;
using FunctionSeries = OperatorSeries<TimeOperatorFunction>;

/// sum_{n=1}^{N} lambda^n X_n.
Mat eval_series(const MatrixSeries& s, double lambda);

/// Pointwise sum_{n=1}^{N} lambda^n X_n(t) as a grid function.
TimeOperatorFunction eval_series(const FunctionSeries& s, double lambda);

void require_shared_grid(const FunctionSeries& s, const char* where);

/// Recover the generator coefficients C_n(t) from the transformed-picture
/// coefficients frakc_n(t):
///   C_1 = frakc_1,
///   C_n = bigB_n^-(frakc_1..frakc_{n-1}; IC_1..IC_{n-1}) + frakc_n,
/// with IC_k the running integral of the already recovered C_k.
FunctionSeries c_from_frakc(const FunctionSeries& frak_c, const QuadratureConfig& cfg = {});

/// Exact order-by-order inverse of c_from_frakc:
///   frakc_n = C_n - bigR_n^-(C_1..C_{n-1}; IC_1..IC_{n-1}).
FunctionSeries frakc_from_c(const FunctionSeries& c, const QuadratureConfig& cfg = {});

}  // namespace evokit
