#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "evokit/operators.hpp"

namespace evokit {

struct PropagationResult {
  UnitaryOperator u;
  double est_error = 0.0;
  int steps = 0;
};

/// Hermitian Hamiltonian sample at a given time.
using HamiltonianFn = std::function<Mat(double)>;

/// Ground-truth evolution operator U(t1, t0) by a fourth-order commutator-free
/// exponential integrator (two Gauss-node exponentials per step), with step
/// halving until two refinements agree to tol. Every step is the exponential
/// of a Hermitian combination, so the result is unitary by construction.
PropagationResult propagate_exact(const HamiltonianFn& h, double t0, double t1, double tol,
                                  int max_steps = 1 << 22);

/// Spec-shaped convenience overload: H as a map (lambda, t) -> matrix.
PropagationResult propagate_exact(const std::function<Mat(double, double)>& h, double lambda,
                                  double t, double tol);

struct ScalingVerdict {
  double slope = 0.0;
  bool pass = false;
};

/// Least-squares slope of log(err) against log(lambda); passes when the slope
/// lies in [N+1-0.4, N+1+0.6]. Needs at least three error samples.
ScalingVerdict order_scaling_check(const std::vector<std::pair<double, double>>& lambda_err,
                                   int order_n);

}  // namespace evokit
