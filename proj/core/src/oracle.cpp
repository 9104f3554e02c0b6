#include "evokit/oracle.hpp"

#include <cmath>
#include <string>

namespace evokit {

namespace {

// Fourth-order commutator-free scheme on the two Gauss nodes:
//   U(t+h, t) = exp(-i h (a2 H1 + a1 H2)) * exp(-i h (a1 H1 + a2 H2)),
// H1,2 sampled at t + (1/2 -+ sqrt(3)/6) h.
constexpr double kNodeOffset = 0.2886751345948129;  // sqrt(3)/6
constexpr double kA1 = 0.25 + kNodeOffset;
constexpr double kA2 = 0.25 - kNodeOffset;

// Nearest unitary (polar factor); keeps round-off from leaking out of the
// unitary group over long step products.
Mat reunitarize(const Mat& u) {
  Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat propagate_fixed(const HamiltonianFn& h, double t0, double t1, int steps) {
  const double dt = (t1 - t0) / steps;
  Mat probe = h(t0);
  require_square(probe, "propagate_exact");
  Mat u = Mat::Identity(probe.rows(), probe.cols());
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Mat h1 = h(t + (0.5 - kNodeOffset) * dt);
    const Mat h2 = h(t + (0.5 + kNodeOffset) * dt);
    const Mat g1 = dt * (kA1 * h1 + kA2 * h2);
    const Mat g2 = dt * (kA2 * h1 + kA1 * h2);
    u = unitary_exp(g2).matrix() * (unitary_exp(g1).matrix() * u);
    if ((k & 1023) == 1023) u = reunitarize(u);
  }
  return reunitarize(u);
}

}  // namespace

PropagationResult propagate_exact(const HamiltonianFn& h, double t0, double t1, double tol,
                                  int max_steps) {
  if (tol <= 0.0) throw NoConvergence("propagate_exact: tolerance must be positive");
  if (t1 < t0) throw NoConvergence("propagate_exact: t1 < t0");
  if (t1 == t0) {
    Mat probe = h(t0);
    return PropagationResult{UnitaryOperator(Mat::Identity(probe.rows(), probe.cols())), 0.0, 0};
  }
  int steps = 16;
  Mat u = propagate_fixed(h, t0, t1, steps);
  while (2 * steps <= max_steps) {
    Mat fine = propagate_fixed(h, t0, t1, 2 * steps);
    const double delta = (fine - u).norm();
    if (delta <= tol) {
      return PropagationResult{UnitaryOperator(std::move(fine)), delta, 2 * steps};
    }
    u = std::move(fine);
    steps *= 2;
  }
  throw NoConvergence("propagate_exact: step floor reached at " + std::to_string(steps) +
                      " steps without meeting tol");
}

PropagationResult propagate_exact(const std::function<Mat(double, double)>& h, double lambda,
                                  double t, double tol) {
  return propagate_exact([&h, lambda](double s) { return h(lambda, s); }, 0.0, t, tol);
}

ScalingVerdict order_scaling_check(const std::vector<std::pair<double, double>>& lambda_err,
                                   int order_n) {
  if (lambda_err.size() < 3) {
    throw InsufficientData("order_scaling_check: need at least 3 lambda samples");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(lambda_err.size());
  for (const auto& [lambda, err] : lambda_err) {
    if (lambda <= 0.0 || err <= 0.0) {
      throw InsufficientData("order_scaling_check: lambda and err must be positive");
    }
    const double x = std::log(lambda);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingVerdict v;
  v.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double target = order_n + 1.0;
  v.pass = v.slope >= target - 0.4 && v.slope <= target + 0.6;
  return v;
}

}  // namespace evokit
