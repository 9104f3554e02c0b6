#pragma once

#include "evokit/time_function.hpp"

namespace evokit {

struct QuadratureConfig {
  int initial_panels = 256;  // >= 4, used when sampling fresh evaluators
  double quad_tol = 1e-9;
  int max_refinements = 12;
  double avg_tol = 1e-6;  // agreement threshold for the infinite-window ladder
};

/// Integral of f over [a, b] within [0, t_max], fourth-order in the grid step.
/// Refinable functions are refined until two resolutions agree to quad_tol;
/// sample-backed functions get a Richardson error estimate instead and raise
/// QuadratureFailure when it exceeds quad_tol.
Mat integrate(const TimeOperatorFunction& f, double a, double b,
              const QuadratureConfig& cfg = {});

/// F(t_i) = integral of f from 0 to t_i, on the same grid, fourth order.
TimeOperatorFunction cumulative(const TimeOperatorFunction& f);

/// (1/tau) * integral over [0, tau].
Mat window_average(const TimeOperatorFunction& f, double tau, const QuadratureConfig& cfg = {});

/// Window average against a sin^8 taper, which suppresses the contribution of
/// any oscillatory component as (frequency * window)^{-8}.
Mat tapered_average(const TimeOperatorFunction& f, double window);

struct LadderResult {
  Mat value;
  bool converged = false;
  double last_delta = 0.0;
  std::vector<double> windows;
};

/// Doubling-window ladder for the tau -> infinity average: tapered averages on
/// windows t_max/2^{k}, Richardson-extrapolated pairwise in 1/window; converged
/// when the last two extrapolants agree to avg_tol.
LadderResult window_average_infinite_detail(const TimeOperatorFunction& f, int rungs = 4,
                                            double avg_tol = 1e-6);

/// Same, throwing AverageNonConvergent when the ladder does not settle.
Mat window_average_infinite(const TimeOperatorFunction& f, int rungs = 4, double avg_tol = 1e-6);

/// Grid derivative: centered differences at steps h and 2h combined by
/// Richardson to fourth order; GridTooCoarse when the two raw estimates
/// disagree by more than rel_tol relative to the derivative scale.
TimeOperatorFunction derivative(const TimeOperatorFunction& f, double rel_tol = 1e-6);

}  // namespace evokit
