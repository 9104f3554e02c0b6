#pragma once

#include <optional>
#include <variant>

#include "evokit/series.hpp"
#include "evokit/spectral.hpp"

namespace evokit {

/// Time-dependent unperturbed Hamiltonian commuting with itself at all times:
/// fixed projectors, time-dependent group eigenvalues. Its propagator is the
/// closed form sum_m e^{-i int E_m} P_m.
struct CommutingFamily {
  SpectralDecomposition s0;
  std::vector<Waveform> energies;  // one per group
};

/// General perturbed problem. The unperturbed part is either absent (H0 = 0),
/// a constant Hermitian operator, or a commuting family; anything else has no
/// closed-form propagator and is rejected by construction.
struct DynamicProblem {
  using Unperturbed = std::variant<std::monostate, HermitianOperator, CommutingFamily>;

  DynamicProblem(Unperturbed unperturbed_in, FunctionSeries perturbation_in,
                 std::optional<double> period_in = std::nullopt,
                 double group_tol = kDefaultGroupTol);

  Unperturbed unperturbed;
  FunctionSeries perturbation;  // lab-frame H_1(t)..H_N(t)
  std::optional<double> period;

  double t_max() const { return perturbation.at(1).t_max(); }
  int sample_count() const { return perturbation.at(1).sample_count(); }
  Eigen::Index dim() const { return perturbation.at(1).dim(); }

  /// Unperturbed propagator U0(t, 0).
  Mat u0(double t) const;

  /// Same propagator as a self-contained closure (owns copies of everything
  /// it needs, so it may outlive the problem).
  std::function<Mat(double)> u0_evaluator() const;

private:
  std::optional<SpectralDecomposition> h0_spec_;  // cached for the constant case
};

enum class DynamicMode { Magnus, Floquet, Average, Custom };

struct DynamicSolveOptions {
  int order = 2;
  double tau = 0.0;  // Floquet averaging span; 0 means one declared period
  QuadratureConfig quad;
  int ladder_rungs = 4;  // doubling windows for the tau -> infinity limit
};

struct DynamicSolution {
  DynamicMode mode = DynamicMode::Magnus;
  double tau = 0.0;
  DynamicProblem::Unperturbed unperturbed;
  FunctionSeries h_tilde;     // interaction-picture perturbation
  FunctionSeries frak_c;      // frakc_n(t); constant-valued in Floquet/Average
  MatrixSeries frak_c_const;  // the constants, when the mode fixes them
  FunctionSeries c;           // recovered C_n(t)
  FunctionSeries c_integral;  // int_0^t C_n
  FunctionSeries z_fun;       // Z_n(t)
  MatrixSeries z_init;        // Z_n = Z_n(0)

  struct Diagnostics {
    std::vector<double> constant_defect;  // max_t ||C_n(t) - C_n|| for constant modes
    std::vector<double> ladder_delta;     // final ladder agreement per order (Average)
  } diagnostics;
};

/// Interaction-picture coefficients U0(t)^dagger H_n(t) U0(t).
FunctionSeries interaction_picture(const DynamicProblem& p);

/// Solve the coupled order-by-order system for the chosen class of solutions:
///   Magnus      Z = 0, frakc_n = interaction-picture H_n;
///   Floquet     constants fixed by the finite-span averaging conditions;
///   Average     the same with the span pushed to infinity on a doubling
///               window ladder with Richardson extrapolation;
///   Custom      via solve_dynamic_custom.
DynamicSolution solve_dynamic(const DynamicProblem& p, DynamicMode mode,
                              const DynamicSolveOptions& opts);

/// Caller-chosen frakc_n(t) and initial constants Z_n.
DynamicSolution solve_dynamic_custom(const DynamicProblem& p, const FunctionSeries& frak_c,
                                     const MatrixSeries& z_init, const DynamicSolveOptions& opts);

/// Stroboscopic effective Hamiltonian e^{-i Z(lambda)} C(lambda) e^{i Z(lambda)}
/// for the constant-C modes.
HermitianOperator effective_hamiltonian(const DynamicSolution& sol, double lambda);

/// U = U0(t) e^{-i Z(lambda;t)} e^{-i int_0^t C(lambda)} e^{i Z(lambda;0)}.
UnitaryOperator assemble_general_evolutor(const DynamicSolution& sol, double lambda, double t);

}  // namespace evokit
