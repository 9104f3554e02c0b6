#pragma once

#include <optional>

#include "evokit/series.hpp"
#include "evokit/spectral.hpp"

namespace evokit {

/// Time-independent perturbed Hamiltonian H0 + sum_n lambda^n H_n.
struct StaticProblem {
  StaticProblem(HermitianOperator h0_in, std::vector<HermitianOperator> perturbation_in,
                double group_tol = kDefaultGroupTol);

  HermitianOperator h0;
  std::vector<HermitianOperator> perturbation;  // H_1..H_N
  SpectralDecomposition s0;
};

/// Choice of the block-diagonal freedom diag_part(Z_n) at each order; the
/// minimal gauge sets every block to zero.
struct GaugeSpec {
  static GaugeSpec minimal() { return GaugeSpec{}; }
  static GaugeSpec custom(std::vector<Mat> blocks);

  bool is_minimal() const { return blocks.empty(); }
  std::vector<Mat> blocks;  // diag_part(Z_n) per order, empty = minimal
};

struct StaticSolution {
  MatrixSeries c;  // C_1..C_N, each commuting with H0
  MatrixSeries z;  // Z_1..Z_N
  HermitianOperator h0;
  SpectralDecomposition s0;
  bool minimal_gauge = true;

  struct Diagnostics {
    std::vector<double> commutant_residual;  // ||[C_n, H0]||_F
    std::vector<double> gauge_residual;      // ||diag_part(Z_n) - chosen block||_F
    std::vector<double> hermiticity_defect;  // of the raw recursion output
  } diagnostics;
};

/// Solve the order-by-order recursion C_n = diag_part(G_n),
/// Z_n = gauge block + energy_green_part(G_n), with G_n assembled from the
/// lower orders.
StaticSolution solve_static(const StaticProblem& p, const GaugeSpec& gauge = GaugeSpec::minimal(),
                            std::optional<int> order = std::nullopt);

/// U(lambda; t) = e^{-i Z(lambda)} e^{-i (H0 + C(lambda)) t} e^{i Z(lambda)},
/// unitary at every truncation order.
UnitaryOperator assemble_static_evolutor(const StaticSolution& sol, double lambda, double t);

/// Eigenvalues of E_m + reduced-rank C(lambda) on each group, ordered as the
/// groups of the decomposition.
std::vector<std::vector<double>> effective_eigenvalues(const StaticSolution& sol, double lambda);

}  // namespace evokit
