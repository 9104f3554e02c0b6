#pragma once

#include <limits>
#include <vector>

#include "evokit/operators.hpp"

namespace evokit {

/// One (possibly degenerate) eigenvalue group of a Hermitian operator.
struct SpectralGroup {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  Mat basis;      // dim x multiplicity, orthonormal columns spanning the group
  Mat projector;  // basis * basis^dagger
};

/// Grouped eigenvalues and orthogonal eigenprojectors of a Hermitian operator.
class SpectralDecomposition {
public:
  SpectralDecomposition(std::vector<SpectralGroup> groups, double gap_min, double h_norm);

  const std::vector<SpectralGroup>& groups() const { return groups_; }
  std::size_t group_count() const { return groups_.size(); }
  double gap_min() const { return gap_min_; }
  double h_norm() const { return h_norm_; }
  Eigen::Index dim() const { return groups_.front().projector.rows(); }

private:
  std::vector<SpectralGroup> groups_;
  double gap_min_ = std::numeric_limits<double>::infinity();
  double h_norm_ = 0.0;  // Frobenius norm of the operator that was decomposed
};

inline constexpr double kDefaultGroupTol = 1e-10;

/// Eigendecomposition with single-linkage clustering of near-degenerate
/// eigenvalues; throws DegenerateGapError when the clustering is ambiguous
/// (distinct groups closer than 10 * group_tol * max(1, ||H||_F)).
SpectralDecomposition spectral_decompose(const HermitianOperator& h,
                                         double group_tol = kDefaultGroupTol);

/// Block-diagonal part with respect to the projector family: sum_m P_m X P_m.
Mat diag_part(const Mat& x, const SpectralDecomposition& s);

/// Block-off-diagonal complement X - diag_part(X).
Mat offdiag_part(const Mat& x, const SpectralDecomposition& s);

/// The energy-denominator map Y = i sum_{j != l} (E_l - E_j)^{-1} P_j X P_l,
/// the unique solution of [Y, H0] = i * offdiag_part(X) with diag_part(Y) = 0.
Mat energy_green_part(const Mat& x, const SpectralDecomposition& s);

/// Same map with the group eigenvalues overridden (instantaneous spectra with
/// frozen projectors); `eigenvalues` must have one entry per group.
Mat energy_green_part(const Mat& x, const SpectralDecomposition& s,
                      const std::vector<double>& eigenvalues);

inline constexpr int kDefaultContourNodes = 128;

/// Perturbed spectral projector (1/2*pi*i) * contour integral of the resolvent
/// of H(lambda) around group m of the unperturbed decomposition, approximated
/// by the trapezoid rule on the circle of the given radius.
Mat contour_projector(const HermitianOperator& h_lambda, std::size_t m,
                      const SpectralDecomposition& s0, double radius,
                      int nodes = kDefaultContourNodes, double proj_tol = 1e-8);

}  // namespace evokit
