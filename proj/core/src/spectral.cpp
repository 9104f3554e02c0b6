#include "evokit/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace evokit {

namespace {

// Distinct-gap floor below which energy denominators are refused outright.
constexpr double kGapFloorFactor = 1e-8;

double eigenvalue_scale(const std::vector<double>& ev) {
  double s = 0.0;
  for (double e : ev) s = std::max(s, std::abs(e));
  return std::max(1.0, s);
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(std::vector<SpectralGroup> groups, double gap_min,
                                             double h_norm)
    : groups_(std::move(groups)), gap_min_(gap_min), h_norm_(h_norm) {
  if (groups_.empty()) throw DimensionMismatch("SpectralDecomposition: no groups");
}

SpectralDecomposition spectral_decompose(const HermitianOperator& h, double group_tol) {
  if (group_tol <= 0.0) throw DegenerateGapError("spectral_decompose: group_tol must be positive");
  const Mat& m = h.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) {
    throw Error("spectral_decompose: eigensolver failed");
  }
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.norm());
  const double merge = group_tol * scale;

  // Single-linkage clustering of the sorted eigenvalues.
  std::vector<SpectralGroup> groups;
  Eigen::Index begin = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k == n || es.eigenvalues()(k) - es.eigenvalues()(k - 1) > merge) {
      SpectralGroup g;
      g.multiplicity = static_cast<int>(k - begin);
      g.eigenvalue = es.eigenvalues().segment(begin, k - begin).mean();
      g.basis = es.eigenvectors().middleCols(begin, k - begin);
      g.projector = g.basis * g.basis.adjoint();
      groups.push_back(std::move(g));
      begin = k;
    }
  }

  double gap_min = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g < groups.size(); ++g) {
    gap_min = std::min(gap_min, groups[g].eigenvalue - groups[g - 1].eigenvalue);
  }
  if (groups.size() > 1 && gap_min < 10.0 * merge) {
    throw DegenerateGapError("spectral_decompose: distinct-group gap " + std::to_string(gap_min) +
                             " is ambiguous at group_tol " + std::to_string(group_tol));
  }
  return SpectralDecomposition(std::move(groups), gap_min, m.norm());
}

Mat diag_part(const Mat& x, const SpectralDecomposition& s) {
  require_square(x, "diag_part");
  if (x.rows() != s.dim()) throw DimensionMismatch("diag_part: dimension differs from decomposition");
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& g : s.groups()) out += g.projector * x * g.projector;
  return out;
}

Mat offdiag_part(const Mat& x, const SpectralDecomposition& s) { return x - diag_part(x, s); }

Mat energy_green_part(const Mat& x, const SpectralDecomposition& s) {
  std::vector<double> ev;
  ev.reserve(s.group_count());
  for (const auto& g : s.groups()) ev.push_back(g.eigenvalue);
  return energy_green_part(x, s, ev);
}

Mat energy_green_part(const Mat& x, const SpectralDecomposition& s,
                      const std::vector<double>& eigenvalues) {
  require_square(x, "energy_green_part");
  if (x.rows() != s.dim()) {
    throw DimensionMismatch("energy_green_part: dimension differs from decomposition");
  }
  if (eigenvalues.size() != s.group_count()) {
    throw DimensionMismatch("energy_green_part: one eigenvalue per group required");
  }
  if (s.group_count() < 2) {
    throw SingleGroupError("energy_green_part: denominators undefined for a single group");
  }
  const double floor = kGapFloorFactor * eigenvalue_scale(eigenvalues);
  const std::size_t ng = s.group_count();
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (std::size_t j = 0; j < ng; ++j) {
    for (std::size_t l = 0; l < ng; ++l) {
      if (j == l) continue;
      const double gap = eigenvalues[l] - eigenvalues[j];
      if (std::abs(gap) < floor) {
        throw DegenerateGapError("energy_green_part: gap " + std::to_string(gap) +
                                 " below the distinct-gap floor");
      }
      out += (kImag / gap) * (s.groups()[j].projector * x * s.groups()[l].projector);
    }
  }
  return out;
}

Mat contour_projector(const HermitianOperator& h_lambda, std::size_t m,
                      const SpectralDecomposition& s0, double radius, int nodes, double proj_tol) {
  if (m >= s0.group_count()) throw DimensionMismatch("contour_projector: group index out of range");
  if (h_lambda.dim() != s0.dim()) {
    throw DimensionMismatch("contour_projector: dimension differs from decomposition");
  }
  if (radius <= 0.0 || nodes < 4) {
    throw ContourFailure("contour_projector: need positive radius and at least 4 nodes");
  }
  const Mat& h = h_lambda.matrix();
  const Eigen::Index n = h.rows();
  const double center = s0.groups()[m].eigenvalue;

  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Mat ident = Mat::Identity(n, n);
  Mat p = Mat::Zero(n, n);
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / nodes;
    const Cx z = Cx(center, 0.0) + radius * std::exp(Cx(0.0, theta));
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(z - Cx(es.eigenvalues()(k), 0.0)) < 1e-8) {
        throw ContourFailure("contour_projector: quadrature node within 1e-8 of an eigenvalue");
      }
    }
    // dz = i r e^{i theta} dtheta; the 1/(2 pi i) and the i cancel.
    p += (radius * std::exp(Cx(0.0, theta)) / static_cast<double>(nodes)) *
         (z * ident - h).partialPivLu().solve(ident);
  }
  const double defect = (p * p - p).norm();
  if (defect > proj_tol) {
    throw ContourFailure("contour_projector: ||P^2 - P|| = " + std::to_string(defect) +
                         " exceeds tolerance; contour may not separate the cluster");
  }
  return p;
}

}  // namespace evokit
