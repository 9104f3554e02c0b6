#include "evokit/static_solver.hpp"

#include <string>

namespace evokit {

namespace {
// The recursion preserves Hermiticity exactly; symmetrizing each computed
// order keeps round-off from drifting into later orders.
constexpr double kInternalHermTol = 1e-9;
}  // namespace

StaticProblem::StaticProblem(HermitianOperator h0_in, std::vector<HermitianOperator> perturbation_in,
                             double group_tol)
    : h0(std::move(h0_in)),
      perturbation(std::move(perturbation_in)),
      s0(spectral_decompose(h0, group_tol)) {
  if (perturbation.empty()) {
    throw DimensionMismatch("StaticProblem: need at least one perturbation order");
  }
  for (const auto& hn : perturbation) {
    if (hn.dim() != h0.dim()) {
      throw DimensionMismatch("StaticProblem: perturbation dimension differs from H0");
    }
  }
}

GaugeSpec GaugeSpec::custom(std::vector<Mat> blocks) {
  if (blocks.empty()) throw DimensionMismatch("GaugeSpec: custom gauge needs at least one block");
  GaugeSpec g;
  g.blocks = std::move(blocks);
  return g;
}

StaticSolution solve_static(const StaticProblem& p, const GaugeSpec& gauge,
                            std::optional<int> order) {
  const int n_max = order.value_or(static_cast<int>(p.perturbation.size()));
  if (n_max < 1 || n_max > kDefaultMaxOrder + 2) {
    throw OrderOverflow("solve_static: order " + std::to_string(n_max) + " out of range");
  }
  const Eigen::Index d = p.h0.dim();
  const Mat zero = Mat::Zero(d, d);
  auto h_at = [&](int m) -> Mat {
    if (m == 0) return p.h0.matrix();
    if (m <= static_cast<int>(p.perturbation.size())) {
      return p.perturbation[static_cast<std::size_t>(m - 1)].matrix();
    }
    return zero;
  };
  auto gauge_block = [&](int n) -> Mat {
    if (gauge.is_minimal() || n > static_cast<int>(gauge.blocks.size())) return zero;
    const Mat& blk = gauge.blocks[static_cast<std::size_t>(n - 1)];
    require_same_shape(blk, zero, "solve_static gauge");
    if ((diag_part(blk, p.s0) - blk).norm() > 1e-10 * std::max(1.0, blk.norm())) {
      throw DegenerateGapError("solve_static: custom gauge block must commute with H0");
    }
    return hermitian_part(blk);
  };

  StaticSolution sol{MatrixSeries{}, MatrixSeries{}, p.h0, p.s0, gauge.is_minimal(), {}};
  std::vector<Mat> z_list;

  for (int n = 1; n <= n_max; ++n) {
    Mat g_n;
    if (n == 1) {
      g_n = h_at(1);
    } else {
      std::vector<Mat> h_list;
      h_list.reserve(static_cast<std::size_t>(n) + 1);
      for (int m = 0; m <= n; ++m) h_list.push_back(h_at(m));
      g_n = big_G(h_list, z_list);
    }
    sol.diagnostics.hermiticity_defect.push_back(hermiticity_defect(g_n));
    if (hermiticity_defect(g_n) > kInternalHermTol * std::max(1.0, g_n.norm())) {
      throw HermiticityError("solve_static: recursion output lost Hermiticity at order " +
                             std::to_string(n));
    }
    g_n = hermitian_part(g_n);

    Mat c_n = diag_part(g_n, p.s0);
    Mat z_n = gauge_block(n);
    if (p.s0.group_count() >= 2) {
      z_n += energy_green_part(g_n, p.s0);
    }

    sol.diagnostics.commutant_residual.push_back(
        commutator(c_n, p.h0.matrix()).norm());
    sol.diagnostics.gauge_residual.push_back((diag_part(z_n, p.s0) - gauge_block(n)).norm());

    sol.c.append(std::move(c_n));
    z_list.push_back(hermitian_part(z_n));
    sol.z.append(z_list.back());
  }
  return sol;
}

UnitaryOperator assemble_static_evolutor(const StaticSolution& sol, double lambda, double t) {
  const Mat z = eval_series(sol.z, lambda);
  const Mat c = eval_series(sol.c, lambda);
  const Mat left = unitary_exp(z, 1.0).matrix();
  const Mat mid = unitary_exp(sol.h0.matrix() + c, t).matrix();
  return UnitaryOperator(left * mid * left.adjoint());
}

std::vector<std::vector<double>> effective_eigenvalues(const StaticSolution& sol, double lambda) {
  const Mat c = eval_series(sol.c, lambda);
  std::vector<std::vector<double>> out;
  out.reserve(sol.s0.group_count());
  for (const auto& g : sol.s0.groups()) {
    const Mat block =
        g.basis.adjoint() * (sol.h0.matrix() + c) * g.basis;  // multiplicity x multiplicity
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(block));
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + g.multiplicity);
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace evokit
