#include "evokit/adiabatic_solver.hpp"

#include <string>

namespace evokit {

AdiabaticProblem::AdiabaticProblem(SpectralDecomposition s0_in, std::vector<Waveform> energies_in,
                                   FunctionSeries perturbation_in, double gap_floor_in,
                                   double deriv_tol_in)
    : s0(std::move(s0_in)),
      energies(std::move(energies_in)),
      perturbation(std::move(perturbation_in)),
      gap_floor(gap_floor_in),
      deriv_tol(deriv_tol_in) {
  if (energies.size() != s0.group_count()) {
    throw DimensionMismatch("AdiabaticProblem: one energy waveform per spectral group required");
  }
  require_shared_grid(perturbation, "AdiabaticProblem");
  if (perturbation.at(1).dim() != s0.dim()) {
    throw DimensionMismatch("AdiabaticProblem: perturbation dimension differs from projectors");
  }
  // No level crossings: instantaneous eigenvalues stay distinct on the grid,
  // and no pair may swap order between neighbouring samples.
  const int m = sample_count();
  std::vector<double> prev;
  for (int i = 0; i < m; ++i) {
    const std::vector<double> ev = eigenvalues_at(perturbation.at(1).grid_time(i));
    double scale = 1.0;
    for (double e : ev) scale = std::max(scale, std::abs(e));
    for (std::size_t j = 0; j < ev.size(); ++j) {
      for (std::size_t l = j + 1; l < ev.size(); ++l) {
        const double gap = ev[j] - ev[l];
        if (std::abs(gap) < gap_floor * scale ||
            (i > 0 && gap * (prev[j] - prev[l]) < 0.0)) {
          throw DegenerateGapError("AdiabaticProblem: level crossing near t = " +
                                   std::to_string(perturbation.at(1).grid_time(i)));
        }
      }
    }
    prev = ev;
  }
}

std::vector<double> AdiabaticProblem::eigenvalues_at(double t) const {
  std::vector<double> ev;
  ev.reserve(energies.size());
  for (const auto& w : energies) ev.push_back(w(t));
  return ev;
}

Mat AdiabaticProblem::h0_at(double t) const {
  Mat h = Mat::Zero(s0.dim(), s0.dim());
  const std::vector<double> ev = eigenvalues_at(t);
  for (std::size_t m = 0; m < ev.size(); ++m) h += ev[m] * s0.groups()[m].projector;
  return h;
}

AdiabaticGauge AdiabaticGauge::custom(FunctionSeries blocks) {
  if (blocks.empty()) throw DimensionMismatch("AdiabaticGauge: custom gauge needs blocks");
  AdiabaticGauge g;
  g.blocks = std::move(blocks);
  return g;
}

AdiabaticSolution solve_adiabatic(const AdiabaticProblem& p, const AdiabaticGauge& gauge) {
  const int n_max = p.perturbation.order();
  const int grid = p.sample_count();
  const double t_max = p.t_max();
  const Eigen::Index d = p.s0.dim();
  const Mat zero = Mat::Zero(d, d);

  // Gauge blocks and their time derivatives per order (empty = minimal).
  std::vector<TimeOperatorFunction> block, block_dot;
  if (!gauge.is_minimal()) {
    require_shared_grid(gauge.blocks, "solve_adiabatic gauge");
    require_same_grid(gauge.blocks.at(1), p.perturbation.at(1), "solve_adiabatic gauge");
    for (int n = 1; n <= gauge.blocks.order(); ++n) {
      block.push_back(gauge.blocks.at(n));
      block_dot.push_back(derivative(gauge.blocks.at(n), p.deriv_tol));
    }
  }
  auto block_at = [&](int n, int i) -> Mat {
    if (n <= static_cast<int>(block.size())) return block[static_cast<std::size_t>(n - 1)].sample(i);
    return zero;
  };
  auto block_dot_at = [&](int n, int i) -> Mat {
    if (n <= static_cast<int>(block_dot.size())) {
      return block_dot[static_cast<std::size_t>(n - 1)].sample(i);
    }
    return zero;
  };

  // Instantaneous spectra, reused by every order.
  std::vector<std::vector<double>> evs(static_cast<std::size_t>(grid));
  std::vector<Mat> h0(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double t = p.perturbation.at(1).grid_time(i);
    evs[static_cast<std::size_t>(i)] = p.eigenvalues_at(t);
    h0[static_cast<std::size_t>(i)] = p.h0_at(t);
  }
  auto pert_at = [&](int m, int i) -> Mat {
    if (m <= n_max) return p.perturbation.at(m).sample(i);
    return zero;
  };

  AdiabaticSolution sol{{}, {}, {}, {}, p.s0, p.energies, {}, {}, gauge.is_minimal()};
  std::vector<std::vector<Mat>> z_samples;     // z_samples[n-1][i]
  std::vector<std::vector<Mat>> zdot_samples;  // same layout

  for (int n = 1; n <= n_max; ++n) {
    std::vector<Mat> g_n(static_cast<std::size_t>(grid));
    std::vector<Mat> r_n(static_cast<std::size_t>(grid), zero);
    std::vector<Mat> frak_n(static_cast<std::size_t>(grid));
    std::vector<Mat> z_n(static_cast<std::size_t>(grid));

    std::vector<Mat> z_list(static_cast<std::size_t>(n - 1)),
        zdot_list(static_cast<std::size_t>(n - 1)), h_list(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < grid; ++i) {
      if (n == 1) {
        g_n[static_cast<std::size_t>(i)] = pert_at(1, i);
      } else {
        h_list[0] = h0[static_cast<std::size_t>(i)];
        for (int m = 1; m <= n; ++m) h_list[static_cast<std::size_t>(m)] = pert_at(m, i);
        for (int k = 1; k <= n - 1; ++k) {
          z_list[static_cast<std::size_t>(k - 1)] = z_samples[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
          zdot_list[static_cast<std::size_t>(k - 1)] = zdot_samples[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
        }
        g_n[static_cast<std::size_t>(i)] = big_G(h_list, z_list);
        r_n[static_cast<std::size_t>(i)] = big_R(+1, zdot_list, z_list);
      }
      const Mat& g = g_n[static_cast<std::size_t>(i)];
      frak_n[static_cast<std::size_t>(i)] = hermitian_part(
          diag_part(g - r_n[static_cast<std::size_t>(i)], p.s0) - block_dot_at(n, i));
      Mat z = block_at(n, i);
      if (p.s0.group_count() >= 2) {
        z += energy_green_part(g, p.s0, evs[static_cast<std::size_t>(i)]);
      }
      z_n[static_cast<std::size_t>(i)] = hermitian_part(z);
    }

    sol.frak_c.append(TimeOperatorFunction::from_samples(frak_n, t_max));
    TimeOperatorFunction z_fun = TimeOperatorFunction::from_samples(z_n, t_max);
    TimeOperatorFunction z_dot = derivative(z_fun, p.deriv_tol);
    sol.z.append(z_fun);
    sol.z_dot.append(z_dot);
    z_samples.push_back(std::move(z_n));
    zdot_samples.push_back(z_dot.samples());

    // Applicability residual: the dropped off-diagonal derivative transport.
    std::vector<double> trace(static_cast<std::size_t>(grid), 0.0);
    double res = 0.0;
    for (int i = 0; i < grid; ++i) {
      Mat dropped = zdot_samples.back()[static_cast<std::size_t>(i)];
      if (n >= 2) {
        std::vector<Mat> zl(static_cast<std::size_t>(n - 1)), dl(static_cast<std::size_t>(n - 1));
        for (int k = 1; k <= n - 1; ++k) {
          zl[static_cast<std::size_t>(k - 1)] = z_samples[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
          dl[static_cast<std::size_t>(k - 1)] = zdot_samples[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
        }
        dropped += big_R(+1, dl, zl);
      }
      trace[static_cast<std::size_t>(i)] = spectral_norm(offdiag_part(dropped, p.s0));
      res = std::max(res, trace[static_cast<std::size_t>(i)]);
    }
    sol.residual_trace.push_back(std::move(trace));
    sol.residuals.push_back(res);
  }

  sol.c = c_from_frakc(sol.frak_c);
  return sol;
}

std::vector<double> adiabatic_residual(const AdiabaticSolution& sol) { return sol.residuals; }

UnitaryOperator assemble_adiabatic_evolutor(const AdiabaticSolution& sol, double lambda, double t) {
  const Eigen::Index d = sol.s0.dim();
  auto z_at = [&](double time) {
    Mat acc = Mat::Zero(d, d);
    double pw = 1.0;
    for (int n = 1; n <= sol.z.order(); ++n) {
      pw *= lambda;
      acc += pw * sol.z.at(n)(time);
    }
    return acc;
  };

  Mat middle = Mat::Zero(d, d);
  for (std::size_t m = 0; m < sol.s0.group_count(); ++m) {
    const auto& grp = sol.s0.groups()[m];
    Mat phase = sol.energies[m].integral(0.0, t) *
                Mat::Identity(grp.multiplicity, grp.multiplicity);
    double pw = 1.0;
    for (int n = 1; n <= sol.c.order(); ++n) {
      pw *= lambda;
      // Reduced-rank block of C_n integrated over [0, t].
      std::vector<Mat> projected;
      projected.reserve(static_cast<std::size_t>(sol.c.at(n).sample_count()));
      for (int i = 0; i < sol.c.at(n).sample_count(); ++i) {
        projected.push_back(grp.basis.adjoint() * sol.c.at(n).sample(i) * grp.basis);
      }
      TimeOperatorFunction pc =
          TimeOperatorFunction::from_samples(std::move(projected), sol.c.at(n).t_max());
      phase += pw * cumulative(pc)(t);
    }
    middle += grp.basis * unitary_exp(hermitian_part(phase)).matrix() * grp.basis.adjoint();
  }

  const Mat left = unitary_exp(z_at(t)).matrix();
  const Mat right = unitary_exp(z_at(0.0)).matrix().adjoint();
  return UnitaryOperator(left * middle * right);
}

}  // namespace evokit
