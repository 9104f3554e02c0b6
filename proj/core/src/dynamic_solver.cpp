#include "evokit/dynamic_solver.hpp"

#include <cmath>
#include <string>

namespace evokit {

namespace {

constexpr double kPeriodCheckTol = 1e-10;

TimeOperatorFunction constant_function(const Mat& value, const TimeOperatorFunction& like) {
  std::vector<Mat> samples(static_cast<std::size_t>(like.sample_count()), value);
  return TimeOperatorFunction::from_samples(std::move(samples), like.t_max(), like.period());
}

}  // namespace

DynamicProblem::DynamicProblem(Unperturbed unperturbed_in, FunctionSeries perturbation_in,
                               std::optional<double> period_in, double group_tol)
    : unperturbed(std::move(unperturbed_in)),
      perturbation(std::move(perturbation_in)),
      period(period_in) {
  require_shared_grid(perturbation, "DynamicProblem");
  if (const auto* h0 = std::get_if<HermitianOperator>(&unperturbed)) {
    if (h0->dim() != dim()) throw DimensionMismatch("DynamicProblem: H0 dimension mismatch");
    h0_spec_ = spectral_decompose(*h0, group_tol);
  } else if (const auto* fam = std::get_if<CommutingFamily>(&unperturbed)) {
    if (fam->s0.dim() != dim()) {
      throw DimensionMismatch("DynamicProblem: projector family dimension mismatch");
    }
    if (fam->energies.size() != fam->s0.group_count()) {
      throw DimensionMismatch("DynamicProblem: one energy waveform per group required");
    }
  }
  if (period) {
    if (*period <= 0.0) throw PeriodMismatch("DynamicProblem: period must be positive");
    // Declared period must match the drive on the grid.
    for (int n = 1; n <= perturbation.order(); ++n) {
      const TimeOperatorFunction& f = perturbation.at(n);
      double scale = 1.0;
      for (int i = 0; i < f.sample_count(); ++i) scale = std::max(scale, f.sample(i).norm());
      for (int i = 0; i < f.sample_count(); ++i) {
        const double t = f.grid_time(i);
        if (t + *period > t_max() * (1.0 + 1e-12)) break;
        if ((f(t + *period) - f.sample(i)).norm() > kPeriodCheckTol * scale) {
          throw PeriodMismatch("DynamicProblem: order " + std::to_string(n) +
                               " drive is not periodic with the declared period");
        }
      }
    }
  }
}

std::function<Mat(double)> DynamicProblem::u0_evaluator() const {
  const Eigen::Index d = dim();
  if (std::holds_alternative<std::monostate>(unperturbed)) {
    return [d](double) { return Mat(Mat::Identity(d, d)); };
  }
  if (h0_spec_) {
    std::vector<std::pair<double, Mat>> terms;
    for (const auto& g : h0_spec_->groups()) terms.emplace_back(g.eigenvalue, g.projector);
    return [d, terms](double t) {
      Mat u = Mat::Zero(d, d);
      for (const auto& [e, proj] : terms) u += std::exp(Cx(0.0, -e * t)) * proj;
      return u;
    };
  }
  const auto& fam = std::get<CommutingFamily>(unperturbed);
  std::vector<std::pair<Waveform, Mat>> terms;
  for (std::size_t m = 0; m < fam.s0.group_count(); ++m) {
    terms.emplace_back(fam.energies[m], fam.s0.groups()[m].projector);
  }
  return [d, terms](double t) {
    Mat u = Mat::Zero(d, d);
    for (const auto& [w, proj] : terms) u += std::exp(Cx(0.0, -w.integral(0.0, t))) * proj;
    return u;
  };
}

Mat DynamicProblem::u0(double t) const { return u0_evaluator()(t); }

FunctionSeries interaction_picture(const DynamicProblem& p) {
  FunctionSeries out;
  const std::function<Mat(double)> u0 = p.u0_evaluator();
  for (int n = 1; n <= p.perturbation.order(); ++n) {
    const TimeOperatorFunction f = p.perturbation.at(n);
    auto eval = [u0, f](double t) {
      const Mat frame = u0(t);
      return Mat(frame.adjoint() * f(t) * frame);
    };
    out.append(TimeOperatorFunction(eval, f.t_max(), f.sample_count(), f.period()));
  }
  return out;
}

namespace {

struct OrderWork {
  Mat c_const;                 // chosen constant (Floquet/Average)
  TimeOperatorFunction z_fun;  // Z_n(t)
  Mat z0;                      // Z_n
  double ladder_delta = 0.0;

  OrderWork(Mat c, TimeOperatorFunction z, Mat z_init, double delta)
      : c_const(std::move(c)), z_fun(std::move(z)), z0(std::move(z_init)), ladder_delta(delta) {}
};

// J_n(t) of the constant-fixing conditions: bigB_n(Htilde; frakc; Z)(t) + Htilde_n(t).
std::vector<Mat> assemble_j(const FunctionSeries& h_tilde, int n,
                            const std::vector<Mat>& c_consts,
                            const FunctionSeries* frak_c_funs,
                            const std::vector<TimeOperatorFunction>& z_funs) {
  const TimeOperatorFunction& head = h_tilde.at(1);
  const int grid = head.sample_count();
  std::vector<Mat> j(static_cast<std::size_t>(grid));
  if (n == 1) {
    for (int i = 0; i < grid; ++i) j[static_cast<std::size_t>(i)] = head.sample(i);
    return j;
  }
  std::vector<Mat> xs(static_cast<std::size_t>(n - 1)), cs(static_cast<std::size_t>(n - 1)),
      zs(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < grid; ++i) {
    for (int k = 1; k <= n - 1; ++k) {
      xs[static_cast<std::size_t>(k - 1)] = h_tilde.at(k).sample(i);
      cs[static_cast<std::size_t>(k - 1)] =
          frak_c_funs ? frak_c_funs->at(k).sample(i) : c_consts[static_cast<std::size_t>(k - 1)];
      zs[static_cast<std::size_t>(k - 1)] = z_funs[static_cast<std::size_t>(k - 1)].sample(i);
    }
    j[static_cast<std::size_t>(i)] =
        big_B_mixed(xs, cs, zs) + h_tilde.at(n).sample(i);
  }
  return j;
}

TimeOperatorFunction z_from_parts(const TimeOperatorFunction& s_n, const Mat& c_n, const Mat& z0) {
  std::vector<Mat> z(static_cast<std::size_t>(s_n.sample_count()));
  for (int i = 0; i < s_n.sample_count(); ++i) {
    z[static_cast<std::size_t>(i)] =
        hermitian_part(s_n.sample(i) - s_n.grid_time(i) * c_n + z0);
  }
  return TimeOperatorFunction::from_samples(std::move(z), s_n.t_max(), s_n.period());
}

void finalize_solution(DynamicSolution& sol, const QuadratureConfig& quad) {
  sol.c = c_from_frakc(sol.frak_c, quad);
  for (int n = 1; n <= sol.c.order(); ++n) sol.c_integral.append(cumulative(sol.c.at(n)));
  if (!sol.frak_c_const.empty()) {
    for (int n = 1; n <= sol.c.order(); ++n) {
      double defect = 0.0;
      for (int i = 0; i < sol.c.at(n).sample_count(); ++i) {
        defect = std::max(defect, (sol.c.at(n).sample(i) - sol.frak_c_const.at(n)).norm());
      }
      sol.diagnostics.constant_defect.push_back(defect);
    }
  }
}

}  // namespace

DynamicSolution solve_dynamic(const DynamicProblem& p, DynamicMode mode,
                              const DynamicSolveOptions& opts) {
  if (mode == DynamicMode::Custom) {
    throw ModeMismatch("solve_dynamic: custom mode goes through solve_dynamic_custom");
  }
  const int n_max = opts.order;
  if (n_max < 1 || n_max > kDefaultMaxOrder + 2) {
    throw OrderOverflow("solve_dynamic: order " + std::to_string(n_max) + " out of range");
  }
  if (n_max > p.perturbation.order()) {
    throw OrderOverflow("solve_dynamic: order exceeds the declared perturbation orders");
  }

  DynamicSolution sol;
  sol.mode = mode;
  sol.unperturbed = p.unperturbed;
  sol.h_tilde = interaction_picture(p);
  const TimeOperatorFunction& head = sol.h_tilde.at(1);

  if (mode == DynamicMode::Magnus) {
    const Mat zero = Mat::Zero(p.dim(), p.dim());
    for (int n = 1; n <= n_max; ++n) {
      sol.frak_c.append(sol.h_tilde.at(n));
      sol.z_fun.append(constant_function(zero, head));
      sol.z_init.append(zero);
    }
    finalize_solution(sol, opts.quad);
    return sol;
  }

  double tau = opts.tau;
  if (mode == DynamicMode::Floquet) {
    if (tau <= 0.0) {
      if (!p.period) {
        throw PeriodMismatch("solve_dynamic: Floquet mode needs tau or a declared period");
      }
      tau = *p.period;
    } else if (p.period) {
      const double ratio = tau / *p.period;
      if (std::abs(ratio - std::llround(ratio)) > 1e-9 || std::llround(ratio) < 1) {
        throw PeriodMismatch("solve_dynamic: tau must be a positive integer number of periods");
      }
    }
    if (tau > p.t_max() * (1.0 + 1e-12)) {
      throw QuadratureFailure("solve_dynamic: tau exceeds the time horizon");
    }
  }
  sol.tau = tau;

  std::vector<Mat> c_consts;
  std::vector<TimeOperatorFunction> z_funs;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Mat> j = assemble_j(sol.h_tilde, n, c_consts, nullptr, z_funs);
    TimeOperatorFunction j_fun =
        TimeOperatorFunction::from_samples(std::move(j), head.t_max(), head.period());
    TimeOperatorFunction s_fun = cumulative(j_fun);

    Mat c_n, z0_n;
    double delta = 0.0;
    if (mode == DynamicMode::Floquet) {
      c_n = hermitian_part(integrate(j_fun, 0.0, tau, opts.quad) / tau);
      z0_n = hermitian_part(-integrate(s_fun, 0.0, tau, opts.quad) / tau + 0.5 * tau * c_n);
    } else {
      // tau -> infinity: tapered doubling-window ladder, Richardson in 1/T.
      std::vector<Mat> c_ladder, z_ladder;
      std::vector<double> windows;
      for (int r = opts.ladder_rungs - 1; r >= 0; --r) {
        windows.push_back(p.t_max() / std::pow(2.0, r));
      }
      for (double w : windows) c_ladder.push_back(tapered_average(j_fun, w));
      std::vector<Mat> c_extrap;
      for (std::size_t k = 1; k < c_ladder.size(); ++k) {
        c_extrap.push_back(2.0 * c_ladder[k] - c_ladder[k - 1]);
      }
      c_n = hermitian_part(c_extrap.back());
      const double c_delta = (c_extrap.back() - c_extrap[c_extrap.size() - 2]).norm();

      for (double w : windows) {
        z_ladder.push_back(-tapered_average(s_fun, w) + 0.5 * w * c_n);
      }
      std::vector<Mat> z_extrap;
      for (std::size_t k = 1; k < z_ladder.size(); ++k) {
        z_extrap.push_back(2.0 * z_ladder[k] - z_ladder[k - 1]);
      }
      z0_n = hermitian_part(z_extrap.back());
      const double z_delta = (z_extrap.back() - z_extrap[z_extrap.size() - 2]).norm();

      delta = std::max(c_delta / std::max(1.0, c_n.norm()),
                       z_delta / std::max(1.0, z0_n.norm()));
      if (delta > opts.quad.avg_tol) {
        throw AverageNonConvergent("solve_dynamic: infinite averaging ladder changed by " +
                                   std::to_string(delta) + " at order " + std::to_string(n));
      }
    }

    TimeOperatorFunction z_n = z_from_parts(s_fun, c_n, z0_n);
    sol.frak_c.append(constant_function(c_n, head));
    sol.frak_c_const.append(c_n);
    sol.z_fun.append(z_n);
    sol.z_init.append(z0_n);
    sol.diagnostics.ladder_delta.push_back(delta);
    c_consts.push_back(c_n);
    z_funs.push_back(sol.z_fun.at(n));
  }
  finalize_solution(sol, opts.quad);
  return sol;
}

DynamicSolution solve_dynamic_custom(const DynamicProblem& p, const FunctionSeries& frak_c,
                                     const MatrixSeries& z_init, const DynamicSolveOptions& opts) {
  const int n_max = opts.order;
  if (n_max < 1 || n_max > frak_c.order() || n_max > z_init.order() ||
      n_max > p.perturbation.order()) {
    throw OrderOverflow("solve_dynamic_custom: order exceeds the supplied series");
  }
  DynamicSolution sol;
  sol.mode = DynamicMode::Custom;
  sol.unperturbed = p.unperturbed;
  sol.h_tilde = interaction_picture(p);
  const TimeOperatorFunction& head = sol.h_tilde.at(1);

  std::vector<TimeOperatorFunction> z_funs;
  for (int n = 1; n <= n_max; ++n) {
    require_same_grid(frak_c.at(n), head, "solve_dynamic_custom");
    std::vector<Mat> j = assemble_j(sol.h_tilde, n, {}, &frak_c, z_funs);
    std::vector<Mat> integrand(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      integrand[i] = j[i] - frak_c.at(n).sample(static_cast<int>(i));
    }
    TimeOperatorFunction rhs = TimeOperatorFunction::from_samples(std::move(integrand),
                                                                  head.t_max(), head.period());
    TimeOperatorFunction accumulated = cumulative(rhs);
    std::vector<Mat> z(static_cast<std::size_t>(accumulated.sample_count()));
    for (int i = 0; i < accumulated.sample_count(); ++i) {
      z[static_cast<std::size_t>(i)] = hermitian_part(accumulated.sample(i) + z_init.at(n));
    }
    sol.frak_c.append(frak_c.at(n));
    sol.z_fun.append(
        TimeOperatorFunction::from_samples(std::move(z), head.t_max(), head.period()));
    sol.z_init.append(z_init.at(n));
    z_funs.push_back(sol.z_fun.at(n));
  }
  finalize_solution(sol, opts.quad);
  return sol;
}

HermitianOperator effective_hamiltonian(const DynamicSolution& sol, double lambda) {
  if (sol.frak_c_const.empty()) {
    throw ModeMismatch("effective_hamiltonian: defined for the constant-C modes only");
  }
  const Mat z = eval_series(sol.z_init, lambda);
  const Mat c = eval_series(sol.frak_c_const, lambda);
  const Mat w = unitary_exp(z, 1.0).matrix();  // e^{-i Z(lambda)}
  return HermitianOperator(w * c * w.adjoint(), 1e-10);
}

UnitaryOperator assemble_general_evolutor(const DynamicSolution& sol, double lambda, double t) {
  const Eigen::Index d = sol.h_tilde.at(1).dim();
  Mat z_t = Mat::Zero(d, d);
  Mat ic_t = Mat::Zero(d, d);
  double pw = 1.0;
  for (int n = 1; n <= sol.z_fun.order(); ++n) {
    pw *= lambda;
    z_t += pw * sol.z_fun.at(n)(t);
    ic_t += pw * sol.c_integral.at(n)(t);
  }
  const Mat z_0 = eval_series(sol.z_init, lambda);

  DynamicProblem::Unperturbed unp = sol.unperturbed;
  Mat u0;
  if (std::holds_alternative<std::monostate>(unp)) {
    u0 = Mat::Identity(d, d);
  } else if (const auto* h0 = std::get_if<HermitianOperator>(&unp)) {
    u0 = unitary_exp(h0->matrix(), t).matrix();
  } else {
    const auto& fam = std::get<CommutingFamily>(unp);
    u0 = Mat::Zero(d, d);
    for (std::size_t m = 0; m < fam.s0.group_count(); ++m) {
      u0 += std::exp(Cx(0.0, -fam.energies[m].integral(0.0, t))) * fam.s0.groups()[m].projector;
    }
  }

  const Mat u = u0 * unitary_exp(hermitian_part(z_t)).matrix() *
                unitary_exp(hermitian_part(ic_t)).matrix() *
                unitary_exp(hermitian_part(z_0)).matrix().adjoint();
  return UnitaryOperator(u);
}

}  // namespace evokit
