#include "evokit/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace evokit {

using ojson = nlohmann::ordered_json;

namespace {

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(a + (b - a) * i / (count - 1));
  }
  return out;
}

void parallel_over(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(max_threads()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

MatrixSeries prefix(const MatrixSeries& s, int k) {
  MatrixSeries out;
  for (int n = 1; n <= k; ++n) out.append(s.at(n));
  return out;
}

FunctionSeries prefix(const FunctionSeries& s, int k) {
  FunctionSeries out;
  for (int n = 1; n <= k; ++n) out.append(s.at(n));
  return out;
}

StaticSolution truncate_static(const StaticSolution& s, int k) {
  StaticSolution out = s;
  out.c = prefix(s.c, k);
  out.z = prefix(s.z, k);
  return out;
}

DynamicSolution truncate_dynamic(const DynamicSolution& s, int k) {
  DynamicSolution out = s;
  out.frak_c = prefix(s.frak_c, k);
  if (!s.frak_c_const.empty()) out.frak_c_const = prefix(s.frak_c_const, k);
  out.c = prefix(s.c, k);
  out.c_integral = prefix(s.c_integral, k);
  out.z_fun = prefix(s.z_fun, k);
  out.z_init = prefix(s.z_init, k);
  return out;
}

AdiabaticSolution truncate_adiabatic(const AdiabaticSolution& s, int k) {
  AdiabaticSolution out = s;
  out.frak_c = prefix(s.frak_c, k);
  out.z = prefix(s.z, k);
  out.z_dot = prefix(s.z_dot, k);
  out.c = prefix(s.c, k);
  return out;
}

Mat sum_terms(const std::vector<MatrixTerm>& terms, int dim, double t) {
  Mat acc = Mat::Zero(dim, dim);
  for (const auto& term : terms) acc += term.waveform(t) * term.matrix;
  return acc;
}

DynamicMode dynamic_mode_of(RunMode m) {
  switch (m) {
    case RunMode::Magnus:
      return DynamicMode::Magnus;
    case RunMode::Floquet:
      return DynamicMode::Floquet;
    case RunMode::Average:
      return DynamicMode::Average;
    default:
      throw ModeMismatch("run: mode '" + mode_name(m) + "' is not a dynamic mode");
  }
}

constexpr int kResidualTracePoints = 65;
constexpr int kExpandSamplePoints = 5;

ojson complex_to_json(const Cx& z) { return ojson::array({z.real(), z.imag()}); }

ojson mat_to_json(const Mat& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const ojson& j) {
  const auto rows = j.size();
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(j.at(0).size()));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < j.at(r).size(); ++c) {
      const auto& e = j.at(r).at(c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Cx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

int max_threads() {
  if (const char* env = std::getenv("EVOKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

StaticProblem build_static_problem(const ProblemConfig& cfg) {
  std::vector<HermitianOperator> pert;
  for (std::size_t n = 0; n < cfg.perturbation.size(); ++n) {
    for (const auto& term : cfg.perturbation[n]) {
      if (term.waveform.kind() != Waveform::Kind::Constant) {
        throw SchemaError("perturbation[" + std::to_string(n) +
                          "]: static mode requires constant waveforms");
      }
    }
    pert.emplace_back(sum_terms(cfg.perturbation[n], cfg.dimension, 0.0), cfg.herm_tol);
  }
  return StaticProblem(HermitianOperator(cfg.h0, cfg.herm_tol), std::move(pert), cfg.group_tol);
}

AdiabaticProblem build_adiabatic_problem(const ProblemConfig& cfg) {
  SpectralDecomposition s0 = spectral_decompose(HermitianOperator(cfg.h0, cfg.herm_tol),
                                                cfg.group_tol);
  std::vector<Waveform> energies;
  if (cfg.h0_time_dependent) {
    if (cfg.h0_energies.size() != s0.group_count()) {
      throw SchemaError("h0.energies: expected one waveform per spectral group (" +
                        std::to_string(s0.group_count()) + ")");
    }
    energies = cfg.h0_energies;
  } else {
    for (const auto& g : s0.groups()) energies.push_back(Waveform::constant(g.eigenvalue));
  }
  FunctionSeries pert;
  for (std::size_t n = 0; n < cfg.perturbation.size(); ++n) {
    const auto& terms = cfg.perturbation[n];
    const int dim = cfg.dimension;
    pert.append(TimeOperatorFunction(
        [terms, dim](double t) { return sum_terms(terms, dim, t); }, cfg.t_max, cfg.samples));
  }
  return AdiabaticProblem(std::move(s0), std::move(energies), std::move(pert));
}

DynamicProblem build_dynamic_problem(const ProblemConfig& cfg) {
  DynamicProblem::Unperturbed unp = std::monostate{};
  if (cfg.h0_time_dependent) {
    SpectralDecomposition s0 = spectral_decompose(HermitianOperator(cfg.h0, cfg.herm_tol),
                                                  cfg.group_tol);
    if (cfg.h0_energies.size() != s0.group_count()) {
      throw SchemaError("h0.energies: expected one waveform per spectral group (" +
                        std::to_string(s0.group_count()) + ")");
    }
    unp = CommutingFamily{std::move(s0), cfg.h0_energies};
  } else if (cfg.h0.norm() > 0.0) {
    unp = HermitianOperator(cfg.h0, cfg.herm_tol);
  }
  FunctionSeries pert;
  for (std::size_t n = 0; n < cfg.perturbation.size(); ++n) {
    const auto& terms = cfg.perturbation[n];
    const int dim = cfg.dimension;
    pert.append(TimeOperatorFunction([terms, dim](double t) { return sum_terms(terms, dim, t); },
                                     cfg.t_max, cfg.samples, cfg.period));
  }
  return DynamicProblem(std::move(unp), std::move(pert), cfg.period, cfg.group_tol);
}

std::function<Mat(double, double)> lab_hamiltonian(const ProblemConfig& cfg) {
  const int dim = cfg.dimension;
  std::function<Mat(double)> h0;
  if (cfg.h0_time_dependent) {
    SpectralDecomposition s0 = spectral_decompose(HermitianOperator(cfg.h0, cfg.herm_tol),
                                                  cfg.group_tol);
    if (cfg.h0_energies.size() != s0.group_count()) {
      throw SchemaError("h0.energies: expected one waveform per spectral group");
    }
    auto energies = cfg.h0_energies;
    h0 = [s0, energies, dim](double t) {
      Mat acc = Mat::Zero(dim, dim);
      for (std::size_t m = 0; m < energies.size(); ++m) {
        acc += energies[m](t) * s0.groups()[m].projector;
      }
      return acc;
    };
  } else {
    const Mat h0_const = cfg.h0;
    h0 = [h0_const](double) { return h0_const; };
  }
  const auto pert = cfg.perturbation;
  return [h0, pert, dim](double lambda, double t) {
    Mat acc = h0(t);
    double pw = 1.0;
    for (const auto& terms : pert) {
      pw *= lambda;
      acc += pw * sum_terms(terms, dim, t);
    }
    return acc;
  };
}

namespace {

void run_expand(const ProblemConfig& cfg, RunReport& rep) {
  const std::vector<double> sample_times = linspace(0.0, cfg.t_max, kExpandSamplePoints);
  switch (cfg.mode) {
    case RunMode::Static: {
      StaticSolution sol = solve_static(build_static_problem(cfg), GaugeSpec::minimal(), cfg.order);
      for (int n = 1; n <= cfg.order; ++n) {
        rep.matrices.push_back({"C", n, std::nullopt, sol.c.at(n)});
        rep.matrices.push_back({"Z", n, std::nullopt, sol.z.at(n)});
        rep.scalars.push_back({"commutant_residual", n,
                               sol.diagnostics.commutant_residual[static_cast<std::size_t>(n - 1)]});
      }
      break;
    }
    case RunMode::Adiabatic: {
      AdiabaticSolution sol = solve_adiabatic(build_adiabatic_problem(cfg));
      for (int n = 1; n <= cfg.order; ++n) {
        for (double t : sample_times) {
          rep.matrices.push_back({"frakC", n, t, sol.frak_c.at(n)(t)});
          rep.matrices.push_back({"Z", n, t, sol.z.at(n)(t)});
        }
        rep.scalars.push_back({"adiabatic_residual", n, sol.residuals[static_cast<std::size_t>(n - 1)]});
      }
      break;
    }
    default: {
      DynamicSolveOptions opts{cfg.order, cfg.tau, cfg.quad, 4};
      DynamicSolution sol = solve_dynamic(build_dynamic_problem(cfg), dynamic_mode_of(cfg.mode), opts);
      for (int n = 1; n <= cfg.order; ++n) {
        if (!sol.frak_c_const.empty()) {
          rep.matrices.push_back({"C", n, std::nullopt, sol.frak_c_const.at(n)});
          rep.matrices.push_back({"Z0", n, std::nullopt, sol.z_init.at(n)});
          rep.scalars.push_back({"constant_defect", n,
                                 sol.diagnostics.constant_defect[static_cast<std::size_t>(n - 1)]});
        } else {
          rep.matrices.push_back({"Z0", n, std::nullopt, sol.z_init.at(n)});
          for (double t : sample_times) {
            rep.matrices.push_back({"C", n, t, sol.c.at(n)(t)});
          }
        }
      }
      break;
    }
  }
}

void record_evolutor(RunReport& rep, double lambda, double t, const UnitaryOperator& u) {
  const double defect = unitarity_defect(u.matrix());
  rep.evolutors.push_back({lambda, t, defect, u.matrix()});
  rep.unitarity_max = std::max(rep.unitarity_max, defect);
}

void run_evolve(const ProblemConfig& cfg, RunReport& rep) {
  const std::vector<double> ts = linspace(0.0, cfg.t_max, cfg.evolve_points);
  switch (cfg.mode) {
    case RunMode::Static: {
      StaticSolution sol = solve_static(build_static_problem(cfg), GaugeSpec::minimal(), cfg.order);
      for (double lambda : cfg.lambdas) {
        for (double t : ts) record_evolutor(rep, lambda, t, assemble_static_evolutor(sol, lambda, t));
      }
      break;
    }
    case RunMode::Adiabatic: {
      AdiabaticSolution sol = solve_adiabatic(build_adiabatic_problem(cfg));
      for (double lambda : cfg.lambdas) {
        for (double t : ts) record_evolutor(rep, lambda, t, assemble_adiabatic_evolutor(sol, lambda, t));
      }
      break;
    }
    default: {
      DynamicSolveOptions opts{cfg.order, cfg.tau, cfg.quad, 4};
      DynamicSolution sol = solve_dynamic(build_dynamic_problem(cfg), dynamic_mode_of(cfg.mode), opts);
      for (double lambda : cfg.lambdas) {
        for (double t : ts) record_evolutor(rep, lambda, t, assemble_general_evolutor(sol, lambda, t));
      }
      break;
    }
  }
}

void run_compare(const ProblemConfig& cfg, RunReport& rep) {
  std::vector<double> ts = linspace(0.0, cfg.t_max, cfg.evolve_points);
  ts.erase(ts.begin());  // t = 0 is exact by construction
  const auto lab = lab_hamiltonian(cfg);

  // The series coefficients do not depend on lambda: solve once, then sweep.
  std::function<UnitaryOperator(int, double, double)> truncated;  // (order, lambda, t)
  std::optional<StaticSolution> static_sol;
  std::optional<DynamicSolution> dyn_sol;
  std::optional<AdiabaticSolution> adia_sol;
  bool exact_by_expm = false;
  switch (cfg.mode) {
    case RunMode::Static: {
      static_sol = solve_static(build_static_problem(cfg), GaugeSpec::minimal(), cfg.order);
      exact_by_expm = true;
      truncated = [&static_sol](int k, double lambda, double t) {
        return assemble_static_evolutor(truncate_static(*static_sol, k), lambda, t);
      };
      break;
    }
    case RunMode::Adiabatic: {
      adia_sol = solve_adiabatic(build_adiabatic_problem(cfg));
      truncated = [&adia_sol](int k, double lambda, double t) {
        return assemble_adiabatic_evolutor(truncate_adiabatic(*adia_sol, k), lambda, t);
      };
      break;
    }
    default: {
      DynamicSolveOptions opts{cfg.order, cfg.tau, cfg.quad, 4};
      dyn_sol = solve_dynamic(build_dynamic_problem(cfg), dynamic_mode_of(cfg.mode), opts);
      truncated = [&dyn_sol](int k, double lambda, double t) {
        return assemble_general_evolutor(truncate_dynamic(*dyn_sol, k), lambda, t);
      };
      break;
    }
  }

  std::vector<std::vector<ErrorRow>> rows_per_lambda(cfg.lambdas.size());
  parallel_over(cfg.lambdas.size(), [&](std::size_t li) {
    const double lambda = cfg.lambdas[li];
    for (double t : ts) {
      Mat u_exact;
      if (exact_by_expm) {
        u_exact = unitary_exp(lab(lambda, 0.0), t).matrix();
      } else {
        u_exact = propagate_exact([&lab, lambda](double s) { return lab(lambda, s); }, 0.0, t,
                                  cfg.oracle_tol)
                      .u.matrix();
      }
      for (int k = 1; k <= cfg.order; ++k) {
        const UnitaryOperator u_k = truncated(k, lambda, t);
        rows_per_lambda[li].push_back({lambda, t, k, (u_exact - u_k.matrix()).norm()});
      }
    }
  });
  for (const auto& rows : rows_per_lambda) {
    for (const auto& r : rows) rep.errors.push_back(r);
  }

  if (cfg.lambdas.size() >= 3) {
    const double t_ref = ts.back();
    for (int k = 1; k <= cfg.order; ++k) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& r : rep.errors) {
        if (r.order == k && r.t == t_ref && r.frob_error > 0.0) pts.emplace_back(r.lambda, r.frob_error);
      }
      if (pts.size() < 3) continue;
      const ScalingVerdict v = order_scaling_check(pts, k);
      rep.verdicts.push_back({k, v.slope, v.pass});
    }
  }
}

void run_floquet(const ProblemConfig& cfg, RunReport& rep) {
  DynamicSolveOptions opts{cfg.order, cfg.tau, cfg.quad, 4};
  DynamicProblem problem = build_dynamic_problem(cfg);
  DynamicSolution sol = solve_dynamic(problem, DynamicMode::Floquet, opts);
  const double span = cfg.period ? *cfg.period : sol.tau;
  const auto lab = lab_hamiltonian(cfg);

  for (int n = 1; n <= cfg.order; ++n) {
    rep.matrices.push_back({"C", n, std::nullopt, sol.frak_c_const.at(n)});
    rep.matrices.push_back({"Z0", n, std::nullopt, sol.z_init.at(n)});
    // Zero average of Z_n over the span and periodicity on the grid.
    const TimeOperatorFunction& z = sol.z_fun.at(n);
    double z_scale = 1.0;
    for (int i = 0; i < z.sample_count(); ++i) z_scale = std::max(z_scale, z.sample(i).norm());
    rep.scalars.push_back(
        {"z_average_defect", n, integrate(z, 0.0, sol.tau, cfg.quad).norm() / (sol.tau * z_scale)});
    double periodicity = 0.0;
    for (int i = 0; i < z.sample_count(); ++i) {
      const double t = z.grid_time(i);
      if (t + span > cfg.t_max * (1.0 + 1e-12)) break;
      periodicity = std::max(periodicity, (z(t + span) - z.sample(i)).norm());
    }
    rep.scalars.push_back({"z_periodicity_defect", n, periodicity});
  }

  std::vector<int> multiples;
  for (int m : {1, 2, 4}) {
    if (m * span <= cfg.t_max * (1.0 + 1e-12)) multiples.push_back(m);
  }
  std::vector<std::vector<ErrorRow>> rows_per_lambda(cfg.lambdas.size());
  std::vector<Mat> h_eff(cfg.lambdas.size());
  parallel_over(cfg.lambdas.size(), [&](std::size_t li) {
    const double lambda = cfg.lambdas[li];
    const HermitianOperator h = effective_hamiltonian(sol, lambda);
    h_eff[li] = h.matrix();
    for (int m : multiples) {
      const double t = m * span;
      const Mat u = propagate_exact([&lab, lambda](double s) { return lab(lambda, s); }, 0.0, t,
                                    cfg.oracle_tol)
                        .u.matrix();
      const Mat t_oracle = problem.u0(t).adjoint() * u;
      const Mat strobo = unitary_exp(h.matrix(), t).matrix();
      rows_per_lambda[li].push_back({lambda, t, cfg.order, (t_oracle - strobo).norm()});
    }
  });
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    rep.effective_hamiltonians.push_back({cfg.lambdas[li], h_eff[li]});
    for (const auto& r : rows_per_lambda[li]) rep.errors.push_back(r);
  }
  if (cfg.lambdas.size() >= 3 && !multiples.empty()) {
    const double t_ref = multiples.back() * span;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.errors) {
      if (r.t == t_ref && r.frob_error > 0.0) pts.emplace_back(r.lambda, r.frob_error);
    }
    if (pts.size() >= 3) {
      const ScalingVerdict v = order_scaling_check(pts, cfg.order);
      rep.verdicts.push_back({cfg.order, v.slope, v.pass});
    }
  }
}

void run_adiabatic(const ProblemConfig& cfg, RunReport& rep) {
  AdiabaticProblem problem = build_adiabatic_problem(cfg);
  AdiabaticSolution sol = solve_adiabatic(problem);
  const auto lab = lab_hamiltonian(cfg);

  const int grid = problem.sample_count();
  const int stride = std::max(1, (grid - 1) / (kResidualTracePoints - 1));
  for (int n = 1; n <= cfg.order; ++n) {
    rep.scalars.push_back({"adiabatic_residual", n, sol.residuals[static_cast<std::size_t>(n - 1)]});
    for (int i = 0; i < grid; i += stride) {
      rep.residuals.push_back({problem.perturbation.at(1).grid_time(i), n,
                               sol.residual_trace[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)]});
    }
  }

  std::vector<ErrorRow> rows(cfg.lambdas.size());
  parallel_over(cfg.lambdas.size(), [&](std::size_t li) {
    const double lambda = cfg.lambdas[li];
    const Mat u = propagate_exact([&lab, lambda](double s) { return lab(lambda, s); }, 0.0,
                                  cfg.t_max, cfg.oracle_tol)
                      .u.matrix();
    const UnitaryOperator approx = assemble_adiabatic_evolutor(sol, lambda, cfg.t_max);
    rows[li] = {lambda, cfg.t_max, cfg.order, (u - approx.matrix()).norm()};
  });
  for (const auto& r : rows) rep.errors.push_back(r);
}

}  // namespace

RunReport run(const std::string& command, const ProblemConfig& cfg) {
  RunReport rep;
  rep.command = command;
  rep.schema_version = cfg.schema_version;
  rep.dimension = cfg.dimension;
  rep.order = cfg.order;
  rep.lambdas = cfg.lambdas;

  ProblemConfig effective = cfg;
  if (command == "floquet") effective.mode = RunMode::Floquet;
  if (command == "adiabatic") effective.mode = RunMode::Adiabatic;
  rep.mode = mode_name(effective.mode);

  if (command == "expand") {
    run_expand(effective, rep);
  } else if (command == "evolve") {
    run_evolve(effective, rep);
  } else if (command == "compare") {
    run_compare(effective, rep);
  } else if (command == "floquet") {
    run_floquet(effective, rep);
  } else if (command == "adiabatic") {
    run_adiabatic(effective, rep);
  } else {
    throw SchemaError("command: expected expand|evolve|compare|floquet|adiabatic, got '" +
                      command + "'");
  }
  return rep;
}

std::string report_to_json(const RunReport& r) {
  ojson j;
  j["schema_version"] = r.schema_version;
  j["command"] = r.command;
  j["mode"] = r.mode;
  j["dimension"] = r.dimension;
  j["order"] = r.order;
  j["lambda"] = r.lambdas;
  j["matrices"] = ojson::array();
  for (const auto& m : r.matrices) {
    ojson e;
    e["name"] = m.name;
    e["order"] = m.order;
    if (m.t) {
      e["t"] = *m.t;
    } else {
      e["t"] = nullptr;
    }
    e["value"] = mat_to_json(m.value);
    j["matrices"].push_back(std::move(e));
  }
  j["scalars"] = ojson::array();
  for (const auto& s : r.scalars) {
    j["scalars"].push_back(ojson{{"name", s.name}, {"order", s.order}, {"value", s.value}});
  }
  j["evolutors"] = ojson::array();
  for (const auto& u : r.evolutors) {
    ojson e;
    e["lambda"] = u.lambda;
    e["t"] = u.t;
    e["unitarity_defect"] = u.unitarity_defect;
    e["value"] = mat_to_json(u.value);
    j["evolutors"].push_back(std::move(e));
  }
  j["errors"] = ojson::array();
  for (const auto& e : r.errors) {
    j["errors"].push_back(ojson{
        {"lambda", e.lambda}, {"t", e.t}, {"order", e.order}, {"frob_error", e.frob_error}});
  }
  j["verdicts"] = ojson::array();
  for (const auto& v : r.verdicts) {
    j["verdicts"].push_back(ojson{{"order", v.order}, {"slope", v.slope}, {"pass", v.pass}});
  }
  j["residuals"] = ojson::array();
  for (const auto& e : r.residuals) {
    j["residuals"].push_back(ojson{{"t", e.t}, {"order", e.order}, {"value", e.value}});
  }
  j["effective_hamiltonians"] = ojson::array();
  for (const auto& e : r.effective_hamiltonians) {
    j["effective_hamiltonians"].push_back(ojson{{"lambda", e.lambda}, {"value", mat_to_json(e.value)}});
  }
  j["unitarity_max"] = r.unitarity_max;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("report: not valid JSON (") + e.what() + ")");
  }
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.command = j.at("command").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.dimension = j.at("dimension").get<int>();
  r.order = j.at("order").get<int>();
  r.lambdas = j.at("lambda").get<std::vector<double>>();
  for (const auto& e : j.at("matrices")) {
    MatrixRow m;
    m.name = e.at("name").get<std::string>();
    m.order = e.at("order").get<int>();
    if (!e.at("t").is_null()) m.t = e.at("t").get<double>();
    m.value = mat_from_json(e.at("value"));
    r.matrices.push_back(std::move(m));
  }
  for (const auto& e : j.at("scalars")) {
    r.scalars.push_back({e.at("name").get<std::string>(), e.at("order").get<int>(),
                         e.at("value").get<double>()});
  }
  for (const auto& e : j.at("evolutors")) {
    r.evolutors.push_back({e.at("lambda").get<double>(), e.at("t").get<double>(),
                           e.at("unitarity_defect").get<double>(), mat_from_json(e.at("value"))});
  }
  for (const auto& e : j.at("errors")) {
    r.errors.push_back({e.at("lambda").get<double>(), e.at("t").get<double>(),
                        e.at("order").get<int>(), e.at("frob_error").get<double>()});
  }
  for (const auto& e : j.at("verdicts")) {
    r.verdicts.push_back(
        {e.at("order").get<int>(), e.at("slope").get<double>(), e.at("pass").get<bool>()});
  }
  for (const auto& e : j.at("residuals")) {
    r.residuals.push_back(
        {e.at("t").get<double>(), e.at("order").get<int>(), e.at("value").get<double>()});
  }
  for (const auto& e : j.at("effective_hamiltonians")) {
    r.effective_hamiltonians.push_back({e.at("lambda").get<double>(), mat_from_json(e.at("value"))});
  }
  r.unitarity_max = j.at("unitarity_max").get<double>();
  return r;
}

bool RunReport::operator==(const RunReport& other) const {
  return report_to_json(*this) == report_to_json(other);
}

std::vector<std::string> write_results(const RunReport& r, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path base(path);
  if (base.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(base.parent_path(), ec);
    if (ec) throw IoError("write_results: cannot create " + base.parent_path().string());
  }

  auto open = [](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("write_results: cannot open " + p.string());
    return out;
  };

  std::vector<std::string> written;
  {
    const fs::path p = base.string() + ".json";
    auto out = open(p);
    out << report_to_json(r);
    written.push_back(p.string());
  }
  {
    const fs::path p = base.string() + "_errors.csv";
    auto out = open(p);
    out << "lambda,t,order,frob_error\n";
    char buf[160];
    for (const auto& e : r.errors) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g\n", e.lambda, e.t, e.order,
                    e.frob_error);
      out << buf;
    }
    written.push_back(p.string());
  }
  {
    const fs::path p = base.string() + "_residuals.csv";
    auto out = open(p);
    out << "t,order,residual\n";
    char buf[160];
    for (const auto& e : r.residuals) {
      std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g\n", e.t, e.order, e.value);
      out << buf;
    }
    written.push_back(p.string());
  }
  {
    // Timing side channel; not part of the deterministic payload.
    auto out = open(base.string() + ".timing.json");
    out << "{\"elapsed_ms\": " << r.elapsed_ms << "}\n";
  }
  return written;
}

}  // namespace evokit
