#include "evokit/config.hpp"

#include <nlohmann/json.hpp>

namespace evokit {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& expectation) {
  throw SchemaError(path + ": " + expectation);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return as_number(j.at(key), path + "." + key);
}

Cx as_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a complex number as [re, im]");
  }
  return Cx(j[0].get<double>(), j[1].get<double>());
}

Mat as_matrix(const json& j, int dimension, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension) {
    fail(path, "expected " + std::to_string(dimension) + " rows");
  }
  Mat m(dimension, dimension);
  for (int r = 0; r < dimension; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dimension) {
      fail(path + "[" + std::to_string(r) + "]",
           "expected " + std::to_string(dimension) + " entries");
    }
    for (int c = 0; c < dimension; ++c) {
      m(r, c) = as_complex(row[static_cast<std::size_t>(c)],
                           path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

Waveform as_waveform(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a waveform object");
  const json& type = field(j, path, "type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "constant") {
    return Waveform::constant(number_or(j, "value", 1.0, path));
  }
  if (kind == "cosine" || kind == "sine") {
    const double omega = as_number(field(j, path, "omega"), path + ".omega");
    const double amplitude = number_or(j, "amplitude", 1.0, path);
    const double phase = number_or(j, "phase", 0.0, path);
    return kind == "cosine" ? Waveform::cosine(omega, amplitude, phase)
                            : Waveform::sine(omega, amplitude, phase);
  }
  if (kind == "gaussian") {
    const double center = as_number(field(j, path, "center"), path + ".center");
    const double width = as_number(field(j, path, "width"), path + ".width");
    return Waveform::gaussian_pulse(center, width, number_or(j, "amplitude", 1.0, path));
  }
  if (kind == "pwlinear") {
    const json& times = field(j, path, "times");
    const json& values = field(j, path, "values");
    if (!times.is_array() || !values.is_array() || times.size() != values.size()) {
      fail(path, "pwlinear needs matching times/values arrays");
    }
    std::vector<double> ts, vs;
    for (std::size_t k = 0; k < times.size(); ++k) {
      ts.push_back(as_number(times[k], path + ".times"));
      vs.push_back(as_number(values[k], path + ".values"));
    }
    return Waveform::piecewise_linear(std::move(ts), std::move(vs));
  }
  fail(path + ".type", "expected one of constant|cosine|sine|gaussian|pwlinear");
}

void check_hermitian(const Mat& m, double herm_tol, const std::string& path) {
  const double defect = hermiticity_defect(m);
  if (defect > herm_tol * std::max(1.0, m.norm())) {
    throw HermiticityError(path + ": matrix is not Hermitian (defect " + std::to_string(defect) +
                           ")");
  }
}

}  // namespace

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::Static:
      return "static";
    case RunMode::Magnus:
      return "magnus";
    case RunMode::Floquet:
      return "floquet";
    case RunMode::Average:
      return "average";
    case RunMode::Adiabatic:
      return "adiabatic";
  }
  return "static";
}

RunMode mode_from_name(const std::string& name) {
  if (name == "static") return RunMode::Static;
  if (name == "magnus") return RunMode::Magnus;
  if (name == "floquet") return RunMode::Floquet;
  if (name == "average") return RunMode::Average;
  if (name == "adiabatic") return RunMode::Adiabatic;
  throw SchemaError("run.mode: expected one of static|magnus|floquet|average|adiabatic, got '" +
                    name + "'");
}

Mat matrix_from_coeffs(int dimension, double x, double y, double z, double ident) {
  if (dimension != 2) throw SchemaError("h0.pauli: spin coefficients require dimension 2");
  return x * pauli_x() + y * pauli_y() + z * pauli_z() + ident * Mat::Identity(2, 2);
}

ProblemConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("document: not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw SchemaError("document: expected a JSON object");

  ProblemConfig cfg;
  cfg.schema_version = as_int(field(doc, "document", "schema_version"), "schema_version");
  if (cfg.schema_version != 1) fail("schema_version", "only version 1 is understood");
  cfg.dimension = as_int(field(doc, "document", "dimension"), "dimension");
  if (cfg.dimension < 1 || cfg.dimension > 64) fail("dimension", "expected 1 <= dimension <= 64");

  // Tolerances first; Hermiticity checks depend on them.
  if (doc.contains("run") && doc.at("run").is_object() && doc.at("run").contains("tolerances")) {
    const json& tol = doc.at("run").at("tolerances");
    cfg.herm_tol = number_or(tol, "herm_tol", cfg.herm_tol, "run.tolerances");
    cfg.group_tol = number_or(tol, "group_tol", cfg.group_tol, "run.tolerances");
    cfg.oracle_tol = number_or(tol, "oracle_tol", cfg.oracle_tol, "run.tolerances");
    cfg.quad.quad_tol = number_or(tol, "quad_tol", cfg.quad.quad_tol, "run.tolerances");
    cfg.quad.avg_tol = number_or(tol, "avg_tol", cfg.quad.avg_tol, "run.tolerances");
  }

  const json& h0 = field(doc, "document", "h0");
  if (h0.contains("matrix")) {
    cfg.h0 = as_matrix(h0.at("matrix"), cfg.dimension, "h0.matrix");
  } else if (h0.contains("pauli")) {
    const json& p = h0.at("pauli");
    cfg.h0 = matrix_from_coeffs(cfg.dimension, number_or(p, "x", 0.0, "h0.pauli"),
                                number_or(p, "y", 0.0, "h0.pauli"),
                                number_or(p, "z", 0.0, "h0.pauli"),
                                number_or(p, "identity", 0.0, "h0.pauli"));
  } else {
    fail("h0", "expected a 'matrix' or 'pauli' block");
  }
  check_hermitian(cfg.h0, cfg.herm_tol, "h0");
  if (h0.contains("energies")) {
    const json& en = h0.at("energies");
    if (!en.is_array() || en.empty()) fail("h0.energies", "expected a non-empty array");
    for (std::size_t k = 0; k < en.size(); ++k) {
      cfg.h0_energies.push_back(as_waveform(en[k], "h0.energies[" + std::to_string(k) + "]"));
    }
    cfg.h0_time_dependent = true;
  }

  const json& pert = field(doc, "document", "perturbation");
  if (!pert.is_array() || pert.empty()) fail("perturbation", "expected a non-empty array of orders");
  for (std::size_t n = 0; n < pert.size(); ++n) {
    const std::string path = "perturbation[" + std::to_string(n) + "]";
    const json& terms = pert[n];
    if (!terms.is_array()) fail(path, "expected an array of {matrix, waveform} terms");
    std::vector<MatrixTerm> order_terms;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string tpath = path + "[" + std::to_string(k) + "]";
      MatrixTerm term;
      term.matrix = as_matrix(field(terms[k], tpath, "matrix"), cfg.dimension, tpath + ".matrix");
      check_hermitian(term.matrix, cfg.herm_tol, tpath + ".matrix");
      if (terms[k].contains("waveform")) {
        term.waveform = as_waveform(terms[k].at("waveform"), tpath + ".waveform");
      }
      order_terms.push_back(std::move(term));
    }
    cfg.perturbation.push_back(std::move(order_terms));
  }

  const json& run = field(doc, "document", "run");
  if (run.contains("mode")) {
    if (!run.at("mode").is_string()) fail("run.mode", "expected a string");
    cfg.mode = mode_from_name(run.at("mode").get<std::string>());
  }
  if (run.contains("order")) cfg.order = as_int(run.at("order"), "run.order");
  if (cfg.order < 1 || cfg.order > kDefaultMaxOrder + 2) {
    fail("run.order", "expected 1 <= order <= " + std::to_string(kDefaultMaxOrder + 2));
  }
  if (run.contains("lambda")) {
    const json& lam = run.at("lambda");
    if (lam.is_number()) {
      cfg.lambdas = {lam.get<double>()};
    } else if (lam.is_array() && !lam.empty()) {
      cfg.lambdas.clear();
      for (std::size_t k = 0; k < lam.size(); ++k) {
        cfg.lambdas.push_back(as_number(lam[k], "run.lambda"));
      }
    } else {
      fail("run.lambda", "expected a number or a non-empty array");
    }
  }
  if (run.contains("t_grid")) {
    const json& grid = run.at("t_grid");
    cfg.t_max = as_number(field(grid, "run.t_grid", "t_max"), "run.t_grid.t_max");
    if (cfg.t_max <= 0.0) fail("run.t_grid.t_max", "expected a positive horizon");
    if (grid.contains("samples")) cfg.samples = as_int(grid.at("samples"), "run.t_grid.samples");
    if (cfg.samples < 5) fail("run.t_grid.samples", "expected at least 5 samples");
    if (grid.contains("evolve_points")) {
      cfg.evolve_points = as_int(grid.at("evolve_points"), "run.t_grid.evolve_points");
      if (cfg.evolve_points < 2) fail("run.t_grid.evolve_points", "expected at least 2");
    }
  }
  if (run.contains("tau")) cfg.tau = as_number(run.at("tau"), "run.tau");
  if (run.contains("period")) {
    cfg.period = as_number(run.at("period"), "run.period");
    if (*cfg.period <= 0.0) fail("run.period", "expected a positive period");
  }
  if (run.contains("output")) {
    if (!run.at("output").is_string()) fail("run.output", "expected a string");
    cfg.output = run.at("output").get<std::string>();
  }

  if (cfg.mode == RunMode::Floquet && cfg.tau > 0.0 && cfg.period) {
    const double ratio = cfg.tau / *cfg.period;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9 || std::llround(ratio) < 1) {
      throw PeriodMismatch("run.tau: Floquet span must be a positive integer number of periods");
    }
  }
  // Orders beyond the declared ones are implicitly zero.
  while (static_cast<int>(cfg.perturbation.size()) < cfg.order) cfg.perturbation.push_back({});
  return cfg;
}

}  // namespace evokit
