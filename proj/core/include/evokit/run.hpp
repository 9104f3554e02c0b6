#pragma once

#include <functional>

#include "evokit/adiabatic_solver.hpp"
#include "evokit/config.hpp"
#include "evokit/oracle.hpp"
#include "evokit/static_solver.hpp"

namespace evokit {

struct MatrixRow {
  std::string name;
  int order = 0;
  std::optional<double> t;
  Mat value;
};

struct ScalarRow {
  std::string name;
  int order = 0;
  double value = 0.0;
};

struct EvolutorRow {
  double lambda = 0.0;
  double t = 0.0;
  double unitarity_defect = 0.0;
  Mat value;
};

struct ErrorRow {
  double lambda = 0.0;
  double t = 0.0;
  int order = 0;
  double frob_error = 0.0;
};

struct VerdictRow {
  int order = 0;
  double slope = 0.0;
  bool pass = false;
};

struct ResidualRow {
  double t = 0.0;
  int order = 0;
  double value = 0.0;
};

struct EffHamRow {
  double lambda = 0.0;
  Mat value;
};

/// Structured output of one CLI run. Everything serialized is deterministic;
/// wall-clock timing rides in a side channel file, never in the payload.
struct RunReport {
  std::string command;
  std::string mode;
  int schema_version = 1;
  int dimension = 0;
  int order = 0;
  std::vector<double> lambdas;
  std::vector<MatrixRow> matrices;
  std::vector<ScalarRow> scalars;
  std::vector<EvolutorRow> evolutors;
  std::vector<ErrorRow> errors;
  std::vector<VerdictRow> verdicts;
  std::vector<ResidualRow> residuals;
  std::vector<EffHamRow> effective_hamiltonians;
  double unitarity_max = 0.0;

  double elapsed_ms = 0.0;  // side channel only

  bool operator==(const RunReport& other) const;
};

/// Dispatch a subcommand (expand | evolve | compare | floquet | adiabatic).
RunReport run(const std::string& command, const ProblemConfig& cfg);

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// Write <path>.json, <path>_errors.csv, <path>_residuals.csv and the timing
/// side channel <path>.timing.json; returns the payload files written.
std::vector<std::string> write_results(const RunReport& r, const std::string& path);

// Problem builders, shared with the test suites.
StaticProblem build_static_problem(const ProblemConfig& cfg);
AdiabaticProblem build_adiabatic_problem(const ProblemConfig& cfg);
DynamicProblem build_dynamic_problem(const ProblemConfig& cfg);

/// Full lab-frame Hamiltonian (lambda, t) -> H0(t) + sum lambda^n H_n(t).
std::function<Mat(double, double)> lab_hamiltonian(const ProblemConfig& cfg);

/// Worker cap from EVOKIT_THREADS (defaults to the hardware concurrency).
int max_threads();

}  // namespace evokit
