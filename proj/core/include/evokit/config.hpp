#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evokit/dynamic_solver.hpp"

namespace evokit {

enum class RunMode { Static, Magnus, Floquet, Average, Adiabatic };

std::string mode_name(RunMode m);
RunMode mode_from_name(const std::string& name);

/// One separable summand matrix * waveform(t) of a perturbation order.
struct MatrixTerm {
  Mat matrix;
  Waveform waveform = Waveform::constant(1.0);
};

/// Declarative problem definition, schema-validated on parse.
struct ProblemConfig {
  int schema_version = 1;
  int dimension = 0;

  Mat h0;                             // unperturbed operator at t = 0
  std::vector<Waveform> h0_energies;  // optional, per ascending group; fixed projectors
  bool h0_time_dependent = false;

  std::vector<std::vector<MatrixTerm>> perturbation;  // orders 1..N

  RunMode mode = RunMode::Static;
  int order = 2;
  std::vector<double> lambdas{0.1};
  double t_max = 1.0;
  int samples = 257;
  int evolve_points = 17;
  double tau = 0.0;
  std::optional<double> period;

  double herm_tol = kHermTol;
  double group_tol = kDefaultGroupTol;
  double oracle_tol = 1e-11;
  QuadratureConfig quad;

  std::string output = "evokit_out";
};

/// Parse and validate a JSON problem document; SchemaError messages carry the
/// path to the offending field.
ProblemConfig parse_config(const std::string& text);

/// Helpers shared by the parser and the CLI.
Mat matrix_from_coeffs(int dimension, double x, double y, double z, double ident);

}  // namespace evokit
