#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "evokit/run.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw evokit::IoError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Overrides {
  int order = 0;
  std::vector<double> lambdas;
  std::string mode;
  double tau = -1.0;
  int grid = 0;
  double tol = 0.0;
  std::string output;
};

void apply(const Overrides& o, evokit::ProblemConfig& cfg) {
  if (o.order > 0) cfg.order = o.order;
  if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
  if (!o.mode.empty()) cfg.mode = evokit::mode_from_name(o.mode);
  if (o.tau >= 0.0) cfg.tau = o.tau;
  if (o.grid > 0) cfg.samples = o.grid;
  if (o.tol > 0.0) cfg.quad.quad_tol = o.tol;
  if (!o.output.empty()) cfg.output = o.output;
}

int run_command(const std::string& command, const std::string& config_path, const Overrides& o) {
  evokit::ProblemConfig cfg = evokit::parse_config(slurp(config_path));
  apply(o, cfg);

  const auto start = std::chrono::steady_clock::now();
  evokit::RunReport report = evokit::run(command, cfg);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const auto files = evokit::write_results(report, cfg.output);
  for (const auto& f : files) std::cout << f << "\n";
  std::cerr << "evokit " << command << ": " << report.elapsed_ms << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative evolution-operator expansions with unitary truncations"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;
  for (const std::string name : {"expand", "evolve", "compare", "floquet", "adiabatic"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "problem definition (JSON)")->required();
    sub->add_option("--order", o.order, "truncation order override");
    sub->add_option("--lambda", o.lambdas, "perturbative parameter values override");
    sub->add_option("--mode", o.mode, "mode override (static|magnus|floquet|average|adiabatic)");
    sub->add_option("--tau", o.tau, "Floquet averaging span override");
    sub->add_option("--grid", o.grid, "time grid sample count override");
    sub->add_option("--tol", o.tol, "quadrature tolerance override");
    sub->add_option("--output", o.output, "output path prefix override");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, config_path, o);
  } catch (const evokit::Error& e) {
    std::cerr << "evokit " << command << ": error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "evokit " << command << ": unexpected error: " << e.what() << "\n";
    return 2;
  }
}
