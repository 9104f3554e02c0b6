#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evokit/run.hpp"
#include "test_support.hpp"

using namespace evokit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) {
  return slurp(std::string(EVOKIT_FIXTURES) + "/" + name);
}

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(EVOKIT_TEST_TMP);
  return std::string(EVOKIT_TEST_TMP) + "/" + name;
}

}  // namespace

TEST_CASE("parse_config on the static qubit fixture") {
  const ProblemConfig cfg = parse_config(fixture("static_qubit.json"));
  CHECK(cfg.dimension == 2);
  CHECK(cfg.mode == RunMode::Static);
  CHECK(cfg.order == 2);
  CHECK(cfg.lambdas == std::vector<double>{0.2, 0.1, 0.05});
  CHECK((cfg.h0 - 0.5 * pauli_z()).norm() < 1e-14);
  REQUIRE(cfg.perturbation.size() == 2);  // padded with the implicit zero order
  CHECK((cfg.perturbation[0][0].matrix - pauli_x()).norm() < 1e-14);
  CHECK(cfg.perturbation[1].empty());
  CHECK(cfg.t_max == 1.0);
}

TEST_CASE("schema errors carry field paths") {
  CHECK_THROWS_WITH_AS(parse_config(fixture("bad_missing_dimension.json")),
                       doctest::Contains("dimension"), SchemaError);
  CHECK_THROWS_AS(parse_config(fixture("bad_nonhermitian.json")), HermiticityError);
  CHECK_THROWS_AS(parse_config("not json at all"), SchemaError);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 2, "dimension": 2})"), SchemaError);

  // Floquet span inconsistent with the declared period.
  std::string text = fixture("circular_drive.json");
  text.replace(text.find("\"period\""), 8, "\"tau\": 9.42477796076938, \"period\"");
  CHECK_THROWS_AS(parse_config(text), PeriodMismatch);

  CHECK_THROWS_AS(matrix_from_coeffs(3, 0.0, 0.0, 1.0, 0.0), SchemaError);
}

TEST_CASE("expand and compare pipelines on the static fixture") {
  const ProblemConfig cfg = parse_config(fixture("static_qubit.json"));

  const RunReport expand = run("expand", cfg);
  REQUIRE(expand.matrices.size() == 4);  // C and Z at orders 1, 2
  CHECK(expand.matrices[0].name == "C");
  CHECK(expand.matrices[0].value.norm() < 1e-12);
  CHECK((expand.matrices[1].value - pauli_y()).norm() < 1e-12);   // Z_1
  CHECK((expand.matrices[2].value - pauli_z()).norm() < 1e-12);   // C_2

  const RunReport cmp = run("compare", cfg);
  REQUIRE(!cmp.verdicts.empty());
  const VerdictRow& v2 = cmp.verdicts.back();
  CHECK(v2.order == 2);
  CHECK(v2.slope == doctest::Approx(3.0).epsilon(0.15));
  CHECK(v2.pass);

  CHECK_THROWS_AS(run("bogus", cfg), SchemaError);
}

TEST_CASE("evolve at lambda 0 returns the unperturbed propagator") {
  ProblemConfig cfg = parse_config(fixture("static_qubit.json"));
  cfg.lambdas = {0.0};
  const RunReport rep = run("evolve", cfg);
  REQUIRE(rep.evolutors.size() == 5);
  for (const auto& row : rep.evolutors) {
    CHECK((row.value - unitary_exp(0.5 * pauli_z(), row.t).matrix()).norm() < 1e-12);
    CHECK(row.unitarity_defect < 1e-12);
  }
  CHECK(rep.unitarity_max < 1e-12);
}

TEST_CASE("report serialization round trip and determinism") {
  ProblemConfig cfg = parse_config(fixture("static_qubit.json"));
  cfg.lambdas = {0.1};
  const RunReport rep = run("expand", cfg);

  const std::string text = report_to_json(rep);
  const RunReport back = report_from_json(text);
  CHECK(back == rep);

  const RunReport again = run("expand", cfg);
  CHECK(report_to_json(again) == text);
}

TEST_CASE("write_results files and formats") {
  ProblemConfig cfg = parse_config(fixture("static_qubit.json"));
  const RunReport rep = run("compare", cfg);
  const std::string base = tmp_path("io_compare");
  const auto files = write_results(rep, base);
  REQUIRE(files.size() == 3);

  const std::string json_text = slurp(base + ".json");
  CHECK(report_from_json(json_text) == rep);

  std::ifstream errors(base + "_errors.csv");
  std::string header;
  std::getline(errors, header);
  CHECK(header == "lambda,t,order,frob_error");
  int rows = 0;
  for (std::string line; std::getline(errors, line);) ++rows;
  CHECK(rows == static_cast<int>(rep.errors.size()));

  std::ifstream residuals(base + "_residuals.csv");
  std::getline(residuals, header);
  CHECK(header == "t,order,residual");

  // An empty report writes a valid document with empty tables.
  RunReport empty;
  empty.command = "expand";
  empty.mode = "static";
  const auto efiles = write_results(empty, tmp_path("io_empty"));
  const RunReport eback = report_from_json(slurp(efiles[0]));
  CHECK(eback == empty);

  CHECK_THROWS_AS(write_results(rep, "/proc/definitely/not/writable/report"), IoError);
}

TEST_CASE("floquet and adiabatic pipelines produce their reports") {
  const ProblemConfig floq = parse_config(fixture("circular_drive.json"));
  ProblemConfig small = floq;
  small.lambdas = {0.1};
  const RunReport rep = run("floquet", small);
  REQUIRE(rep.matrices.size() >= 2);
  CHECK(rep.matrices[0].name == "C");
  CHECK(rep.matrices[0].value.norm() < 1e-9);              // C_1 = 0
  CHECK((rep.matrices[1].value + pauli_y()).norm() < 1e-9);  // Z0_1 = -sigma_y
  REQUIRE(!rep.effective_hamiltonians.empty());
  REQUIRE(!rep.errors.empty());
  for (const auto& s : rep.scalars) {
    if (s.name == "z_average_defect") CHECK(s.value < 1e-8);
    if (s.name == "z_periodicity_defect") CHECK(s.value < 1e-9);
  }

  ProblemConfig ad = parse_config(fixture("adiabatic_ramp.json"));
  const RunReport arep = run("adiabatic", ad);
  REQUIRE(!arep.residuals.empty());
  REQUIRE(!arep.scalars.empty());
  // residual_1 max is g/(2 T_scale) = 0.05 for this ramp.
  CHECK(arep.scalars[0].value == doctest::Approx(0.05).epsilon(0.05));
  REQUIRE(!arep.errors.empty());
}
