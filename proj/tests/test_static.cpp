#include <doctest.h>

#include "evokit/static_solver.hpp"
#include "test_support.hpp"

using namespace evokit;

namespace {

StaticProblem qubit_problem(double omega = 1.0, double g = 1.0) {
  return StaticProblem(HermitianOperator(0.5 * omega * pauli_z()),
                       {HermitianOperator(g * pauli_x())});
}

}  // namespace

TEST_CASE("qubit recursion through fourth order") {
  const StaticProblem p = qubit_problem();
  const StaticSolution sol = solve_static(p, GaugeSpec::minimal(), 4);

  CHECK(sol.c.at(1).norm() < 1e-14);
  CHECK((sol.z.at(1) - pauli_y()).norm() < 1e-13);
  CHECK((sol.c.at(2) - pauli_z()).norm() < 1e-13);
  CHECK(sol.z.at(2).norm() < 1e-13);
  CHECK(sol.c.at(3).norm() < 1e-13);
  CHECK((sol.z.at(3) + (4.0 / 3.0) * pauli_y()).norm() < 1e-12);
  CHECK((sol.c.at(4) + pauli_z()).norm() < 1e-12);

  for (double r : sol.diagnostics.commutant_residual) CHECK(r < 1e-11);
}

TEST_CASE("perturbation commuting with H0 stays diagonal") {
  StaticProblem p(HermitianOperator(0.5 * pauli_z()), {HermitianOperator(0.3 * pauli_z())});
  const StaticSolution sol = solve_static(p, GaugeSpec::minimal(), 2);
  CHECK((sol.c.at(1) - 0.3 * pauli_z()).norm() < 1e-14);
  CHECK(sol.z.at(1).norm() < 1e-14);
  CHECK(sol.c.at(2).norm() < 1e-14);
}

TEST_CASE("static evolutor against the exact propagator") {
  const StaticProblem p = qubit_problem();
  const StaticSolution sol = solve_static(p, GaugeSpec::minimal(), 2);

  // Boundary cases.
  CHECK((assemble_static_evolutor(sol, 0.0, 1.4).matrix() -
         unitary_exp(0.5 * pauli_z(), 1.4).matrix())
            .norm() < 1e-13);
  CHECK((assemble_static_evolutor(sol, 0.1, 0.0).matrix() - Mat::Identity(2, 2)).norm() < 1e-13);

  auto error_at = [&](double lambda) {
    const Mat exact = unitary_exp(0.5 * pauli_z() + lambda * pauli_x(), 1.0).matrix();
    return (exact - assemble_static_evolutor(sol, lambda, 1.0).matrix()).norm();
  };
  const double e1 = error_at(0.1);
  const double e2 = error_at(0.05);
  CHECK(e1 < 2e-3);
  CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(0.30));

  // Unitary whatever the truncation and parameters.
  for (double lambda : {0.0, 0.3, 0.7}) {
    for (double t : {0.0, 1.0, 5.0}) {
      CHECK(unitarity_defect(assemble_static_evolutor(sol, lambda, t).matrix()) < 1e-12);
    }
  }
}

TEST_CASE("effective eigenvalues") {
  const StaticProblem p = qubit_problem();
  const StaticSolution sol2 = solve_static(p, GaugeSpec::minimal(), 2);

  const auto at0 = effective_eigenvalues(sol2, 0.0);
  CHECK(at0[0][0] == doctest::Approx(-0.5));
  CHECK(at0[1][0] == doctest::Approx(0.5));

  const double exact = std::sqrt(0.26);
  const auto at2 = effective_eigenvalues(sol2, 0.1);
  CHECK(at2[1][0] == doctest::Approx(0.51));
  CHECK(std::abs(at2[1][0] - exact) <= 2e-4);

  const StaticSolution sol4 = solve_static(p, GaugeSpec::minimal(), 4);
  const auto at4 = effective_eigenvalues(sol4, 0.1);
  CHECK(std::abs(at4[1][0] - exact) * 50.0 <= std::abs(at2[1][0] - exact));

  // Fully degenerate H0: the effective eigenvalues are the spectrum of the
  // perturbation series restricted to the single group.
  std::mt19937 rng(89);
  const Mat h1 = test::random_hermitian(rng, 3);
  StaticProblem flat(HermitianOperator(Mat::Zero(3, 3)), {HermitianOperator(h1)});
  const StaticSolution sflat = solve_static(flat, GaugeSpec::minimal(), 2);
  CHECK((sflat.c.at(1) - h1).norm() < 1e-13);
  const double lambda = 0.2;
  const auto ev = effective_eigenvalues(sflat, lambda);
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(lambda * h1 + lambda * lambda * sflat.c.at(2)));
  for (int k = 0; k < 3; ++k) CHECK(ev[0][k] == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-10));
}

TEST_CASE("order scaling on random dim-4 problems") {
  std::mt19937 rng(97);
  for (int order = 2; order <= 3; ++order) {
    const Mat h0d = Vec::LinSpaced(4, -1.5, 1.5).asDiagonal();
    const Mat v = unitary_exp(test::random_hermitian(rng, 4)).matrix();
    const Mat h0 = hermitian_part(conjugate(v, h0d));
    const Mat h1 = test::random_hermitian(rng, 4);
    StaticProblem p(HermitianOperator(h0), {HermitianOperator(h1)});
    const StaticSolution sol = solve_static(p, GaugeSpec::minimal(), order);

    std::vector<std::pair<double, double>> errs;
    for (double lambda : {0.08, 0.04, 0.02}) {
      const Mat exact = unitary_exp(h0 + lambda * h1, 1.5).matrix();
      errs.emplace_back(lambda,
                        (exact - assemble_static_evolutor(sol, lambda, 1.5).matrix()).norm());
    }
    const double slope = test::fit_slope(errs);
    CHECK(slope > order + 1 - 0.4);
    CHECK(slope < order + 1 + 0.6);
  }
}

TEST_CASE("intertwining with the perturbed spectral projector") {
  const StaticProblem p = qubit_problem();
  const StaticSolution sol = solve_static(p, GaugeSpec::minimal(), 2);
  const std::size_t m = 1;

  auto defect = [&](double lambda) {
    const Mat w = unitary_exp(eval_series(sol.z, lambda)).matrix();
    const Mat proj = w * p.s0.groups()[m].projector * w.adjoint();
    const Mat h = 0.5 * pauli_z() + lambda * pauli_x();
    return (h * proj - proj * h * proj).norm();
  };
  // O(lambda^{N+1}) decay of the invariance defect.
  const double d1 = defect(0.1);
  const double d2 = defect(0.05);
  CHECK(d1 / d2 == doctest::Approx(8.0).epsilon(0.35));

  // And the contour projector sees the same subspace.
  auto contour_gap = [&](double lambda) {
    const HermitianOperator h(0.5 * pauli_z() + lambda * pauli_x());
    const Mat pc = contour_projector(h, m, p.s0, 0.45, 256);
    const Mat w = unitary_exp(eval_series(sol.z, lambda)).matrix();
    return (pc - w * p.s0.groups()[m].projector * w.adjoint()).norm();
  };
  const double g1 = contour_gap(0.1);
  const double g2 = contour_gap(0.05);
  CHECK(g1 / g2 == doctest::Approx(8.0).epsilon(0.35));
}

TEST_CASE("gauge freedom shifts only higher orders") {
  const StaticProblem p = qubit_problem();
  const StaticSolution minimal = solve_static(p, GaugeSpec::minimal(), 2);
  const GaugeSpec shifted = GaugeSpec::custom({0.2 * pauli_z(), -0.1 * pauli_z()});
  const StaticSolution custom = solve_static(p, shifted, 2);

  CHECK((diag_part(custom.z.at(1), p.s0) - 0.2 * pauli_z()).norm() < 1e-13);

  auto gauge_gap = [&](double lambda) {
    return (assemble_static_evolutor(minimal, lambda, 1.0).matrix() -
            assemble_static_evolutor(custom, lambda, 1.0).matrix())
        .norm();
  };
  const double d1 = gauge_gap(0.1);
  const double d2 = gauge_gap(0.05);
  CHECK(d1 / d2 == doctest::Approx(8.0).epsilon(0.35));

  // Gauge blocks must commute with H0.
  CHECK_THROWS_AS(solve_static(p, GaugeSpec::custom({pauli_x()}), 2), DegenerateGapError);
}
