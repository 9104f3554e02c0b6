#include <doctest.h>

#include "evokit/spectral.hpp"
#include "test_support.hpp"

using namespace evokit;

namespace {

SpectralDecomposition qubit_s0(double omega = 1.0) {
  return spectral_decompose(HermitianOperator(0.5 * omega * pauli_z()));
}

}  // namespace

TEST_CASE("spectral_decompose groups and projectors") {
  const auto s = spectral_decompose(HermitianOperator(Vec::LinSpaced(2, 0.0, 1.0).asDiagonal()));
  REQUIRE(s.group_count() == 2);
  CHECK(s.groups()[0].eigenvalue == doctest::Approx(0.0));
  CHECK(s.groups()[1].eigenvalue == doctest::Approx(1.0));
  CHECK(test::max_abs_diff(s.groups()[0].projector, Vec(Eigen::Vector2cd(1, 0)).asDiagonal()) < 1e-14);
  CHECK(s.gap_min() == doctest::Approx(1.0));

  const auto full = spectral_decompose(HermitianOperator(Mat::Identity(3, 3)));
  REQUIRE(full.group_count() == 1);
  CHECK(full.groups()[0].multiplicity == 3);
  CHECK(test::max_abs_diff(full.groups()[0].projector, Mat::Identity(3, 3)) < 1e-14);

  const auto qb = qubit_s0();
  REQUIRE(qb.group_count() == 2);
  CHECK(qb.groups()[0].eigenvalue == doctest::Approx(-0.5));
  CHECK(test::max_abs_diff(qb.groups()[1].projector, 0.5 * (Mat::Identity(2, 2) + pauli_z())) < 1e-14);
}

TEST_CASE("spectral_decompose merges near-degenerate levels and flags ambiguity") {
  Vec d(3);
  d << 0.0, 1e-12, 1.0;
  const auto s = spectral_decompose(HermitianOperator(Mat(d.asDiagonal())), 1e-10);
  REQUIRE(s.group_count() == 2);
  CHECK(s.groups()[0].multiplicity == 2);

  Vec bad(3);
  bad << 0.0, 5e-10, 1.0;  // distinct at 1e-10 resolution, yet far too close
  CHECK_THROWS_AS(spectral_decompose(HermitianOperator(Mat(bad.asDiagonal())), 1e-10),
                  DegenerateGapError);
}

TEST_CASE("projector invariants") {
  std::mt19937 rng(31);
  const auto s = spectral_decompose(HermitianOperator(test::random_hermitian(rng, 5)));
  Mat sum = Mat::Zero(5, 5);
  for (const auto& g : s.groups()) {
    sum += g.projector;
    CHECK(hermiticity_defect(g.projector) < 1e-13);
    CHECK((g.projector * g.projector - g.projector).norm() < 1e-12);
  }
  CHECK((sum - Mat::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("diag_part and offdiag_part") {
  const auto qb = qubit_s0();
  std::mt19937 rng(37);
  const Mat x = test::random_matrix(rng, 2);

  // Rank-1 projectors: the block-diagonal part is the literal diagonal.
  Mat diag_only = x;
  diag_only(0, 1) = diag_only(1, 0) = 0.0;
  CHECK(test::max_abs_diff(diag_part(x, qb), diag_only) < 1e-14);
  CHECK(test::max_abs_diff(offdiag_part(x, qb) + diag_part(x, qb), x) < 1e-14);
  CHECK(test::max_abs_diff(offdiag_part(pauli_x(), qb), pauli_x()) < 1e-14);

  const auto single = spectral_decompose(HermitianOperator(Mat::Identity(3, 3)));
  const Mat y = test::random_matrix(rng, 3);
  CHECK(test::max_abs_diff(diag_part(y, single), y) < 1e-14);

  Vec d(3);
  d << 0.0, 0.0, 1.0;
  const auto two = spectral_decompose(HermitianOperator(Mat(d.asDiagonal())));
  Mat ones = Mat::Ones(3, 3);
  Mat expected = Mat::Ones(3, 3);
  expected(0, 2) = expected(2, 0) = expected(1, 2) = expected(2, 1) = 0.0;
  CHECK(test::max_abs_diff(diag_part(ones, two), expected) < 1e-13);

  // Superoperator idempotence.
  const Mat once = diag_part(y, two);
  CHECK((diag_part(once, two) - once).norm() < 1e-13);

  // Block-diagonal parts commute with the decomposed operator.
  std::mt19937 rng2(41);
  const Mat h = test::random_hermitian(rng2, 5);
  const auto s = spectral_decompose(HermitianOperator(h));
  const Mat z = test::random_matrix(rng2, 5);
  CHECK(commutator(diag_part(z, s), h).norm() < 1e-12 * std::max(1.0, z.norm() * h.norm()));
}

TEST_CASE("energy_green_part solves the commutator equation") {
  const auto qb = qubit_s0();  // omega = 1
  CHECK(test::max_abs_diff(energy_green_part(pauli_x(), qb), pauli_y()) < 1e-14);

  // Input with no off-diagonal part maps to zero.
  CHECK(energy_green_part(pauli_z(), qb).norm() < 1e-14);

  std::mt19937 rng(43);
  const Mat h = test::random_hermitian(rng, 4);
  const auto s = spectral_decompose(HermitianOperator(h));
  const Mat x = test::random_matrix(rng, 4);
  const Mat y = energy_green_part(x, s);
  CHECK((commutator(y, h) - kImag * offdiag_part(x, s)).norm() <
        1e-10 * std::max(1.0, x.norm()));
  CHECK(diag_part(y, s).norm() < 1e-12);

  const Mat xh = test::random_hermitian(rng, 4);
  CHECK(hermiticity_defect(energy_green_part(xh, s)) < 1e-12);

  const auto single = spectral_decompose(HermitianOperator(Mat::Identity(3, 3)));
  CHECK_THROWS_AS(energy_green_part(Mat::Ones(3, 3), single), SingleGroupError);

  // Instantaneous-eigenvalue override hits the gap floor.
  CHECK_THROWS_AS(energy_green_part(pauli_x(), qb, {0.5, 0.5 + 1e-12}), DegenerateGapError);
}

TEST_CASE("contour projector reproduces spectral projectors") {
  const auto qb = qubit_s0();
  const double omega = 1.0, g = 1.0;

  // Unperturbed limit.
  const Mat p0 = contour_projector(HermitianOperator(0.5 * omega * pauli_z()), 1, qb, 0.45, 128);
  CHECK((p0 - qb.groups()[1].projector).norm() < 1e-10);

  // Closed-form qubit projector onto the upper perturbed level.
  for (double lambda : {0.05, 0.1, 0.2}) {
    const HermitianOperator h(0.5 * omega * pauli_z() + lambda * g * pauli_x());
    const Mat p = contour_projector(h, 1, qb, 0.45, 256);
    Eigen::Vector3d n(2.0 * lambda * g, 0.0, omega);
    n /= std::sqrt(omega * omega + 4.0 * lambda * lambda * g * g);
    const Mat exact =
        0.5 * (Mat::Identity(2, 2) + n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z());
    CHECK((p - exact).norm() < 1e-8);
    CHECK(std::abs(p.trace().real() - 1.0) < 1e-10);
  }

  // Degenerate group keeps its rank under the contour.
  Vec d(3);
  d << 0.0, 0.0, 1.0;
  const auto two = spectral_decompose(HermitianOperator(Mat(d.asDiagonal())));
  std::mt19937 rng(47);
  const HermitianOperator hp(Mat(d.asDiagonal()) + 0.05 * test::random_hermitian(rng, 3));
  const Mat p = contour_projector(hp, 0, two, 0.4, 128);
  CHECK(std::abs(p.trace().real() - 2.0) < 1e-8);

  // A node sitting on an eigenvalue is refused.
  CHECK_THROWS_AS(contour_projector(HermitianOperator(0.5 * pauli_z()), 1, qb, 1.0, 128),
                  ContourFailure);
}
