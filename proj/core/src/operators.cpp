#include "evokit/operators.hpp"

#include <string>

namespace evokit {

HermitianOperator::HermitianOperator(Mat m, double herm_tol) {
  require_square(m, "HermitianOperator");
  const double defect = hermiticity_defect(m);
  if (defect > herm_tol * std::max(1e-300, m.norm())) {
    throw HermiticityError("HermitianOperator: defect " + std::to_string(defect) +
                           " exceeds tolerance " + std::to_string(herm_tol) + " * norm");
  }
  mat_ = hermitian_part(m);
}

UnitaryOperator::UnitaryOperator(Mat u, double unit_tol) {
  require_square(u, "UnitaryOperator");
  const double defect = unitarity_defect(u);
  if (defect > unit_tol) {
    throw UnitarityError("UnitaryOperator: defect " + std::to_string(defect) +
                         " exceeds tolerance " + std::to_string(unit_tol));
  }
  mat_ = std::move(u);
}

UnitaryOperator unitary_exp(const Mat& generator, double scale) {
  require_square(generator, "unitary_exp");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(generator));
  const Eigen::Index n = generator.rows();
  Vec phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::exp(Cx(0.0, -scale * es.eigenvalues()(k)));
  }
  Mat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return UnitaryOperator(std::move(u));
}

}  // namespace evokit
