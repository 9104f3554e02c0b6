#include "evokit/matrix.hpp"

#include <cmath>
#include <string>

namespace evokit {

void require_square(const Mat& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatch(std::string(where) + ": matrix must be square and non-empty, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const Mat& a, const Mat& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(where) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
  }
}

double frobenius_norm(const Mat& a) { return a.norm(); }

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double hermiticity_defect(const Mat& a) { return (a - a.adjoint()).norm(); }

double unitarity_defect(const Mat& u) {
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm();
}

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

Mat commutator(const Mat& x, const Mat& y) {
  require_square(x, "commutator");
  require_same_shape(x, y, "commutator");
  return x * y - y * x;
}

Mat ad_power_apply(const Mat& x, const Mat& y, int k) {
  require_square(x, "ad_power_apply");
  require_same_shape(x, y, "ad_power_apply");
  if (k < 0) throw DimensionMismatch("ad_power_apply: power must be non-negative");
  Mat out = y;
  for (int j = 0; j < k; ++j) out = x * out - out * x;
  return out;
}

namespace {

// Pade-13 numerator coefficients (Higham 2005).
constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};

constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Mat mat_exp(const Mat& a) {
  require_square(a, "mat_exp");
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Mat as = a / std::pow(2.0, squarings);

  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = as * as;
  const Mat a4 = a2 * a2;
  const Mat a6 = a2 * a4;
  const double* b = kPade13;
  const Mat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                      b[3] * a2 + b[1] * ident);
  const Mat v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

Mat conjugate(const Mat& u, const Mat& x) {
  require_square(u, "conjugate");
  require_same_shape(u, x, "conjugate");
  return u * x * u.adjoint();
}

Mat pauli_x() {
  Mat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Mat pauli_y() {
  Mat s(2, 2);
  s << 0, Cx(0, -1), Cx(0, 1), 0;
  return s;
}

Mat pauli_z() {
  Mat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace evokit
