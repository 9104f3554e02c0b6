#pragma once

#include <complex>

#include <Eigen/Dense>

#include "evokit/errors.hpp"

namespace evokit {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr Cx kImag{0.0, 1.0};

void require_square(const Mat& a, const char* where);
void require_same_shape(const Mat& a, const Mat& b, const char* where);

double frobenius_norm(const Mat& a);

/// Largest singular value.
double spectral_norm(const Mat& a);

/// ||M - M^dagger||_F, the distance from the Hermitian cone.
double hermiticity_defect(const Mat& a);

/// ||U^dagger U - Id||_F.
double unitarity_defect(const Mat& u);

/// (M + M^dagger) / 2.
Mat hermitian_part(const Mat& a);

/// [X, Y] = XY - YX.
Mat commutator(const Mat& x, const Mat& y);

/// ad_X^k Y; k = 0 returns Y unchanged.
Mat ad_power_apply(const Mat& x, const Mat& y, int k);

/// e^A for a general dense complex matrix by Pade-13 scaling and squaring.
Mat mat_exp(const Mat& a);

/// U X U^dagger.
Mat conjugate(const Mat& u, const Mat& x);

// Pauli matrices, the work horses of every two-level example.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

}  // namespace evokit
