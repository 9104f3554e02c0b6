#pragma once

#include <random>

#include "evokit/matrix.hpp"
#include "evokit/quadrature.hpp"

namespace evokit::test {

inline Mat random_hermitian(std::mt19937& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = Cx(dist(rng), dist(rng));
  }
  return hermitian_part(a);
}

inline Mat random_matrix(std::mt19937& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = Cx(dist(rng), dist(rng));
  }
  return a;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Least-squares slope of log(err) vs log(x).
inline double fit_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- brute-force Magnus generators by iterated integrals ----
// Independent oracle for the recursion machinery: only cumulative quadrature
// and raw commutators/superoperators.

/// vec(M X - X M) = (I (x) M - M^T (x) I) vec(X), column-major.
inline Mat ad_superoperator(const Mat& m) {
  const Eigen::Index d = m.rows();
  Mat s = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        s(j * d + i, j * d + k) += m(i, k);
        s(j * d + i, k * d + i) -= m(k, j);
      }
    }
  }
  return s;
}

inline Vec vec_of(const Mat& m) {
  Vec v(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) v(idx++) = m(r, c);
  }
  return v;
}

inline Mat unvec(const Vec& v, Eigen::Index d) {
  Mat m(d, d);
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = v(idx++);
  }
  return m;
}

struct MagnusBruteForce {
  TimeOperatorFunction omega2;
  TimeOperatorFunction omega3;
};

inline MagnusBruteForce magnus_brute_force(const TimeOperatorFunction& h) {
  const Eigen::Index d = h.dim();
  const TimeOperatorFunction b = cumulative(h);

  // P(t) = int_0^t [H(s), B(s)] ds; Omega_2 = -(1/2) P.
  const TimeOperatorFunction p =
      cumulative(tf_combine(h, b, [](const Mat& hh, const Mat& bb) { return commutator(hh, bb); }));

  // Omega_3 term [H(t1), [H(t2), H(t3)]]: nested cumulatives.
  const TimeOperatorFunction term_a =
      cumulative(tf_combine(h, p, [](const Mat& hh, const Mat& pp) { return commutator(hh, pp); }));

  // Omega_3 term [H(t3), [H(t2), H(t1)]]: H(t1) sits inside the chain, so the
  // inner double integral is carried as a superoperator.
  std::vector<Mat> super(static_cast<std::size_t>(h.sample_count()));
  for (int i = 0; i < h.sample_count(); ++i) {
    super[static_cast<std::size_t>(i)] =
        ad_superoperator(b.sample(i)) * ad_superoperator(h.sample(i));
  }
  const TimeOperatorFunction q =
      cumulative(TimeOperatorFunction::from_samples(std::move(super), h.t_max()));
  std::vector<Mat> term_b(static_cast<std::size_t>(h.sample_count()));
  for (int i = 0; i < h.sample_count(); ++i) {
    term_b[static_cast<std::size_t>(i)] = unvec(Vec(q.sample(i) * vec_of(h.sample(i))), d);
  }
  const TimeOperatorFunction bsum =
      cumulative(TimeOperatorFunction::from_samples(std::move(term_b), h.t_max()));

  std::vector<Mat> o2(static_cast<std::size_t>(h.sample_count()));
  std::vector<Mat> o3(static_cast<std::size_t>(h.sample_count()));
  for (int i = 0; i < h.sample_count(); ++i) {
    o2[static_cast<std::size_t>(i)] = -0.5 * p.sample(i);
    o3[static_cast<std::size_t>(i)] = (kImag / 6.0) * (term_a.sample(i) + bsum.sample(i));
  }
  return {TimeOperatorFunction::from_samples(std::move(o2), h.t_max()),
          TimeOperatorFunction::from_samples(std::move(o3), h.t_max())};
}

}  // namespace evokit::test
