#include "evokit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace evokit {

namespace {

// Fourth-order cumulative integral of uniformly sampled data: each interval
// is integrated on the cubic through its four nearest samples.
std::vector<Mat> cumulative_samples(const std::vector<Mat>& y, double h) {
  const std::size_t m = y.size();
  std::vector<Mat> f(m, Mat::Zero(y.front().rows(), y.front().cols()));
  f[0] = Mat::Zero(y.front().rows(), y.front().cols());
  f[1] = f[0] + (h / 24.0) * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
  for (std::size_t i = 1; i + 2 < m; ++i) {
    f[i + 1] = f[i] + (h / 24.0) * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2]);
  }
  f[m - 1] = f[m - 2] + (h / 24.0) * (y[m - 4] - 5.0 * y[m - 3] + 19.0 * y[m - 2] + 9.0 * y[m - 1]);
  return f;
}

Mat integral_on_grid(const TimeOperatorFunction& f, double a, double b) {
  const TimeOperatorFunction big_f = cumulative(f);
  return big_f(b) - big_f(a);
}

Mat integral_downsampled(const TimeOperatorFunction& f, double a, double b) {
  std::vector<Mat> coarse;
  coarse.reserve(static_cast<std::size_t>(f.sample_count() / 2) + 1);
  for (int i = 0; i < f.sample_count(); i += 2) coarse.push_back(f.sample(i));
  const std::vector<Mat> big_f = cumulative_samples(coarse, 2.0 * f.dt());
  // Cubic interpolation of the coarse cumulative at a and b.
  auto eval = [&](double t) {
    const int m = static_cast<int>(coarse.size());
    const double h = 2.0 * f.dt();
    const double x = std::clamp(t / h, 0.0, static_cast<double>(m - 1));
    const int i = std::clamp(static_cast<int>(std::floor(x)), 1, m - 3);
    const double u = x - i;
    const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return Mat(w0 * big_f[static_cast<std::size_t>(i - 1)] +
               w1 * big_f[static_cast<std::size_t>(i)] +
               w2 * big_f[static_cast<std::size_t>(i + 1)] +
               w3 * big_f[static_cast<std::size_t>(i + 2)]);
  };
  return eval(b) - eval(a);
}

void check_range(const TimeOperatorFunction& f, double a, double b, const char* where) {
  if (a < -1e-12 || b > f.t_max() * (1.0 + 1e-12) || a > b) {
    throw QuadratureFailure(std::string(where) + ": interval [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] outside [0, " + std::to_string(f.t_max()) + "]");
  }
}

}  // namespace

Mat integrate(const TimeOperatorFunction& f, double a, double b, const QuadratureConfig& cfg) {
  check_range(f, a, b, "integrate");
  if (f.refinable()) {
    TimeOperatorFunction cur = f;
    Mat value = integral_on_grid(cur, a, b);
    for (int r = 0; r < cfg.max_refinements; ++r) {
      TimeOperatorFunction fine = cur.refined();
      Mat next = integral_on_grid(fine, a, b);
      const double delta = (next - value).norm();
      if (delta <= cfg.quad_tol * std::max(1.0, next.norm())) return next;
      cur = std::move(fine);
      value = std::move(next);
    }
    throw QuadratureFailure("integrate: refinement did not reach quad_tol");
  }
  const Mat value = integral_on_grid(f, a, b);
  const Mat coarse = integral_downsampled(f, a, b);
  // Fourth-order methods: the step-doubled difference overestimates the fine
  // error by a factor of about 15.
  const double est = (value - coarse).norm() / 15.0;
  if (est > cfg.quad_tol * std::max(1.0, value.norm())) {
    throw QuadratureFailure("integrate: grid too coarse, error estimate " + std::to_string(est));
  }
  return value;
}

TimeOperatorFunction cumulative(const TimeOperatorFunction& f) {
  return TimeOperatorFunction::from_samples(cumulative_samples(f.samples(), f.dt()), f.t_max());
}

Mat window_average(const TimeOperatorFunction& f, double tau, const QuadratureConfig& cfg) {
  if (tau <= 0.0) throw QuadratureFailure("window_average: tau must be positive");
  return integrate(f, 0.0, tau, cfg) / tau;
}

Mat tapered_average(const TimeOperatorFunction& f, double window) {
  const double h = f.dt();
  const int iw = static_cast<int>(std::llround(window / h));
  if (iw < 8 || iw >= f.sample_count()) {
    throw QuadratureFailure("tapered_average: window does not fit the grid");
  }
  const double t_end = iw * h;
  std::vector<Mat> weighted;
  weighted.reserve(static_cast<std::size_t>(iw) + 1);
  for (int i = 0; i <= iw; ++i) {
    const double s = std::sin(std::numbers::pi * i / iw);
    weighted.push_back(std::pow(s, 8) * f.sample(i));
  }
  const std::vector<Mat> cum = cumulative_samples(weighted, h);
  // Oscillatory components decay like (frequency * window)^{-8} under the
  // sin^8 taper; the weight integrates to 35/128 over the unit interval.
  return cum.back() / ((35.0 / 128.0) * t_end);
}

LadderResult window_average_infinite_detail(const TimeOperatorFunction& f, int rungs,
                                            double avg_tol) {
  if (rungs < 3) throw AverageNonConvergent("infinite average: need at least 3 ladder rungs");
  LadderResult res;
  std::vector<Mat> averages;
  for (int j = rungs - 1; j >= 0; --j) {
    const double window = f.t_max() / std::pow(2.0, j);
    res.windows.push_back(window);
    averages.push_back(tapered_average(f, window));
  }
  // Richardson in 1/window on each doubling pair.
  std::vector<Mat> extrap;
  for (std::size_t j = 1; j < averages.size(); ++j) {
    extrap.push_back(2.0 * averages[j] - averages[j - 1]);
  }
  const Mat& last = extrap.back();
  res.last_delta = (last - extrap[extrap.size() - 2]).norm();
  res.converged = res.last_delta <= avg_tol * std::max(1.0, last.norm());
  res.value = last;
  return res;
}

Mat window_average_infinite(const TimeOperatorFunction& f, int rungs, double avg_tol) {
  LadderResult res = window_average_infinite_detail(f, rungs, avg_tol);
  if (!res.converged) {
    throw AverageNonConvergent("infinite average: ladder changed by " +
                               std::to_string(res.last_delta) + " on the final doubling");
  }
  return res.value;
}

TimeOperatorFunction derivative(const TimeOperatorFunction& f, double rel_tol) {
  const int m = f.sample_count();
  if (m < 9) throw GridTooCoarse("derivative: need at least 9 samples");
  const double h = f.dt();
  const auto& y = f.samples();
  auto at = [&](int i) -> const Mat& { return y[static_cast<std::size_t>(i)]; };

  std::vector<Mat> coarse_est(static_cast<std::size_t>(m)), fine_est(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (i <= 1) {  // forward pair
      fine_est[i] = (-3.0 * at(i) + 4.0 * at(i + 1) - at(i + 2)) / (2.0 * h);
      coarse_est[i] = (-3.0 * at(i) + 4.0 * at(i + 2) - at(i + 4)) / (4.0 * h);
    } else if (i >= m - 2) {  // backward pair
      fine_est[i] = (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * h);
      coarse_est[i] = (3.0 * at(i) - 4.0 * at(i - 2) + at(i - 4)) / (4.0 * h);
    } else {  // centered pair
      fine_est[i] = (at(i + 1) - at(i - 1)) / (2.0 * h);
      coarse_est[i] = (at(i + 2) - at(i - 2)) / (4.0 * h);
    }
  }

  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(m));
  double disagreement = 0.0;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) {
    disagreement = std::max(disagreement, (fine_est[i] - coarse_est[i]).norm());
    Mat d = (4.0 * fine_est[i] - coarse_est[i]) / 3.0;
    scale = std::max(scale, d.norm());
    out.push_back(std::move(d));
  }
  if (disagreement > rel_tol * scale) {
    throw GridTooCoarse("derivative: step-doubled estimates disagree by " +
                        std::to_string(disagreement / scale) + " relative");
  }
  return TimeOperatorFunction::from_samples(std::move(out), f.t_max(), f.period());
}

}  // namespace evokit
