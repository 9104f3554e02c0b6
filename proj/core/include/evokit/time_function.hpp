#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "evokit/matrix.hpp"

namespace evokit {

/// Scalar time profile with an exact evaluator and an exact antiderivative.
class Waveform {
public:
  static Waveform constant(double value);
  static Waveform cosine(double omega, double amplitude = 1.0, double phase = 0.0);
  static Waveform sine(double omega, double amplitude = 1.0, double phase = 0.0);
  static Waveform gaussian_pulse(double center, double width, double amplitude = 1.0);
  static Waveform piecewise_linear(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  /// Exact integral over [a, b].
  double integral(double a, double b) const;

  enum class Kind { Constant, Cosine, Sine, GaussianPulse, PiecewiseLinear };
  Kind kind() const { return kind_; }

private:
  Waveform() = default;
  Kind kind_ = Kind::Constant;
  double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;  // meaning depends on kind
  std::vector<double> times_, values_;

  double antiderivative(double t) const;
};

/// Matrix-valued function of time on a uniform grid over [0, t_max].
/// Functions built from an evaluator stay refinable; functions built from
/// samples are fixed at their grid resolution.
class TimeOperatorFunction {
public:
  TimeOperatorFunction(std::function<Mat(double)> evaluator, double t_max, int samples,
                       std::optional<double> period = std::nullopt);
  static TimeOperatorFunction from_samples(std::vector<Mat> samples, double t_max,
                                           std::optional<double> period = std::nullopt);

  double t_max() const { return t_max_; }
  int sample_count() const { return static_cast<int>(samples_.size()); }
  double dt() const { return t_max_ / (sample_count() - 1); }
  double grid_time(int i) const { return t_max_ * i / (sample_count() - 1); }
  std::optional<double> period() const { return period_; }
  Eigen::Index dim() const { return samples_.front().rows(); }
  bool refinable() const { return static_cast<bool>(evaluator_); }

  const Mat& sample(int i) const { return samples_[static_cast<std::size_t>(i)]; }
  const std::vector<Mat>& samples() const { return samples_; }

  /// Evaluate anywhere in [0, t_max]: through the evaluator when present,
  /// otherwise by local cubic interpolation of the samples.
  Mat operator()(double t) const;

  /// Same grid span with doubled resolution.
  TimeOperatorFunction refined() const;

private:
  TimeOperatorFunction() = default;
  std::function<Mat(double)> evaluator_;
  std::vector<Mat> samples_;
  double t_max_ = 0.0;
  std::optional<double> period_;
};

bool same_grid(const TimeOperatorFunction& a, const TimeOperatorFunction& b);
void require_same_grid(const TimeOperatorFunction& a, const TimeOperatorFunction& b,
                       const char* where);

/// Pointwise transform; the result is sample-backed.
TimeOperatorFunction tf_map(const TimeOperatorFunction& f,
                            const std::function<Mat(double, const Mat&)>& fn);

/// Pointwise combination of two functions on the same grid.
TimeOperatorFunction tf_combine(const TimeOperatorFunction& a, const TimeOperatorFunction& b,
                                const std::function<Mat(const Mat&, const Mat&)>& fn);

TimeOperatorFunction tf_zero_like(const TimeOperatorFunction& f);

}  // namespace evokit
