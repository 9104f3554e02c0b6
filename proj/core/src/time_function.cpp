#include "evokit/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace evokit {

namespace {
constexpr int kMinSamples = 5;
}

Waveform Waveform::constant(double value) {
  Waveform w;
  w.kind_ = Kind::Constant;
  w.p0_ = value;
  return w;
}

Waveform Waveform::cosine(double omega, double amplitude, double phase) {
  Waveform w;
  w.kind_ = Kind::Cosine;
  w.p0_ = omega;
  w.p1_ = amplitude;
  w.p2_ = phase;
  return w;
}

Waveform Waveform::sine(double omega, double amplitude, double phase) {
  Waveform w;
  w.kind_ = Kind::Sine;
  w.p0_ = omega;
  w.p1_ = amplitude;
  w.p2_ = phase;
  return w;
}

Waveform Waveform::gaussian_pulse(double center, double width, double amplitude) {
  if (width <= 0.0) throw Error("Waveform: gaussian pulse width must be positive");
  Waveform w;
  w.kind_ = Kind::GaussianPulse;
  w.p0_ = center;
  w.p1_ = width;
  w.p2_ = amplitude;
  return w;
}

Waveform Waveform::piecewise_linear(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw Error("Waveform: piecewise_linear needs matching lists of at least two knots");
  }
  if (!std::is_sorted(times.begin(), times.end())) {
    throw Error("Waveform: piecewise_linear knots must be sorted");
  }
  Waveform w;
  w.kind_ = Kind::PiecewiseLinear;
  w.times_ = std::move(times);
  w.values_ = std::move(values);
  return w;
}

double Waveform::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return p0_;
    case Kind::Cosine:
      return p1_ * std::cos(p0_ * t + p2_);
    case Kind::Sine:
      return p1_ * std::sin(p0_ * t + p2_);
    case Kind::GaussianPulse:
      return p2_ * std::exp(-0.5 * (t - p0_) * (t - p0_) / (p1_ * p1_));
    case Kind::PiecewiseLinear: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t j = static_cast<std::size_t>(it - times_.begin());
      const double u = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
      return values_[j - 1] + u * (values_[j] - values_[j - 1]);
    }
  }
  return 0.0;
}

double Waveform::antiderivative(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return p0_ * t;
    case Kind::Cosine:
      if (p0_ == 0.0) return p1_ * std::cos(p2_) * t;
      return p1_ * std::sin(p0_ * t + p2_) / p0_;
    case Kind::Sine:
      if (p0_ == 0.0) return p1_ * std::sin(p2_) * t;
      return -p1_ * std::cos(p0_ * t + p2_) / p0_;
    case Kind::GaussianPulse:
      return p2_ * p1_ * std::sqrt(std::numbers::pi / 2.0) *
             std::erf((t - p0_) / (std::numbers::sqrt2 * p1_));
    case Kind::PiecewiseLinear: {
      // Integral from the first knot, with constant extension outside.
      if (t <= times_.front()) return values_.front() * (t - times_.front());
      double acc = 0.0;
      for (std::size_t j = 1; j < times_.size(); ++j) {
        const double t0 = times_[j - 1];
        const double t1 = std::min(times_[j], t);
        if (t1 <= t0) break;
        const double slope = (values_[j] - values_[j - 1]) / (times_[j] - t0);
        acc += values_[j - 1] * (t1 - t0) + 0.5 * slope * (t1 - t0) * (t1 - t0);
        if (t <= times_[j]) return acc;
      }
      return acc + values_.back() * (t - times_.back());
    }
  }
  return 0.0;
}

double Waveform::integral(double a, double b) const { return antiderivative(b) - antiderivative(a); }

TimeOperatorFunction::TimeOperatorFunction(std::function<Mat(double)> evaluator, double t_max,
                                           int samples, std::optional<double> period) {
  if (!evaluator) throw QuadratureFailure("TimeOperatorFunction: null evaluator");
  if (t_max <= 0.0) throw QuadratureFailure("TimeOperatorFunction: t_max must be positive");
  if (samples < kMinSamples) samples = kMinSamples;
  while ((samples - 1) % 4 != 0) ++samples;  // panel count divisible by 4
  evaluator_ = std::move(evaluator);
  t_max_ = t_max;
  period_ = period;
  samples_.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    Mat s = evaluator_(t_max_ * i / (samples - 1));
    require_square(s, "TimeOperatorFunction");
    if (!samples_.empty()) require_same_shape(samples_.front(), s, "TimeOperatorFunction");
    samples_.push_back(std::move(s));
  }
}

TimeOperatorFunction TimeOperatorFunction::from_samples(std::vector<Mat> samples, double t_max,
                                                        std::optional<double> period) {
  if (t_max <= 0.0) throw QuadratureFailure("TimeOperatorFunction: t_max must be positive");
  if (samples.size() < kMinSamples || (samples.size() - 1) % 4 != 0) {
    throw QuadratureFailure(
        "TimeOperatorFunction: need sample count >= 5 with panel count divisible by 4");
  }
  for (const Mat& s : samples) {
    require_square(s, "TimeOperatorFunction");
    require_same_shape(samples.front(), s, "TimeOperatorFunction");
  }
  TimeOperatorFunction f;
  f.samples_ = std::move(samples);
  f.t_max_ = t_max;
  f.period_ = period;
  return f;
}

Mat TimeOperatorFunction::operator()(double t) const {
  if (t < -1e-12 || t > t_max_ * (1.0 + 1e-12)) {
    throw QuadratureFailure("TimeOperatorFunction: evaluation outside [0, t_max]");
  }
  if (evaluator_) return evaluator_(t);
  const int m = sample_count();
  const double h = dt();
  const double x = std::clamp(t / h, 0.0, static_cast<double>(m - 1));
  const int i = std::clamp(static_cast<int>(std::floor(x)), 1, m - 3);
  const double u = x - i;
  // Cubic through samples i-1 .. i+2.
  const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return w0 * samples_[static_cast<std::size_t>(i - 1)] + w1 * samples_[static_cast<std::size_t>(i)] +
         w2 * samples_[static_cast<std::size_t>(i + 1)] +
         w3 * samples_[static_cast<std::size_t>(i + 2)];
}

TimeOperatorFunction TimeOperatorFunction::refined() const {
  const int fine = 2 * (sample_count() - 1) + 1;
  if (evaluator_) return TimeOperatorFunction(evaluator_, t_max_, fine, period_);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(fine));
  const double h = t_max_ / (fine - 1);
  for (int i = 0; i < fine; ++i) out.push_back((*this)(i * h));
  return from_samples(std::move(out), t_max_, period_);
}

bool same_grid(const TimeOperatorFunction& a, const TimeOperatorFunction& b) {
  return a.sample_count() == b.sample_count() &&
         std::abs(a.t_max() - b.t_max()) <= 1e-12 * std::max(1.0, a.t_max());
}

void require_same_grid(const TimeOperatorFunction& a, const TimeOperatorFunction& b,
                       const char* where) {
  if (!same_grid(a, b)) {
    throw QuadratureFailure(std::string(where) + ": operands live on different grids");
  }
}

TimeOperatorFunction tf_map(const TimeOperatorFunction& f,
                            const std::function<Mat(double, const Mat&)>& fn) {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(f.sample_count()));
  for (int i = 0; i < f.sample_count(); ++i) out.push_back(fn(f.grid_time(i), f.sample(i)));
  return TimeOperatorFunction::from_samples(std::move(out), f.t_max(), f.period());
}

TimeOperatorFunction tf_combine(const TimeOperatorFunction& a, const TimeOperatorFunction& b,
                                const std::function<Mat(const Mat&, const Mat&)>& fn) {
  require_same_grid(a, b, "tf_combine");
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(a.sample_count()));
  for (int i = 0; i < a.sample_count(); ++i) out.push_back(fn(a.sample(i), b.sample(i)));
  return TimeOperatorFunction::from_samples(std::move(out), a.t_max(),
                                            a.period() ? a.period() : b.period());
}

TimeOperatorFunction tf_zero_like(const TimeOperatorFunction& f) {
  std::vector<Mat> out(static_cast<std::size_t>(f.sample_count()),
                       Mat::Zero(f.dim(), f.dim()));
  return TimeOperatorFunction::from_samples(std::move(out), f.t_max(), f.period());
}

}  // namespace evokit
