#include "evokit/series.hpp"

#include <string>

namespace evokit {

Mat eval_series(const MatrixSeries& s, double lambda) {
  if (s.empty()) throw DimensionMismatch("eval_series: empty series");
  Mat acc = Mat::Zero(s.at(1).rows(), s.at(1).cols());
  double pw = 1.0;
  for (int n = 1; n <= s.order(); ++n) {
    pw *= lambda;
    acc += pw * s.at(n);
  }
  return acc;
}

TimeOperatorFunction eval_series(const FunctionSeries& s, double lambda) {
  require_shared_grid(s, "eval_series");
  const TimeOperatorFunction& head = s.at(1);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(head.sample_count()));
  for (int i = 0; i < head.sample_count(); ++i) {
    Mat acc = Mat::Zero(head.dim(), head.dim());
    double pw = 1.0;
    for (int n = 1; n <= s.order(); ++n) {
      pw *= lambda;
      acc += pw * s.at(n).sample(i);
    }
    out.push_back(std::move(acc));
  }
  return TimeOperatorFunction::from_samples(std::move(out), head.t_max(), head.period());
}

void require_shared_grid(const FunctionSeries& s, const char* where) {
  if (s.empty()) throw DimensionMismatch(std::string(where) + ": empty series");
  for (int n = 2; n <= s.order(); ++n) require_same_grid(s.at(1), s.at(n), where);
}

FunctionSeries c_from_frakc(const FunctionSeries& frak_c, const QuadratureConfig& cfg) {
  (void)cfg;
  require_shared_grid(frak_c, "c_from_frakc");
  const TimeOperatorFunction& head = frak_c.at(1);
  const int grid = head.sample_count();

  FunctionSeries c;
  std::vector<TimeOperatorFunction> running_integrals;  // IC_k = int_0^t C_k
  c.append(head);
  running_integrals.push_back(cumulative(head));

  for (int n = 2; n <= frak_c.order(); ++n) {
    std::vector<Mat> out;
    out.reserve(static_cast<std::size_t>(grid));
    std::vector<Mat> xs(static_cast<std::size_t>(n - 1)), ys(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < grid; ++i) {
      for (int k = 1; k <= n - 1; ++k) {
        xs[static_cast<std::size_t>(k - 1)] = frak_c.at(k).sample(i);
        ys[static_cast<std::size_t>(k - 1)] = running_integrals[static_cast<std::size_t>(k - 1)].sample(i);
      }
      out.push_back(big_B(-1, xs, ys) + frak_c.at(n).sample(i));
    }
    c.append(TimeOperatorFunction::from_samples(std::move(out), head.t_max(), head.period()));
    running_integrals.push_back(cumulative(c.at(n)));
  }
  return c;
}

FunctionSeries frakc_from_c(const FunctionSeries& c, const QuadratureConfig& cfg) {
  (void)cfg;
  require_shared_grid(c, "frakc_from_c");
  const TimeOperatorFunction& head = c.at(1);
  const int grid = head.sample_count();

  std::vector<TimeOperatorFunction> running_integrals;
  for (int n = 1; n <= c.order(); ++n) running_integrals.push_back(cumulative(c.at(n)));

  FunctionSeries frak_c;
  frak_c.append(head);
  for (int n = 2; n <= c.order(); ++n) {
    std::vector<Mat> out;
    out.reserve(static_cast<std::size_t>(grid));
    std::vector<Mat> xs(static_cast<std::size_t>(n - 1)), ys(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < grid; ++i) {
      for (int k = 1; k <= n - 1; ++k) {
        xs[static_cast<std::size_t>(k - 1)] = c.at(k).sample(i);
        ys[static_cast<std::size_t>(k - 1)] = running_integrals[static_cast<std::size_t>(k - 1)].sample(i);
      }
      out.push_back(c.at(n).sample(i) - big_R(-1, xs, ys));
    }
    frak_c.append(TimeOperatorFunction::from_samples(std::move(out), head.t_max(), head.period()));
  }
  return frak_c;
}

}  // namespace evokit
