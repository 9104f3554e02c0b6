#include "evokit/adjoint_series.hpp"

#include <functional>
#include <string>

#include "evokit/bernoulli.hpp"
#include "evokit/compositions.hpp"

namespace evokit {

namespace {

void check_sign(int sign, const char* where) {
  if (sign != 1 && sign != -1) {
    throw DimensionMismatch(std::string(where) + ": sign must be +1 or -1");
  }
}

void check_lists(std::span<const Mat> x, std::span<const Mat> y, const char* where) {
  if (x.empty() || x.size() != y.size()) {
    throw DimensionMismatch(std::string(where) + ": the two lists must be non-empty and equal");
  }
}

// sum_{m=1}^{n} coeff(m) * sum over compositions k_1+...+k_m = n with every
// part <= max_part of ad_{Y_{k_1}} ... ad_{Y_{k_m}} X.
Mat weighted_ad_sum(const Mat& x, std::span<const Mat> y, int n,
                    const std::function<Cx(int)>& coeff, int max_part) {
  Mat acc = Mat::Zero(x.rows(), x.cols());
  for (int m = 1; m <= n; ++m) {
    const Cx c = coeff(m);
    if (c == Cx(0.0, 0.0)) continue;
    Mat level = Mat::Zero(x.rows(), x.cols());
    bool any = false;
    for (const Composition& parts : compositions(n, m)) {
      bool admissible = true;
      for (int k : parts) {
        if (k > max_part) {
          admissible = false;
          break;
        }
      }
      if (!admissible) continue;
      Mat chain = x;
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        chain = commutator(y[static_cast<std::size_t>(*it - 1)], chain);
      }
      level += chain;
      any = true;
    }
    if (any) acc += c * level;
  }
  return acc;
}

Cx ipow(int sign, int m) {
  // (sign * i)^m
  Cx p(1.0, 0.0);
  const Cx base(0.0, static_cast<double>(sign));
  for (int j = 0; j < m; ++j) p *= base;
  return p;
}

double factorial(int m) {
  double f = 1.0;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

}  // namespace

Mat script_G(const Mat& x, std::span<const Mat> z) {
  if (z.empty()) throw DimensionMismatch("script_G: need at least one Z coefficient");
  const int n = static_cast<int>(z.size());
  return weighted_ad_sum(x, z, n, [](int m) { return ipow(1, m) / factorial(m); }, n);
}

Mat big_G(std::span<const Mat> h, std::span<const Mat> z) {
  const int n = static_cast<int>(z.size()) + 1;
  if (n < 2) throw DimensionMismatch("big_G: defined for order n >= 2");
  if (h.size() != static_cast<std::size_t>(n) + 1) {
    throw DimensionMismatch("big_G: need H_0..H_n, got " + std::to_string(h.size()) +
                            " operators for order " + std::to_string(n));
  }
  // m = 0 term: scriptG_n(H_0; ...) restricted to parts <= n-1, which drops
  // exactly the cancelled single-chain ad_{Z_n} H_0.
  Mat out = weighted_ad_sum(h[0], z, n, [](int m) { return ipow(1, m) / factorial(m); }, n - 1);
  for (int m = 1; m <= n - 1; ++m) {
    out += script_G(h[static_cast<std::size_t>(m)], z.first(static_cast<std::size_t>(n - m)));
  }
  out += h[static_cast<std::size_t>(n)];
  return out;
}

Mat script_R(int sign, const Mat& x, std::span<const Mat> y) {
  check_sign(sign, "script_R");
  if (y.empty()) throw DimensionMismatch("script_R: need at least one Y coefficient");
  const int n = static_cast<int>(y.size());
  return weighted_ad_sum(x, y, n, [sign](int m) { return ipow(sign, m) / factorial(m + 1); }, n);
}

Mat big_R(int sign, std::span<const Mat> x, std::span<const Mat> y) {
  check_sign(sign, "big_R");
  check_lists(x, y, "big_R");
  const int n = static_cast<int>(x.size()) + 1;
  Mat out = Mat::Zero(x[0].rows(), x[0].cols());
  for (int m = 1; m <= n - 1; ++m) {
    out += script_R(sign, x[static_cast<std::size_t>(m - 1)],
                    y.first(static_cast<std::size_t>(n - m)));
  }
  return static_cast<double>(sign) * out;
}

Mat script_B(int sign, const Mat& x, std::span<const Mat> y) {
  check_sign(sign, "script_B");
  if (y.empty()) throw DimensionMismatch("script_B: need at least one Y coefficient");
  const int n = static_cast<int>(y.size());
  return weighted_ad_sum(
      x, y, n,
      [sign](int m) {
        return -static_cast<double>(sign) * ipow(sign, m) * bernoulli(m) / factorial(m);
      },
      n);
}

Mat big_B(int sign, std::span<const Mat> x, std::span<const Mat> y) {
  check_sign(sign, "big_B");
  check_lists(x, y, "big_B");
  const int n = static_cast<int>(x.size()) + 1;
  Mat out = Mat::Zero(x[0].rows(), x[0].cols());
  for (int m = 1; m <= n - 1; ++m) {
    out += script_B(sign, x[static_cast<std::size_t>(m - 1)],
                    y.first(static_cast<std::size_t>(n - m)));
  }
  return out;
}

Mat big_B_mixed(std::span<const Mat> x, std::span<const Mat> xi, std::span<const Mat> z) {
  check_lists(x, xi, "big_B_mixed");
  check_lists(x, z, "big_B_mixed");
  return big_B(-1, x, z) + big_B(+1, xi, z);
}

}  // namespace evokit
