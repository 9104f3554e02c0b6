#include "evokit/bernoulli.hpp"

#include <string>
#include <vector>

namespace evokit {

namespace {

using Int = boost::multiprecision::cpp_int;

Int binomial(int n, int k) {
  Int b = 1;
  for (int j = 0; j < k; ++j) {
    b *= n - j;
    b /= j + 1;
  }
  return b;
}

// beta_0 = 1 and sum_{j=0}^{k} binom(k+1, j) beta_j = 0 for k >= 1.
std::vector<Rational> build_table() {
  std::vector<Rational> beta(kMaxBernoulliIndex + 1);
  beta[0] = 1;
  for (int k = 1; k <= kMaxBernoulliIndex; ++k) {
    Rational acc = 0;
    for (int j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * beta[j];
    beta[k] = -acc / Rational(k + 1);
  }
  return beta;
}

}  // namespace

const Rational& bernoulli_rational(int k) {
  static const std::vector<Rational> table = build_table();
  if (k < 0 || k > kMaxBernoulliIndex) {
    throw OrderOverflow("bernoulli: index " + std::to_string(k) + " outside table [0, " +
                        std::to_string(kMaxBernoulliIndex) + "]");
  }
  return table[static_cast<std::size_t>(k)];
}

double bernoulli(int k) { return static_cast<double>(bernoulli_rational(k)); }

}  // namespace evokit
