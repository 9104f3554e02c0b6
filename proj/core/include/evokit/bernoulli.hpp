#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "evokit/errors.hpp"

namespace evokit {

using Rational = boost::multiprecision::cpp_rational;

/// Largest Bernoulli index kept in the exact table.
inline constexpr int kMaxBernoulliIndex = 32;

/// Bernoulli number beta_k (beta_1 = -1/2 convention), exact.
const Rational& bernoulli_rational(int k);

/// Same, rounded to double at the point of use.
double bernoulli(int k);

}  // namespace evokit
