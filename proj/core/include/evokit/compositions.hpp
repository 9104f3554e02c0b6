#pragma once

#include <vector>

#include "evokit/errors.hpp"

namespace evokit {

using Composition = std::vector<int>;

/// All ordered tuples of m positive integers summing to n; there are
/// binom(n-1, m-1) of them. Cached per (n, m), safe for concurrent use.
const std::vector<Composition>& compositions(int n, int m);

}  // namespace evokit
