#include "evokit/compositions.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace evokit {

namespace {

void enumerate(int remaining, int parts, Composition& prefix, std::vector<Composition>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 1; k <= remaining - (parts - 1); ++k) {
    prefix.push_back(k);
    enumerate(remaining - k, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

const std::vector<Composition>& compositions(int n, int m) {
  if (n < 1 || m < 1 || m > n) {
    throw DimensionMismatch("compositions: need 1 <= m <= n, got n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
  }
  static std::map<std::pair<int, int>, std::vector<Composition>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, m});
  if (inserted) {
    Composition prefix;
    enumerate(n, m, prefix, it->second);
  }
  return it->second;
}

}  // namespace evokit
