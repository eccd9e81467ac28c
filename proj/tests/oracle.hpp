#pragma once

// Test-only oracle: plain enumeration over all sign vectors, written
// independently of the library code it checks.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

namespace oracle {

struct Problem {
  std::vector<std::uint64_t> values;
  std::optional<int> constraint;
};

inline std::int64_t delta_of(const std::vector<std::uint64_t>& values) {
  std::uint64_t b = 0;
  for (auto v : values) b += v;
  return static_cast<std::int64_t>(b & 1);
}

// Count completions of `fixed` (entries +-1) over the remaining positions.
inline std::uint64_t count_restricted(const Problem& p,
                                      const std::vector<int>& fixed) {
  const int n = static_cast<int>(p.values.size());
  const int l = static_cast<int>(fixed.size());
  const std::int64_t delta = delta_of(p.values);
  const std::uint64_t total = std::uint64_t{1} << (n - l);
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::int64_t sum = 0;
    std::int64_t card = 0;
    for (int j = 0; j < n; ++j) {
      int spin;
      if (j < l) {
        spin = fixed[j];
      } else {
        spin = (mask >> (j - l)) & 1 ? -1 : 1;
      }
      sum += spin * static_cast<std::int64_t>(p.values[j]);
      card += spin;
    }
    if (sum != delta) continue;
    if (p.constraint && card != *p.constraint) continue;
    ++hits;
  }
  return hits;
}

inline std::uint64_t count(const Problem& p) { return count_restricted(p, {}); }

}  // namespace oracle
