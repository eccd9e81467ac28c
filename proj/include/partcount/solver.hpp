#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "partcount/counting.hpp"
#include "partcount/instance.hpp"

namespace partcount {

struct ExtractionStep {
  int position = 0;                    // l, 1-based
  int guess = +1;                      // always +1 first
  std::uint64_t restricted_count = 0;  // count observed at the guess
  bool flipped = false;                // true when the guess was reversed
};

struct ExtractionTrace {
  std::vector<ExtractionStep> steps;
  std::optional<SpinConfig> result;
  std::uint64_t total_count = 0;  // n_s of the full instance
};

/// Greedy spin fixing driven by restricted counts: guess S_l = +1, keep it if
/// the restricted count stays positive, otherwise flip (no recount needed by
/// telescoping). Returns no result when the instance has no solution.
ExtractionTrace extract_partition(const Instance& inst, RestrictedMethod backend,
                                  kernels::Isa isa = kernels::active_isa());

}  // namespace partcount
