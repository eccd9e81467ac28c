#include "partcount/solver.hpp"

#include <stdexcept>

namespace partcount {

ExtractionTrace extract_partition(const Instance& inst, RestrictedMethod backend,
                                  kernels::Isa isa) {
  ExtractionTrace trace;
  const CountResult full = count_restricted(inst, {}, backend, isa);
  trace.total_count = full.count;
  if (full.count == 0) return trace;

  const int n = inst.size();
  PrefixAssignment prefix;
  prefix.reserve(n);
  for (int l = 1; l <= n; ++l) {
    prefix.push_back(+1);
    const CountResult guess = count_restricted(inst, prefix, backend, isa);
    const bool flipped = guess.count == 0;
    // If the kept prefix had a positive count and the +1 extension has none,
    // the -1 extension must have the full remainder; no recount needed.
    if (flipped) prefix.back() = -1;
    trace.steps.push_back({l, +1, guess.count, flipped});
  }

  SpinConfig cfg{prefix};
  if (!verify_partition(inst, cfg)) {
    throw std::logic_error("extraction produced a non-solution");
  }
  trace.result = std::move(cfg);
  return trace;
}

}  // namespace partcount
