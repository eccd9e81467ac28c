#pragma once

#include <cstdint>
#include <vector>

#include "partcount/instance.hpp"
#include "partcount/kernels.hpp"

namespace partcount {

enum class CountMethod {
  kBruteforce,
  kFormula,
  kDp,
  kQuantumAmplitude,
  kQuantumPhysical,
  kSpectral,
};

const char* method_name(CountMethod method);

/// Estimates with |estimate - nearest integer| at or above this raise
/// PrecisionError instead of silently rounding.
inline constexpr double kResidualTolerance = 1e-6;

/// Default ceiling on dynamic-programming table memory (bytes).
inline constexpr std::size_t kDpMemoryBudget = std::size_t{1} << 29;

struct CountResult {
  std::uint64_t count = 0;
  CountMethod method = CountMethod::kBruteforce;
  double residual = 0.0;  // 0 for exact methods
};

/// Fixed leading spins S_1..S_l; empty means the unrestricted count.
using PrefixAssignment = std::vector<std::int8_t>;

enum class RestrictedMethod { kFormula, kDp, kBruteforce };

/// Exact enumeration over all 2^n spin configurations (gray-code walk).
CountResult count_bruteforce(const Instance& inst);

/// Cosine-product trace formula over m = 0..M-1; unconstrained instances.
CountResult count_formula(const Instance& inst,
                          kernels::Isa isa = kernels::active_isa());

/// Double (m, k) trace sum for instances with a cardinality constraint.
CountResult count_formula_constrained(const Instance& inst,
                                      kernels::Isa isa = kernels::active_isa());

/// Dynamic programming over achievable signed sums (and cardinality, when
/// constrained). Throws BudgetError if no table fits `memory_budget`.
CountResult count_dp(const Instance& inst,
                     std::size_t memory_budget = kDpMemoryBudget);

/// Number of completions S_{l+1}..S_n solving the instance with the given
/// prefix fixed. An empty prefix reduces to the full count; a full-length
/// prefix yields 1 or 0.
CountResult count_restricted(const Instance& inst,
                             const PrefixAssignment& prefix,
                             RestrictedMethod method,
                             kernels::Isa isa = kernels::active_isa());

}  // namespace partcount
