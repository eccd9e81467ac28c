#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "partcount/errors.hpp"

namespace partcount {

/// Ceiling on the number of values n; keeps exact counts within 64 bits and
/// brute-force enumeration feasible as an oracle.
inline constexpr int kMaxSize = 30;

/// The total B = sum a_j must stay below 2^32.
inline constexpr std::uint64_t kSumLimit = std::uint64_t{1} << 32;

enum class InstanceFormat { kJson, kPlain, kAuto };

/// Parameters derived from the value multiset (and constraint, if present).
struct DerivedParams {
  std::uint64_t sum = 0;      // B
  int delta = 0;              // 1 if B is odd, else 0
  std::uint64_t modulus = 0;  // M = B + delta + 1
  int number_qubits = 0;      // smallest p >= 1 with M <= 2^p
  std::optional<std::uint64_t> cardinality_modulus;  // K = n + |C| + 1
};

/// An immutable problem instance: positive integers a_1..a_n and an optional
/// cardinality-difference constraint C.
class Instance {
 public:
  Instance(std::vector<std::uint64_t> values, std::optional<int> constraint);

  const std::vector<std::uint64_t>& values() const { return values_; }
  std::optional<int> constraint() const { return constraint_; }
  int size() const { return static_cast<int>(values_.size()); }

  /// Copy with the constraint replaced (or cleared).
  Instance with_constraint(std::optional<int> constraint) const {
    return Instance(values_, constraint);
  }

 private:
  std::vector<std::uint64_t> values_;
  std::optional<int> constraint_;
};

/// A +-1 assignment: spins[j] = +1 places a_{j+1} in A_1, -1 in A_2.
struct SpinConfig {
  std::vector<std::int8_t> spins;
};

DerivedParams derive_params(const Instance& inst);

/// sum_j a_j S_j as a signed integer.
std::int64_t signed_sum(const Instance& inst, const SpinConfig& cfg);

/// True iff sum_j a_j S_j = delta and, when constrained, sum_j S_j = C.
/// Throws std::invalid_argument on a length mismatch.
bool verify_partition(const Instance& inst, const SpinConfig& cfg);

/// Parse an instance from JSON ({"a": [...], "constraint": C}) or plain text
/// (one line of integers, optional second line "C=<int>"). kAuto sniffs the
/// first non-space byte. Throws ParseError.
Instance parse_instance(std::string_view text, InstanceFormat format);

}  // namespace partcount
