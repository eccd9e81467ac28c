#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcount/counting.hpp"
#include "partcount/instance.hpp"

namespace partcount {

struct BenchConfig {
  std::vector<int> n_values;
  std::vector<int> b_values;  // a_j drawn uniformly from [1, 2^b - 1]
  int instances_per_cell = 0;
  std::uint64_t seed = 0;
  CountMethod backend = CountMethod::kDp;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct BenchRecord {
  int n = 0;
  int b = 0;
  int instance_index = 0;
  std::uint64_t n_s = 0;
  bool solvable = false;
  std::int64_t elapsed_ns = 0;
};

struct BenchCellSummary {
  int n = 0;
  int b = 0;
  int instances = 0;
  double fraction_solvable = 0.0;
  std::int64_t median_elapsed_ns = 0;
};

/// Deterministic instance for cell (n, b), record `idx`: stream seed is
/// splitmix64_mix(seed ^ n ^ (b << 16) ^ (idx << 32)), then n SplitMix64
/// draws of 1 + next() % (2^b - 1).
Instance generate_bench_instance(std::uint64_t seed, int n, int b, int idx);

/// Runs every (n, b, idx) cell; records come back sorted by (n, b, idx).
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// CSV with header `n,b,idx,n_s,solvable,elapsed_ns`; solvable as 0/1.
std::string bench_csv(const std::vector<BenchRecord>& records);

std::vector<BenchCellSummary> bench_summaries(const std::vector<BenchRecord>& records);

}  // namespace partcount
