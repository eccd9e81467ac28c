#include "partcount/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "partcount/methods.hpp"
#include "partcount/rng.hpp"

namespace partcount {

void BenchConfig::validate() const {
  if (n_values.empty() || b_values.empty()) {
    throw std::invalid_argument("bench needs at least one n and one b");
  }
  if (instances_per_cell < 1) {
    throw std::invalid_argument("instances_per_cell must be positive");
  }
  for (int n : n_values) {
    if (n < 1 || n > kMaxSize) {
      throw std::invalid_argument("bench n values must be in [1, 30]");
    }
  }
  for (int b : b_values) {
    if (b < 1 || b > 32) {
      throw std::invalid_argument("bench b values must be in [1, 32]");
    }
  }
  for (int n : n_values) {
    for (int b : b_values) {
      const long double max_sum =
          static_cast<long double>(n) * ((1ull << b) - 1ull);
      if (max_sum >= static_cast<long double>(kSumLimit)) {
        throw std::invalid_argument("n * (2^b - 1) must stay below 2^32");
      }
    }
  }
}

Instance generate_bench_instance(std::uint64_t seed, int n, int b, int idx) {
  const std::uint64_t stream =
      splitmix64_mix(seed ^ static_cast<std::uint64_t>(n) ^
                     (static_cast<std::uint64_t>(b) << 16) ^
                     (static_cast<std::uint64_t>(idx) << 32));
  SplitMix64 rng(stream);
  const std::uint64_t upper = (std::uint64_t{1} << b) - 1;
  std::vector<std::uint64_t> values(n);
  for (auto& v : values) v = rng.next_in(upper);
  return Instance(std::move(values), std::nullopt);
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  std::vector<BenchRecord> records;
  records.reserve(config.n_values.size() * config.b_values.size() *
                  config.instances_per_cell);
  for (int n : config.n_values) {
    for (int b : config.b_values) {
      for (int idx = 0; idx < config.instances_per_cell; ++idx) {
        const Instance inst = generate_bench_instance(config.seed, n, b, idx);
        const auto start = std::chrono::steady_clock::now();
        const CountResult result = count_by_method(inst, config.backend);
        const auto stop = std::chrono::steady_clock::now();
        BenchRecord rec;
        rec.n = n;
        rec.b = b;
        rec.instance_index = idx;
        rec.n_s = result.count;
        rec.solvable = result.count > 0;
        rec.elapsed_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
                .count();
        records.push_back(rec);
      }
    }
  }
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "n,b,idx,n_s,solvable,elapsed_ns\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.b << ',' << r.instance_index << ',' << r.n_s << ','
        << (r.solvable ? 1 : 0) << ',' << r.elapsed_ns << "\n";
  }
  return out.str();
}

std::vector<BenchCellSummary> bench_summaries(const std::vector<BenchRecord>& records) {
  std::vector<BenchCellSummary> cells;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    std::vector<std::int64_t> elapsed;
    int solvable = 0;
    while (j < records.size() && records[j].n == records[i].n &&
           records[j].b == records[i].b) {
      elapsed.push_back(records[j].elapsed_ns);
      solvable += records[j].solvable ? 1 : 0;
      ++j;
    }
    std::sort(elapsed.begin(), elapsed.end());
    BenchCellSummary cell;
    cell.n = records[i].n;
    cell.b = records[i].b;
    cell.instances = static_cast<int>(j - i);
    cell.fraction_solvable =
        static_cast<double>(solvable) / static_cast<double>(cell.instances);
    cell.median_elapsed_ns = elapsed[elapsed.size() / 2];
    cells.push_back(cell);
    i = j;
  }
  return cells;
}

}  // namespace partcount
