#include "partcount/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace partcount {

namespace {

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

CountResult round_with_residual(double est_re, double est_im, CountMethod method) {
  long long rounded = std::llround(est_re);
  if (rounded < 0) rounded = 0;
  const double residual =
      std::max(std::abs(est_re - static_cast<double>(rounded)), std::abs(est_im));
  if (!(residual < kResidualTolerance)) {
    throw PrecisionError("count estimate " + std::to_string(est_re) +
                         " has residual " + std::to_string(residual));
  }
  return {static_cast<std::uint64_t>(rounded), method, residual};
}

// Count sign vectors over `values` with signed sum == target (and, when
// given, cardinality sum == target_card), by a gray-code walk over all 2^n.
std::uint64_t brute_core(std::span<const std::uint64_t> values,
                         std::int64_t target,
                         std::optional<std::int64_t> target_card) {
  const int n = static_cast<int>(values.size());
  std::int64_t cur = 0;
  for (auto v : values) cur += static_cast<std::int64_t>(v);
  std::int64_t card = n;
  std::uint64_t hits = 0;
  auto check = [&] {
    if (cur == target && (!target_card || card == *target_card)) ++hits;
  };
  check();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const std::uint64_t next_gray = i ^ (i >> 1);
    const std::uint64_t flipped = next_gray ^ gray;
    const int j = std::countr_zero(flipped);
    if (next_gray & flipped) {  // bit now set: S_j flips +1 -> -1
      cur -= 2 * static_cast<std::int64_t>(values[j]);
      card -= 2;
    } else {
      cur += 2 * static_cast<std::int64_t>(values[j]);
      card += 2;
    }
    gray = next_gray;
    check();
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Dynamic programming
// ---------------------------------------------------------------------------

// Dense table indexed by signed sum + bsum in [0, 2*bsum]; cardinality gets
// its own axis when constrained.
std::uint64_t dp_dense(std::span<const std::uint64_t> values, std::int64_t target,
                       std::optional<std::int64_t> target_card) {
  const int n = static_cast<int>(values.size());
  std::int64_t bsum = 0;
  for (auto v : values) bsum += static_cast<std::int64_t>(v);
  const std::size_t width = static_cast<std::size_t>(2 * bsum + 1);
  const std::size_t planes = target_card ? static_cast<std::size_t>(n) + 1 : 1;

  std::vector<std::uint64_t> cur(width * planes, 0);
  std::vector<std::uint64_t> next(width * planes, 0);
  // Empty prefix: sum 0, zero spins at +1.
  cur[static_cast<std::size_t>(bsum)] = 1;

  for (int i = 0; i < n; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(values[i]);
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t c = 0; c < planes; ++c) {
      const std::uint64_t* src_same = cur.data() + c * width;
      const std::uint64_t* src_up = c > 0 ? cur.data() + (c - 1) * width : nullptr;
      std::uint64_t* dst = next.data() + c * width;
      for (std::size_t u = 0; u < width; ++u) {
        std::uint64_t acc = 0;
        // S_i = +1 raises the +1 cardinality; comes from plane c-1 (or the
        // same plane when unconstrained).
        const std::uint64_t* plus_src = target_card ? src_up : src_same;
        if (plus_src && u >= static_cast<std::size_t>(a)) {
          acc += plus_src[u - static_cast<std::size_t>(a)];
        }
        if (u + static_cast<std::size_t>(a) < width) {
          acc += src_same[u + static_cast<std::size_t>(a)];
        }
        dst[u] = acc;
      }
    }
    std::swap(cur, next);
  }

  const std::size_t target_index = static_cast<std::size_t>(target + bsum);
  if (target_card) {
    const std::size_t k = static_cast<std::size_t>((n + *target_card) / 2);
    return cur[k * width + target_index];
  }
  return cur[target_index];
}

// Sparse table over achievable (sum[, cardinality]) keys, with suffix-sum
// reachability pruning.
std::uint64_t dp_sparse(std::span<const std::uint64_t> values, std::int64_t target,
                        std::optional<std::int64_t> target_card,
                        std::size_t memory_budget) {
  struct Entry {
    std::int64_t sum;
    std::int64_t card;
    std::uint64_t count;
  };
  const int n = static_cast<int>(values.size());
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + static_cast<std::int64_t>(values[i]);
  }

  std::vector<Entry> cur{{0, 0, 1}};
  std::vector<Entry> next;
  for (int i = 0; i < n; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(values[i]);
    const std::int64_t rest = suffix[i + 1];
    const int items_left = n - i - 1;
    auto reachable = [&](std::int64_t s, std::int64_t c) {
      if (std::abs(target - s) > rest) return false;
      if (target_card && std::abs(*target_card - c) > items_left) return false;
      return true;
    };
    next.clear();
    next.reserve(2 * cur.size());
    // Merge the two shifted copies of `cur`; both are sorted by (sum, card).
    std::size_t ip = 0, im = 0;
    auto key_plus = [&](std::size_t idx) {
      return std::pair<std::int64_t, std::int64_t>(cur[idx].sum + a,
                                                   cur[idx].card + 1);
    };
    auto key_minus = [&](std::size_t idx) {
      return std::pair<std::int64_t, std::int64_t>(cur[idx].sum - a,
                                                   cur[idx].card - 1);
    };
    auto push = [&](std::int64_t s, std::int64_t c, std::uint64_t cnt) {
      if (!reachable(s, c)) return;
      if (!next.empty() && next.back().sum == s && next.back().card == c) {
        next.back().count += cnt;
      } else {
        next.push_back({s, c, cnt});
      }
    };
    while (ip < cur.size() || im < cur.size()) {
      bool take_minus;
      if (im >= cur.size()) {
        take_minus = false;
      } else if (ip >= cur.size()) {
        take_minus = true;
      } else {
        take_minus = key_minus(im) <= key_plus(ip);
      }
      if (take_minus) {
        push(cur[im].sum - a, cur[im].card - 1, cur[im].count);
        ++im;
      } else {
        push(cur[ip].sum + a, cur[ip].card + 1, cur[ip].count);
        ++ip;
      }
    }
    cur.swap(next);
    if (cur.size() * sizeof(Entry) > memory_budget) {
      throw BudgetError("sparse DP table exceeds the memory budget");
    }
    if (cur.empty()) return 0;
  }
  std::uint64_t hits = 0;
  for (const auto& e : cur) {
    if (e.sum == target && (!target_card || e.card == *target_card)) {
      hits += e.count;
    }
  }
  return hits;
}

// Ceiling under which the dense table is preferred.
constexpr std::size_t kDenseTableCap = std::size_t{1} << 26;  // 64 MiB

std::uint64_t dp_core(std::span<const std::uint64_t> values, std::int64_t target,
                      std::optional<std::int64_t> target_card,
                      std::size_t memory_budget) {
  const int n = static_cast<int>(values.size());
  std::int64_t bsum = 0;
  for (auto v : values) bsum += static_cast<std::int64_t>(v);
  // Quick impossibility checks: range and parity.
  if (std::abs(target) > bsum || ((target + bsum) & 1)) return 0;
  if (target_card) {
    if (std::abs(*target_card) > n || ((n + *target_card) & 1)) return 0;
  }
  if (n == 0) return target == 0 ? 1 : 0;

  const std::size_t planes = target_card ? static_cast<std::size_t>(n) + 1 : 1;
  const std::size_t width = static_cast<std::size_t>(2 * bsum + 1);
  const std::size_t dense_bytes = 2 * planes * width * sizeof(std::uint64_t);
  if (dense_bytes <= std::min(kDenseTableCap, memory_budget)) {
    return dp_dense(values, target, target_card);
  }
  return dp_sparse(values, target, target_card, memory_budget);
}

// ---------------------------------------------------------------------------
// Formula evaluation
// ---------------------------------------------------------------------------

std::vector<kernels::CosTrack> make_tracks(std::span<const std::uint64_t> values,
                                           std::uint64_t modulus, double offset) {
  std::vector<kernels::CosTrack> tracks;
  tracks.reserve(values.size());
  for (auto v : values) tracks.push_back({v % modulus, offset});
  return tracks;
}

// 2^scale_pow / denom * sum, rounded.
CountResult scale_and_round(std::complex<double> sum, int scale_pow,
                            double denom, CountMethod method) {
  const double re = std::ldexp(sum.real(), scale_pow) / denom;
  const double im = std::ldexp(sum.imag(), scale_pow) / denom;
  return round_with_residual(re, im, method);
}

// Unconstrained trace sum over the suffix with the prefix folded into the
// phase step D = (delta - P) mod M.
CountResult formula_unconstrained(std::span<const std::uint64_t> suffix,
                                  std::uint64_t modulus, std::int64_t delta_minus_p,
                                  int free_spins, kernels::Isa isa) {
  const std::uint64_t d = static_cast<std::uint64_t>(
      mod_pos(delta_minus_p, static_cast<std::int64_t>(modulus)));
  const auto tracks = make_tracks(suffix, modulus, 0.0);
  const auto sum = kernels::phase_cosine_sum(modulus, d, tracks, 0, modulus, isa);
  return scale_and_round(sum, free_spins, static_cast<double>(modulus),
                         CountMethod::kFormula);
}

CountResult formula_constrained(std::span<const std::uint64_t> suffix,
                                std::uint64_t modulus, std::int64_t delta_minus_p,
                                std::uint64_t k_modulus, std::int64_t c_minus_pc,
                                int free_spins, kernels::Isa isa) {
  const std::uint64_t d = static_cast<std::uint64_t>(
      mod_pos(delta_minus_p, static_cast<std::int64_t>(modulus)));
  std::complex<double> total{0.0, 0.0};
  for (std::uint64_t k = 0; k < k_modulus; ++k) {
    const double offset = static_cast<double>(k) / static_cast<double>(k_modulus);
    const auto tracks = make_tracks(suffix, modulus, offset);
    const auto inner =
        kernels::phase_cosine_sum(modulus, d, tracks, 0, modulus, isa);
    // e^{-2 pi i k (C - Pc) / K}
    const std::int64_t r = mod_pos(static_cast<std::int64_t>(k) * c_minus_pc,
                                   static_cast<std::int64_t>(k_modulus));
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(k_modulus);
    total += inner * std::complex<double>(std::cos(angle), -std::sin(angle));
  }
  const double denom =
      static_cast<double>(modulus) * static_cast<double>(k_modulus);
  return scale_and_round(total, free_spins, denom, CountMethod::kFormula);
}

struct PrefixSums {
  std::int64_t weighted = 0;  // sum_{j<=l} a_j S_j
  std::int64_t card = 0;      // sum_{j<=l} S_j
};

PrefixSums prefix_sums(const Instance& inst, const PrefixAssignment& prefix) {
  if (prefix.size() > inst.values().size()) {
    throw std::invalid_argument("prefix longer than the instance");
  }
  PrefixSums out;
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    if (prefix[j] != 1 && prefix[j] != -1) {
      throw std::invalid_argument("prefix entries must be +1 or -1");
    }
    const std::int64_t v = static_cast<std::int64_t>(inst.values()[j]);
    out.weighted += prefix[j] > 0 ? v : -v;
    out.card += prefix[j];
  }
  return out;
}

}  // namespace

const char* method_name(CountMethod method) {
  switch (method) {
    case CountMethod::kBruteforce: return "bruteforce";
    case CountMethod::kFormula: return "formula";
    case CountMethod::kDp: return "dp";
    case CountMethod::kQuantumAmplitude: return "quantum_amplitude";
    case CountMethod::kQuantumPhysical: return "quantum_physical";
    case CountMethod::kSpectral: return "spectral";
  }
  return "unknown";
}

CountResult count_bruteforce(const Instance& inst) {
  const auto params = derive_params(inst);
  std::optional<std::int64_t> card;
  if (inst.constraint()) card = *inst.constraint();
  const std::uint64_t hits = brute_core(inst.values(), params.delta, card);
  return {hits, CountMethod::kBruteforce, 0.0};
}

CountResult count_formula(const Instance& inst, kernels::Isa isa) {
  if (inst.constraint()) {
    throw std::invalid_argument("count_formula requires an unconstrained instance");
  }
  const auto params = derive_params(inst);
  return formula_unconstrained(inst.values(), params.modulus, params.delta,
                               inst.size(), isa);
}

CountResult count_formula_constrained(const Instance& inst, kernels::Isa isa) {
  if (!inst.constraint()) {
    throw std::invalid_argument("count_formula_constrained needs a constraint");
  }
  const auto params = derive_params(inst);
  return formula_constrained(inst.values(), params.modulus, params.delta,
                             *params.cardinality_modulus, *inst.constraint(),
                             inst.size(), isa);
}

CountResult count_dp(const Instance& inst, std::size_t memory_budget) {
  const auto params = derive_params(inst);
  std::optional<std::int64_t> card;
  if (inst.constraint()) card = *inst.constraint();
  const std::uint64_t hits =
      dp_core(inst.values(), params.delta, card, memory_budget);
  return {hits, CountMethod::kDp, 0.0};
}

CountResult count_restricted(const Instance& inst, const PrefixAssignment& prefix,
                             RestrictedMethod method, kernels::Isa isa) {
  const auto params = derive_params(inst);
  const auto pre = prefix_sums(inst, prefix);
  const std::span<const std::uint64_t> suffix(
      inst.values().data() + prefix.size(), inst.values().size() - prefix.size());
  const int free_spins = static_cast<int>(suffix.size());
  const std::int64_t target = params.delta - pre.weighted;
  std::optional<std::int64_t> target_card;
  if (inst.constraint()) target_card = *inst.constraint() - pre.card;

  switch (method) {
    case RestrictedMethod::kBruteforce:
      return {brute_core(suffix, target, target_card), CountMethod::kBruteforce, 0.0};
    case RestrictedMethod::kDp:
      return {dp_core(suffix, target, target_card, kDpMemoryBudget),
              CountMethod::kDp, 0.0};
    case RestrictedMethod::kFormula:
      if (inst.constraint()) {
        return formula_constrained(suffix, params.modulus, target,
                                   *params.cardinality_modulus, *target_card,
                                   free_spins, isa);
      }
      return formula_unconstrained(suffix, params.modulus, target, free_spins, isa);
  }
  throw std::logic_error("unreachable restricted method");
}

}  // namespace partcount
