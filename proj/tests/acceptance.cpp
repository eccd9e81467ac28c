// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via `ctest -R acceptance` or directly:
//   ./acceptance --cli ./partcount

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "partcount/bench.hpp"
#include "partcount/methods.hpp"
#include "partcount/rng.hpp"
#include "partcount/solver.hpp"
#include "partcount/spectral.hpp"

using namespace partcount;

namespace {

std::string g_cli_path;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Suites {
  std::vector<Instance> unconstrained;  // 200, n <= 12, a_j <= 50
  std::vector<Instance> constrained;    // 100, n <= 10, a_j <= 30
};

Suites make_suites() {
  Suites s;
  SplitMix64 rng(0x9C1E5EED2024ull);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng.next() % 12);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(50);
    s.unconstrained.emplace_back(values, std::nullopt);
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng.next() % 10);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(30);
    // C sampled with the parity of n from [-n, n].
    const int options = n + 1;  // values of |C| stepping by 2 cover [-n, n]
    int c = -n + 2 * static_cast<int>(rng.next() % options);
    s.constrained.emplace_back(values, c);
  }
  return s;
}

// --- criteria -------------------------------------------------------------

Check criterion1_worked_examples() {
  Check c;
  const std::vector<std::uint64_t> sets[3] = {{1, 2, 3, 4}, {1, 1, 1, 4}, {2, 2, 2, 4}};
  const std::uint64_t expected[3] = {2, 1, 0};
  const double kappa[3] = {0.015625, 0.00390625, 0.0};
  for (int i = 0; i < 3; ++i) {
    const Instance inst(sets[i], std::nullopt);
    c.expect(count_bruteforce(inst).count == expected[i], "bruteforce mismatch");
    c.expect(count_formula(inst).count == expected[i], "formula mismatch");
    c.expect(count_dp(inst).count == expected[i], "dp mismatch");
    c.expect(run_amplitude_mode(inst).count == expected[i], "amplitude mismatch");
    const auto phys = run_physical_mode(inst);
    c.expect(phys.result.count == expected[i], "physical mismatch");
    c.expect(std::abs(phys.expectation - kappa[i]) < 1e-10,
             "kappa expectation off for set " + std::to_string(i));
    c.expect(count_spectral(inst).count == expected[i], "spectral mismatch");
  }
  return c;
}

Check criterion2_oracle_equivalence(const Suites& suites) {
  Check c;
  for (const auto& inst : suites.unconstrained) {
    const std::uint64_t want = count_bruteforce(inst).count;
    const auto formula = count_formula(inst);
    const auto dp = count_dp(inst);
    const auto amp = run_amplitude_mode(inst);
    c.expect(formula.count == want, "formula != bruteforce");
    c.expect(dp.count == want, "dp != bruteforce");
    c.expect(amp.count == want, "amplitude != bruteforce");
    c.expect(formula.residual < 1e-6, "formula residual too large");
    c.expect(amp.residual < 1e-6, "amplitude residual too large");
  }
  return c;
}

Check criterion3_constrained(const Suites& suites) {
  Check c;
  for (const auto& inst : suites.constrained) {
    const std::uint64_t want = count_bruteforce(inst).count;
    c.expect(count_formula_constrained(inst).count == want,
             "constrained formula != bruteforce");
    c.expect(count_dp(inst).count == want, "constrained dp != bruteforce");
    c.expect(run_amplitude_mode_constrained(inst).count == want,
             "constrained amplitude != bruteforce");
  }
  return c;
}

Check criterion4_extraction(const Suites& suites) {
  Check c;
  auto run_suite = [&](const std::vector<Instance>& instances) {
    for (const auto& inst : instances) {
      const std::uint64_t want = count_bruteforce(inst).count;
      std::optional<std::vector<std::int8_t>> reference;
      for (auto backend : {RestrictedMethod::kFormula, RestrictedMethod::kDp,
                           RestrictedMethod::kBruteforce}) {
        const auto trace = extract_partition(inst, backend);
        if (want == 0) {
          c.expect(!trace.result, "result produced for unsolvable instance");
          continue;
        }
        c.expect(trace.result.has_value(), "no result for solvable instance");
        if (!trace.result) continue;
        c.expect(verify_partition(inst, *trace.result),
                 "extracted configuration fails verification");
        if (!reference) reference = trace.result->spins;
        else c.expect(*reference == trace.result->spins,
                      "backends disagree on the extracted spins");
      }
    }
  };
  run_suite(suites.unconstrained);
  run_suite(suites.constrained);
  return c;
}

Check criterion5_decomposition() {
  Check c;
  SplitMix64 rng(0xDEC09405ull);
  int instances = 0;
  while (instances < 20) {
    const int n = 1 + static_cast<int>(rng.next() % 5);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(12);
    const Instance inst(values, std::nullopt);
    const auto params = derive_params(inst);
    const int p = params.number_qubits;
    if (n + p > 12) continue;
    ++instances;
    const auto coeffs = make_ising_coefficients(inst, p);
    const auto circuit = decompose_evolution(coeffs, p);
    for (int rep = 0; rep < 20; ++rep) {
      QuantumState direct(n + p);
      auto amps = direct.amplitudes();
      double norm = 0.0;
      for (auto& a : amps) {
        a = {rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm += std::norm(a);
      }
      for (auto& a : amps) a /= std::sqrt(norm);
      QuantumState lowered(n + p);
      std::copy(amps.begin(), amps.end(), lowered.amplitudes().begin());

      apply_diag_evolution(direct, coeffs, p);
      apply_circuit(lowered, circuit);
      double worst = 0.0;
      for (std::size_t i = 0; i < direct.dimension(); ++i) {
        worst = std::max(worst,
                         std::abs(direct.amplitude(i) - lowered.amplitude(i)));
      }
      c.expect(worst < 1e-12, "decomposition deviates by " + std::to_string(worst));
    }
  }
  return c;
}

Check criterion6_rotation_convention() {
  Check c;
  c.expect(rotation_convention_check(), "rotation convention self-test failed");
  return c;
}

Check criterion7_spectral(const Suites& suites) {
  Check c;
  for (const auto& inst : suites.unconstrained) {
    const auto params = derive_params(inst);
    const double formula = static_cast<double>(count_formula(inst).count);
    for (std::uint64_t mprime : {params.modulus, 2 * params.modulus,
                                 std::uint64_t{1} << params.number_qubits}) {
      const double est = std::ldexp(zero_freq_estimate(inst, mprime), inst.size());
      c.expect(std::abs(est - formula) < 1e-10,
               "zero-frequency identity off at M'=" + std::to_string(mprime));
    }
  }
  SplitMix64 rng(0x50EC72A1ull);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(rng.next() % 8);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(25);
    const Instance inst(values, std::nullopt);
    const double t = rng.next_double() * 2.0 * 3.14159265358979323846;
    const auto closed = correlation_closed(inst, t);
    const auto emulated = correlation_emulated(inst, t);
    c.expect(std::abs(closed - emulated) < 1e-12, "correlation mismatch");
  }
  return c;
}

Check criterion8_and_network() {
  Check c;
  for (int inputs = 2; inputs <= 4; ++inputs) {
    const auto layout = RegisterLayout::physical(inputs - 1, 1);
    const auto net = build_and_network(layout);
    for (std::uint64_t basis = 0; basis < (std::uint64_t{1} << inputs); ++basis) {
      QuantumState state(layout.total_qubits);
      state.amplitudes()[0] = {0.0, 0.0};
      state.amplitudes()[basis] = {1.0, 0.0};
      apply_circuit(state, net);
      std::uint64_t where = 0;
      int nonzero = 0;
      for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        if (std::abs(state.amplitude(i)) > 0.5) {
          where = i;
          ++nonzero;
        }
      }
      c.expect(nonzero == 1, "AND network must permute basis states");
      const bool kappa = (where >> layout.kappa_index) & 1;
      c.expect(kappa == (basis == 0), "kappa truth table violated");
    }
  }
  return c;
}

Check criterion9_circuit_cli() {
  Check c;
  if (g_cli_path.empty()) {
    c.expect(false, "no --cli path given");
    return c;
  }
  const std::string tmp = "/tmp/acceptance_inst.json";
  {
    FILE* f = fopen(tmp.c_str(), "w");
    fputs("{\"a\":[1,2,3,4]}", f);
    fclose(f);
  }
  const std::string cmd =
      g_cli_path + " circuit " + tmp + " --mode physical 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    c.expect(false, "cannot run the CLI");
    return c;
  }
  std::string output;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), got);
  }
  const int raw = pclose(pipe);
  c.expect(WIFEXITED(raw) && WEXITSTATUS(raw) == 0, "circuit command failed");
  c.expect(output.rfind("# qubits 15\n", 0) == 0, "header is not 15 qubits");
  c.expect(output.find("# layout n=4 p=4 anc=6 kappa=14\n") != std::string::npos,
           "layout line mismatch");
  std::size_t toffolis = 0;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("TOFFOLI ", 0) == 0) ++toffolis;
  }
  c.expect(toffolis == 7, "expected 7 TOFFOLI gates, saw " + std::to_string(toffolis));
  std::remove(tmp.c_str());
  return c;
}

Check criterion10_sampling() {
  Check c;
  const std::uint64_t shots = 256;  // 2^8
  const auto sampled =
      sample_physical_shots(Instance({1, 1, 1, 4}, std::nullopt), shots, 0xACE5EED);
  const double p = 1.0 / 256.0;  // (1/16)^2
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
  c.expect(std::abs(sampled.frequency - p) <= 3.0 * sigma,
           "sampled frequency " + std::to_string(sampled.frequency) +
               " outside 3 sigma of " + std::to_string(p));

  const auto unsat =
      sample_physical_shots(Instance({2, 2, 2, 4}, std::nullopt), shots, 0xACE5EED);
  c.expect(unsat.kappa_hits == 0, "unsolvable instance produced kappa hits");
  return c;
}

Check criterion11_bench() {
  Check c;
  BenchConfig easy;
  easy.n_values = {15};
  easy.b_values = {3};
  easy.instances_per_cell = 100;
  easy.seed = 0xBE9C2024ull;
  easy.backend = CountMethod::kDp;
  const auto easy_cells = bench_summaries(run_bench(easy));
  c.expect(easy_cells.size() == 1, "expected one cell");
  c.expect(easy_cells[0].fraction_solvable >= 0.9,
           "easy cell solvable fraction " +
               std::to_string(easy_cells[0].fraction_solvable));

  BenchConfig hard = easy;
  hard.n_values = {8};
  hard.b_values = {25};
  const auto hard_cells = bench_summaries(run_bench(hard));
  c.expect(hard_cells.size() == 1, "expected one cell");
  c.expect(hard_cells[0].fraction_solvable <= 0.1,
           "hard cell solvable fraction " +
               std::to_string(hard_cells[0].fraction_solvable));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
  }

  const Suites suites = make_suites();
  struct Criterion {
    int id;
    const char* title;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked examples across all six backends",
       [] { return criterion1_worked_examples(); }},
      {2, "oracle equivalence on 200 random unconstrained instances",
       [&] { return criterion2_oracle_equivalence(suites); }},
      {3, "constrained equivalence on 100 random instances",
       [&] { return criterion3_constrained(suites); }},
      {4, "extraction soundness and backend independence",
       [&] { return criterion4_extraction(suites); }},
      {5, "gate decomposition equals direct evolution",
       [] { return criterion5_decomposition(); }},
      {6, "rotation convention self-test",
       [] { return criterion6_rotation_convention(); }},
      {7, "spectral identity and correlation agreement",
       [&] { return criterion7_spectral(suites); }},
      {8, "AND-network exhaustive truth table",
       [] { return criterion8_and_network(); }},
      {9, "physical circuit export: 15 qubits, 7 Toffolis",
       [] { return criterion9_circuit_cli(); }},
      {10, "shot-sampling cost demonstration",
       [] { return criterion10_sampling(); }},
      {11, "easy/hard benchmark fractions",
       [] { return criterion11_bench(); }},
  };

  bool all_ok = true;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n",
                result.ok ? "PASS" : "FAIL", criterion.id, criterion.title,
                seconds, result.ok ? "" : " -- ",
                result.ok ? "" : result.detail.c_str());
    all_ok = all_ok && result.ok;
  }
  return all_ok ? 0 : 1;
}
