// partcount: count and extract solutions of the (constrained) number
// partitioning problem, with classical, emulated-quantum, and spectral
// backends.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "partcount/bench.hpp"
#include "partcount/methods.hpp"
#include "partcount/solver.hpp"
#include "partcount/spectral.hpp"

namespace {

using nlohmann::json;
using namespace partcount;

constexpr int kExitUsage = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitNoSolution = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

InstanceFormat format_from_name(const std::string& name) {
  if (name == "json") return InstanceFormat::kJson;
  if (name == "plain") return InstanceFormat::kPlain;
  return InstanceFormat::kAuto;
}

Instance load_instance(const std::string& path, const std::string& format,
                       std::optional<int> constraint_override) {
  Instance inst = parse_instance(read_file(path), format_from_name(format));
  if (constraint_override) inst = inst.with_constraint(constraint_override);
  return inst;
}

std::int64_t elapsed_ns_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct CountArgs {
  std::string path;
  std::string format = "auto";
  std::string method = "formula";
  std::optional<int> constraint;
  int budget_qubits = kDefaultQubitBudget;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
};

int run_count(const CountArgs& args) {
  const Instance inst = load_instance(args.path, args.format, args.constraint);
  const CountMethod method = parse_method_name(args.method);
  EmulatorConfig cfg;
  cfg.qubit_budget = args.budget_qubits;

  const auto start = std::chrono::steady_clock::now();
  json out;
  if (method == CountMethod::kQuantumPhysical) {
    const PhysicalRun run = run_physical_mode(inst, cfg);
    out["n_s"] = run.result.count;
    out["method"] = method_name(run.result.method);
    out["residual"] = run.result.residual;
    out["expectation"] = run.expectation;
    if (args.shots > 0) {
      const ShotSample sample =
          sample_physical_shots(inst, args.shots, args.seed, cfg);
      out["shots"] = sample.shots;
      out["kappa_hits"] = sample.kappa_hits;
      out["sampled_frequency"] = sample.frequency;
    }
  } else {
    const CountResult result = count_by_method(inst, method, cfg);
    out["n_s"] = result.count;
    out["method"] = method_name(result.method);
    out["residual"] = result.residual;
  }
  out["elapsed_ns"] = elapsed_ns_since(start);
  std::cout << out.dump() << "\n";
  std::cerr << "n_s = " << out["n_s"] << " (" << out["method"].get<std::string>()
            << ")\n";
  return 0;
}

struct SolveArgs {
  std::string path;
  std::string format = "auto";
  std::string method = "dp";
  std::optional<int> constraint;
};

int run_solve(const SolveArgs& args) {
  const Instance inst = load_instance(args.path, args.format, args.constraint);
  RestrictedMethod backend;
  if (args.method == "bruteforce") backend = RestrictedMethod::kBruteforce;
  else if (args.method == "formula") backend = RestrictedMethod::kFormula;
  else if (args.method == "dp") backend = RestrictedMethod::kDp;
  else throw std::invalid_argument("solve backend must be bruteforce|formula|dp");

  const ExtractionTrace trace = extract_partition(inst, backend);
  json out;
  out["n_s"] = trace.total_count;
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"l", s.position},
                     {"guess", s.guess},
                     {"count", s.restricted_count},
                     {"flipped", s.flipped}});
  }
  out["trace"] = steps;
  if (!trace.result) {
    out["solution"] = nullptr;
    std::cout << out.dump() << "\n";
    std::cerr << "no partition exists\n";
    return kExitNoSolution;
  }
  json a1 = json::array(), a2 = json::array(), spins = json::array();
  for (std::size_t j = 0; j < trace.result->spins.size(); ++j) {
    spins.push_back(static_cast<int>(trace.result->spins[j]));
    if (trace.result->spins[j] > 0) a1.push_back(inst.values()[j]);
    else a2.push_back(inst.values()[j]);
  }
  out["A1"] = a1;
  out["A2"] = a2;
  out["spins"] = spins;
  std::cout << out.dump() << "\n";
  std::cerr << "A1 = " << a1.dump() << ", A2 = " << a2.dump() << "\n";
  return 0;
}

struct CircuitArgs {
  std::string path;
  std::string format = "auto";
  std::string mode = "amplitude";
  std::string out_path;
  std::optional<int> constraint;
  int budget_qubits = kDefaultQubitBudget;
};

int run_circuit(const CircuitArgs& args) {
  const Instance inst = load_instance(args.path, args.format, args.constraint);
  Circuit circuit;
  if (args.mode == "amplitude") {
    circuit = build_amplitude_circuit(inst);
  } else if (args.mode == "physical") {
    circuit = build_physical_circuit(inst);
  } else {
    throw std::invalid_argument("mode must be amplitude|physical");
  }
  if (circuit.layout.total_qubits > args.budget_qubits) {
    throw BudgetError("circuit needs " +
                      std::to_string(circuit.layout.total_qubits) +
                      " qubits, budget is " + std::to_string(args.budget_qubits));
  }
  const std::string text = emit_circuit(circuit);
  if (args.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(args.out_path, text);
    std::cerr << "wrote " << args.out_path << "\n";
  }
  return 0;
}

struct SpectrumArgs {
  std::string path;
  std::string format = "auto";
  double t_max = 0.0;  // 0 selects the observation bound 2^n pi
  int n_t = 4096;
  double omega_max = 5.0;
  int n_omega = 201;
  std::string out_prefix = "spectrum";
};

int run_spectrum(const SpectrumArgs& args) {
  const Instance inst = load_instance(args.path, args.format, std::nullopt);
  const double t_max =
      args.t_max > 0.0 ? args.t_max : observation_bound(inst.size());
  const Spectrum spec =
      spectrum_scan(inst, args.omega_max, args.n_omega, t_max, args.n_t);

  std::ostringstream samples;
  samples << "t,re,im\n";
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    samples << spec.times[i] << ',' << spec.values[i].real() << ','
            << spec.values[i].imag() << "\n";
  }
  std::ostringstream scan;
  scan << "omega,magnitude\n";
  for (const auto& [omega, magnitude] : spec.omega_grid) {
    scan << omega << ',' << magnitude << "\n";
  }
  const std::string samples_path = args.out_prefix + "_samples.csv";
  const std::string scan_path = args.out_prefix + "_scan.csv";
  write_file(samples_path, samples.str());
  write_file(scan_path, scan.str());

  const CountResult inferred = count_spectral(inst);
  json out;
  out["estimate"] = std::ldexp(spec.zero_freq, inst.size());
  out["inferred_count"] = inferred.count;
  out["T"] = t_max;
  out["samples_csv"] = samples_path;
  out["scan_csv"] = scan_path;
  std::cout << out.dump() << "\n";
  std::cerr << "inferred count " << inferred.count << "\n";
  return 0;
}

struct BenchArgs {
  std::string config_path;
  std::string out_path = "bench.csv";
  std::optional<std::uint64_t> seed;
};

BenchConfig parse_bench_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed bench config: ") + e.what());
  }
  BenchConfig config;
  try {
    config.n_values = doc.at("n_values").get<std::vector<int>>();
    config.b_values = doc.at("b_values").get<std::vector<int>>();
    config.instances_per_cell = doc.at("instances_per_cell").get<int>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("backend")) {
      config.backend = parse_method_name(doc["backend"].get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  return config;
}

int run_bench_cmd(const BenchArgs& args) {
  BenchConfig config = parse_bench_config(read_file(args.config_path));
  if (args.seed) config.seed = *args.seed;
  const auto records = run_bench(config);
  write_file(args.out_path, bench_csv(records));

  json cells = json::array();
  for (const auto& cell : bench_summaries(records)) {
    cells.push_back({{"n", cell.n},
                     {"b", cell.b},
                     {"instances", cell.instances},
                     {"fraction_solvable", cell.fraction_solvable},
                     {"median_elapsed_ns", cell.median_elapsed_ns}});
  }
  json out;
  out["csv"] = args.out_path;
  out["cells"] = cells;
  std::cout << out.dump() << "\n";
  std::cerr << "wrote " << args.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solution counting for the (constrained) number partitioning problem"};
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "count solutions n_s");
  count_cmd->add_option("instance", count_args.path, "instance file")->required();
  count_cmd->add_option("--format", count_args.format, "json|plain|auto");
  count_cmd->add_option("--method", count_args.method,
                        "bruteforce|formula|dp|quantum|physical|spectral");
  count_cmd->add_option("--constraint", count_args.constraint,
                        "override the cardinality constraint C");
  count_cmd->add_option("--budget-qubits", count_args.budget_qubits,
                        "state-vector qubit budget");
  count_cmd->add_option("--shots", count_args.shots,
                        "physical mode: sample kappa this many times");
  count_cmd->add_option("--seed", count_args.seed, "shot-sampling seed");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "extract an explicit partition");
  solve_cmd->add_option("instance", solve_args.path, "instance file")->required();
  solve_cmd->add_option("--format", solve_args.format, "json|plain|auto");
  solve_cmd->add_option("--method", solve_args.method, "bruteforce|formula|dp");
  solve_cmd->add_option("--constraint", solve_args.constraint,
                        "override the cardinality constraint C");

  CircuitArgs circuit_args;
  auto* circuit_cmd = app.add_subcommand("circuit", "export the gate program");
  circuit_cmd->add_option("instance", circuit_args.path, "instance file")->required();
  circuit_cmd->add_option("--format", circuit_args.format, "json|plain|auto");
  circuit_cmd->add_option("--mode", circuit_args.mode, "amplitude|physical");
  circuit_cmd->add_option("--out", circuit_args.out_path, "write here instead of stdout");
  circuit_cmd->add_option("--constraint", circuit_args.constraint,
                          "override the cardinality constraint C");
  circuit_cmd->add_option("--budget-qubits", circuit_args.budget_qubits,
                          "qubit budget");

  SpectrumArgs spectrum_args;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "correlation samples and spectrum scan");
  spectrum_cmd->add_option("instance", spectrum_args.path, "instance file")->required();
  spectrum_cmd->add_option("--format", spectrum_args.format, "json|plain|auto");
  spectrum_cmd->add_option("--T", spectrum_args.t_max,
                           "observation time (default 2^n pi)");
  spectrum_cmd->add_option("--nt", spectrum_args.n_t, "time samples");
  spectrum_cmd->add_option("--omega-max", spectrum_args.omega_max, "scan ceiling");
  spectrum_cmd->add_option("--n-omega", spectrum_args.n_omega, "scan points");
  spectrum_cmd->add_option("--out", spectrum_args.out_prefix, "CSV path prefix");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "random-instance benchmark sweep");
  bench_cmd->add_option("config", bench_args.config_path, "bench config JSON")->required();
  bench_cmd->add_option("--out", bench_args.out_path, "records CSV path");
  bench_cmd->add_option("--seed", bench_args.seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*count_cmd) return run_count(count_args);
    if (*solve_cmd) return run_solve(solve_args);
    if (*circuit_cmd) return run_circuit(circuit_args);
    if (*spectrum_cmd) return run_spectrum(spectrum_args);
    if (*bench_cmd) return run_bench_cmd(bench_args);
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
