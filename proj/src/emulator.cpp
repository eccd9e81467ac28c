#include "partcount/emulator.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "partcount/rng.hpp"

namespace partcount {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// e^{-i pi sigma^y / 4} and its inverse, row-major.
constexpr std::complex<double> kRyPrepMatrix[4] = {
    {kInvSqrt2, 0.0}, {-kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
constexpr std::complex<double> kRyUnprepMatrix[4] = {
    {kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, {-kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
constexpr std::complex<double> kNotMatrix[4] = {
    {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};

void check_qubit(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("qubit index out of range");
  }
}

void maybe_check_norm(const QuantumState& state, const EmulatorConfig& cfg) {
  if (!cfg.check_norm) return;
  const double norm = state.norm_sq();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::logic_error("state norm drifted to " + std::to_string(norm));
  }
}

CountResult round_amplitude(double est_re, double est_im, CountMethod method) {
  long long rounded = std::llround(est_re);
  if (rounded < 0) rounded = 0;
  const double residual =
      std::max(std::abs(est_re - static_cast<double>(rounded)), std::abs(est_im));
  if (!(residual < kResidualTolerance)) {
    throw PrecisionError("amplitude estimate " + std::to_string(est_re) +
                         " has residual " + std::to_string(residual));
  }
  return {static_cast<std::uint64_t>(rounded), method, residual};
}

int constraint_register_width(const DerivedParams& params) {
  const std::uint64_t k = *params.cardinality_modulus;
  return std::max(1, static_cast<int>(std::bit_width(k - 1)));
}

}  // namespace

QuantumState::QuantumState(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > 30) {
    throw BudgetError("state vector limited to 1..30 qubits");
  }
  amps_.assign(std::size_t{1} << qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

double QuantumState::norm_sq() const {
  double re = 0.0, im = 0.0;
  for (const auto& a : amps_) {
    re += a.real() * a.real();
    im += a.imag() * a.imag();
  }
  return re + im;
}

void apply_matrix(QuantumState& state, int qubit,
                  const std::complex<double> mtx[4], const EmulatorConfig& cfg) {
  check_qubit(state, qubit);
  kernels::apply_one_qubit(state.amplitudes().data(), state.dimension(), qubit,
                           mtx, cfg.isa);
  maybe_check_norm(state, cfg);
}

void apply_ry_prep(QuantumState& state, int qubit, const EmulatorConfig& cfg) {
  apply_matrix(state, qubit, kRyPrepMatrix, cfg);
}

void apply_ry_unprep(QuantumState& state, int qubit, const EmulatorConfig& cfg) {
  apply_matrix(state, qubit, kRyUnprepMatrix, cfg);
}

void apply_not(QuantumState& state, int qubit, const EmulatorConfig& cfg) {
  apply_matrix(state, qubit, kNotMatrix, cfg);
}

void apply_toffoli(QuantumState& state, int c1, int c2, int target,
                   const EmulatorConfig& cfg) {
  check_qubit(state, c1);
  check_qubit(state, c2);
  check_qubit(state, target);
  if (c1 == c2 || c1 == target || c2 == target) {
    throw std::invalid_argument("TOFFOLI operands must be distinct");
  }
  auto amps = state.amplitudes();
  const std::uint64_t controls =
      (std::uint64_t{1} << c1) | (std::uint64_t{1} << c2);
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & controls) == controls && !(i & tbit)) {
      std::swap(amps[i], amps[i | tbit]);
    }
  }
  maybe_check_norm(state, cfg);
}

void apply_z_phase(QuantumState& state, int qubit, double theta,
                   const EmulatorConfig& cfg) {
  check_qubit(state, qubit);
  const std::complex<double> up(std::cos(theta), -std::sin(theta));   // z = +1
  const std::complex<double> down(std::cos(theta), std::sin(theta));  // z = -1
  auto amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    amps[i] *= (i & bit) ? down : up;
  }
  maybe_check_norm(state, cfg);
}

void apply_zz_phase(QuantumState& state, int q1, int q2, double theta,
                    const EmulatorConfig& cfg) {
  check_qubit(state, q1);
  check_qubit(state, q2);
  const std::complex<double> same(std::cos(theta), -std::sin(theta));
  const std::complex<double> diff(std::cos(theta), std::sin(theta));
  auto amps = state.amplitudes();
  const std::uint64_t b1 = std::uint64_t{1} << q1;
  const std::uint64_t b2 = std::uint64_t{1} << q2;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const bool equal_bits = ((i & b1) != 0) == ((i & b2) != 0);
    amps[i] *= equal_bits ? same : diff;
  }
  maybe_check_norm(state, cfg);
}

void apply_global_phase(QuantumState& state, double theta,
                        const EmulatorConfig& cfg) {
  const std::complex<double> phase(std::cos(theta), -std::sin(theta));
  for (auto& a : state.amplitudes()) a *= phase;
  maybe_check_norm(state, cfg);
}

void apply_diag_evolution(QuantumState& state, const IsingCoefficients& coeffs,
                          int p, const EmulatorConfig& cfg, int number_base) {
  const int n = coeffs.n();
  if (number_base < 0) number_base = n;
  if (p < 1 || p > 26) throw BudgetError("number register limited to 26 qubits");
  if (number_base + p > state.num_qubits()) {
    throw std::invalid_argument("number register exceeds the state");
  }

  // W(s) = delta - sum_j a_j S_j reduced mod 2^p, with bit j set meaning
  // S_j = -1; so W(s) = delta - B + 2 * (masked sum).
  const std::size_t spin_size = std::size_t{1} << n;
  std::int64_t bsum = 0;
  for (auto v : coeffs.values) bsum += static_cast<std::int64_t>(v);
  std::vector<std::uint64_t> masked(spin_size, 0);
  for (std::size_t s = 1; s < spin_size; ++s) {
    const int j = std::countr_zero(s);
    masked[s] = masked[s & (s - 1)] + coeffs.values[j];
  }
  const std::int64_t two_p = std::int64_t{1} << p;
  std::vector<std::uint32_t> w_mod(spin_size);
  for (std::size_t s = 0; s < spin_size; ++s) {
    std::int64_t w = coeffs.delta - bsum + 2 * static_cast<std::int64_t>(masked[s]);
    w %= two_p;
    if (w < 0) w += two_p;
    w_mod[s] = static_cast<std::uint32_t>(w);
  }

  const auto table = kernels::PhaseTable::negative_root(p);
  kernels::apply_phase_mod(state.amplitudes().data(), state.dimension(), n,
                           number_base, w_mod, table, cfg.isa);
  maybe_check_norm(state, cfg);
}

void apply_circuit(QuantumState& state, const Circuit& circuit,
                   const EmulatorConfig& cfg) {
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kRyPrep: apply_ry_prep(state, g.q0, cfg); break;
      case GateKind::kRyUnprep: apply_ry_unprep(state, g.q0, cfg); break;
      case GateKind::kNot: apply_not(state, g.q0, cfg); break;
      case GateKind::kToffoli: apply_toffoli(state, g.q0, g.q1, g.q2, cfg); break;
      case GateKind::kZPhase: apply_z_phase(state, g.q0, g.param, cfg); break;
      case GateKind::kZzPhase:
        apply_zz_phase(state, g.q0, g.q1, g.param, cfg);
        break;
      case GateKind::kGlobalPhase: apply_global_phase(state, g.param, cfg); break;
      case GateKind::kDiagEvolution: {
        const auto& coeffs = circuit.evolutions.at(g.q0);
        apply_diag_evolution(state, coeffs, coeffs.number_qubits, cfg, g.q1);
        break;
      }
    }
  }
}

void prepare_uniform(QuantumState& state, const RegisterLayout& layout,
                     const EmulatorConfig& cfg) {
  for (int q = 0; q < layout.n_spins + layout.p_number + layout.q_constraint; ++q) {
    apply_ry_prep(state, q, cfg);
  }
}

void unprepare_uniform(QuantumState& state, const RegisterLayout& layout,
                       const EmulatorConfig& cfg) {
  for (int q = layout.n_spins + layout.p_number + layout.q_constraint - 1; q >= 0;
       --q) {
    apply_ry_unprep(state, q, cfg);
  }
}

namespace {

// Shared prepare / evolve / unprepare pipeline on a fresh state.
QuantumState run_pipeline(const Instance& inst, const RegisterLayout& layout,
                          const EmulatorConfig& cfg) {
  if (layout.total_qubits > cfg.qubit_budget) {
    throw BudgetError("pipeline needs " + std::to_string(layout.total_qubits) +
                      " qubits, budget is " + std::to_string(cfg.qubit_budget));
  }
  QuantumState state(layout.total_qubits);
  prepare_uniform(state, layout, cfg);
  const auto coeffs = make_ising_coefficients(inst, layout.p_number);
  apply_diag_evolution(state, coeffs, layout.p_number, cfg, layout.n_spins);
  if (layout.q_constraint > 0) {
    const std::vector<std::uint64_t> ones(inst.values().size(), 1);
    const auto constraint_coeffs =
        make_ising_coefficients(ones, *inst.constraint(), layout.q_constraint);
    apply_diag_evolution(state, constraint_coeffs, layout.q_constraint, cfg,
                         layout.n_spins + layout.p_number);
  }
  unprepare_uniform(state, layout, cfg);
  return state;
}

}  // namespace

CountResult run_amplitude_mode(const Instance& inst, const EmulatorConfig& cfg) {
  if (inst.constraint()) {
    throw std::invalid_argument(
        "run_amplitude_mode requires an unconstrained instance");
  }
  const auto params = derive_params(inst);
  const auto layout = RegisterLayout::amplitude(inst.size(), params.number_qubits);
  const QuantumState state = run_pipeline(inst, layout, cfg);
  const auto amp0 = state.amplitude(0);
  return round_amplitude(std::ldexp(amp0.real(), inst.size()),
                         std::ldexp(amp0.imag(), inst.size()),
                         CountMethod::kQuantumAmplitude);
}

CountResult run_amplitude_mode_constrained(const Instance& inst,
                                           const EmulatorConfig& cfg) {
  if (!inst.constraint()) {
    throw std::invalid_argument("constrained amplitude mode needs a constraint");
  }
  const auto params = derive_params(inst);
  const int q = constraint_register_width(params);
  const auto layout =
      RegisterLayout::amplitude(inst.size(), params.number_qubits, q);
  const QuantumState state = run_pipeline(inst, layout, cfg);
  const auto amp0 = state.amplitude(0);
  return round_amplitude(std::ldexp(amp0.real(), inst.size()),
                         std::ldexp(amp0.imag(), inst.size()),
                         CountMethod::kQuantumAmplitude);
}

namespace {

// Physical pipeline: amplitude pipeline plus the AND network.
std::pair<QuantumState, RegisterLayout> run_physical_pipeline(
    const Instance& inst, const EmulatorConfig& cfg) {
  if (inst.constraint()) {
    throw std::invalid_argument("physical mode does not support constraints");
  }
  const auto params = derive_params(inst);
  const auto layout =
      RegisterLayout::physical(inst.size(), params.number_qubits);
  QuantumState state = run_pipeline(inst, layout, cfg);
  apply_circuit(state, build_and_network(layout), cfg);
  return {std::move(state), layout};
}

double kappa_expectation(const QuantumState& state, const RegisterLayout& layout) {
  const std::uint64_t kappa_bit = std::uint64_t{1} << layout.kappa_index;
  double expectation = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = kappa_bit; i < amps.size(); ++i) {
    if (i & kappa_bit) expectation += std::norm(amps[i]);
  }
  return expectation;
}

}  // namespace

PhysicalRun run_physical_mode(const Instance& inst, const EmulatorConfig& cfg) {
  const auto [state, layout] = run_physical_pipeline(inst, cfg);
  const double expectation = kappa_expectation(state, layout);
  const double est = std::ldexp(std::sqrt(expectation), inst.size());
  PhysicalRun run;
  run.expectation = expectation;
  run.result = round_amplitude(est, 0.0, CountMethod::kQuantumPhysical);
  return run;
}

ShotSample sample_physical_shots(const Instance& inst, std::uint64_t shots,
                                 std::uint64_t seed, const EmulatorConfig& cfg) {
  const auto [state, layout] = run_physical_pipeline(inst, cfg);
  const double p1 = kappa_expectation(state, layout);
  SplitMix64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    if (rng.next_double() < p1) ++hits;
  }
  ShotSample out;
  out.shots = shots;
  out.kappa_hits = hits;
  out.frequency = shots ? static_cast<double>(hits) / static_cast<double>(shots) : 0.0;
  out.expectation = p1;
  return out;
}

bool rotation_convention_check() {
  const EmulatorConfig cfg{.qubit_budget = 4};
  const std::complex<double> u0(kInvSqrt2, 0.0), u1(kInvSqrt2, 0.0);
  const std::complex<double> b0(kInvSqrt2, 0.0), b1(-kInvSqrt2, 0.0);
  // <U|Ubar> = 0
  if (std::abs(std::conj(u0) * b0 + std::conj(u1) * b1) > 1e-12) return false;

  for (double a : {0.0, kPi / 7.0, kPi / 4.0, 1.0, kPi / 2.0}) {
    QuantumState state(1);
    apply_ry_prep(state, 0, cfg);
    apply_z_phase(state, 0, a, cfg);
    const auto psi = state.amplitudes();
    const auto overlap_u = std::conj(u0) * psi[0] + std::conj(u1) * psi[1];
    const auto overlap_b = std::conj(b0) * psi[0] + std::conj(b1) * psi[1];
    if (std::abs(overlap_u - std::complex<double>(std::cos(a), 0.0)) > 1e-12) {
      return false;
    }
    if (std::abs(overlap_b - std::complex<double>(0.0, -std::sin(a))) > 1e-12) {
      return false;
    }
  }
  return true;
}

std::string dump_state(const QuantumState& state, double threshold) {
  std::ostringstream out;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) <= threshold) continue;
    const std::string bits =
        std::bitset<64>(i).to_string().substr(64 - state.num_qubits());
    out << bits << ' ' << amps[i].real() << ' ' << amps[i].imag() << "\n";
  }
  return out.str();
}

}  // namespace partcount
