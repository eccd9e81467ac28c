#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "partcount/circuit.hpp"
#include "partcount/counting.hpp"
#include "partcount/instance.hpp"
#include "partcount/kernels.hpp"

namespace partcount {

/// Default ceiling on state-vector size: 2^26 complex doubles = 1 GiB.
inline constexpr int kDefaultQubitBudget = 26;

struct EmulatorConfig {
  int qubit_budget = kDefaultQubitBudget;
  kernels::Isa isa = kernels::active_isa();
  bool check_norm = false;  // verify unit norm after every gate
};

/// Dense complex state vector over `qubits` little-endian qubits; bit value
/// 0 of a basis index encodes spin up |0>.
class QuantumState {
 public:
  explicit QuantumState(int qubits);

  int num_qubits() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<std::complex<double>> amplitudes() { return amps_; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::uint64_t basis) const {
    return amps_[basis];
  }
  double norm_sq() const;

 private:
  int qubits_;
  std::vector<std::complex<double>> amps_;
};

// Gate application (direct engine).
void apply_ry_prep(QuantumState& state, int qubit, const EmulatorConfig& cfg = {});
void apply_ry_unprep(QuantumState& state, int qubit, const EmulatorConfig& cfg = {});
void apply_not(QuantumState& state, int qubit, const EmulatorConfig& cfg = {});
void apply_toffoli(QuantumState& state, int c1, int c2, int target,
                   const EmulatorConfig& cfg = {});
void apply_z_phase(QuantumState& state, int qubit, double theta,
                   const EmulatorConfig& cfg = {});
void apply_zz_phase(QuantumState& state, int q1, int q2, double theta,
                    const EmulatorConfig& cfg = {});
void apply_global_phase(QuantumState& state, double theta,
                        const EmulatorConfig& cfg = {});
void apply_matrix(QuantumState& state, int qubit,
                  const std::complex<double> mtx[4],
                  const EmulatorConfig& cfg = {});

/// One-pass diagonal evolution exp(-i pi H / 2^(p-1)): every basis amplitude
/// gains exp(-2 pi i x W / 2^p) with W = delta - sum_j a_j S_j and x the
/// value of the register starting at `number_base` (default: qubit n).
void apply_diag_evolution(QuantumState& state, const IsingCoefficients& coeffs,
                          int p, const EmulatorConfig& cfg = {},
                          int number_base = -1);

void apply_circuit(QuantumState& state, const Circuit& circuit,
                   const EmulatorConfig& cfg = {});

/// Rotate the first n+p(+q) qubits into the uniform superposition.
void prepare_uniform(QuantumState& state, const RegisterLayout& layout,
                     const EmulatorConfig& cfg = {});
void unprepare_uniform(QuantumState& state, const RegisterLayout& layout,
                       const EmulatorConfig& cfg = {});

/// Read n_s from the |0...0> amplitude after prepare / evolve / unprepare.
CountResult run_amplitude_mode(const Instance& inst,
                               const EmulatorConfig& cfg = {});

/// Amplitude mode with a second number register driving the cardinality
/// constraint phase.
CountResult run_amplitude_mode_constrained(const Instance& inst,
                                           const EmulatorConfig& cfg = {});

struct PhysicalRun {
  double expectation = 0.0;  // <(1 - kappa^z)/2> = P(kappa = |1>)
  CountResult result;
};

/// Full pipeline with the AND network; n_s = 2^n sqrt(expectation).
PhysicalRun run_physical_mode(const Instance& inst,
                              const EmulatorConfig& cfg = {});

struct ShotSample {
  std::uint64_t shots = 0;
  std::uint64_t kappa_hits = 0;
  double frequency = 0.0;
  double expectation = 0.0;
};

/// Sample kappa^z measurements from the physical-mode state.
ShotSample sample_physical_shots(const Instance& inst, std::uint64_t shots,
                                 std::uint64_t seed,
                                 const EmulatorConfig& cfg = {});

/// Numerical self-test of exp(-i a sigma^z)|U> = cos(a)|U> - i sin(a)|Ubar>
/// and <U|Ubar> = 0, at 1e-12.
bool rotation_convention_check();

/// Debug dump: one line per amplitude with magnitude above `threshold`,
/// basis index as an MSB-first binary string plus real and imaginary parts.
std::string dump_state(const QuantumState& state, double threshold = 1e-12);

}  // namespace partcount
