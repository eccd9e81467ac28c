#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partcount/instance.hpp"

namespace partcount {

/// Qubit register layout. Spins sigma_j live on qubits 0..n-1, the number
/// register mu_l on n..n+p-1, an optional second number register (constrained
/// runs) above that, then AND-tree ancillas and the readout qubit kappa.
struct RegisterLayout {
  int n_spins = 0;
  int p_number = 0;
  int q_constraint = 0;
  int ancillas = 0;
  int kappa_index = -1;
  int total_qubits = 0;

  static RegisterLayout amplitude(int n, int p, int q = 0);
  static RegisterLayout physical(int n, int p);

  int spin_qubit(int j) const { return j - 1; }                // j in 1..n
  int number_qubit(int l) const { return n_spins + l - 1; }    // l in 1..p
  int inputs() const { return n_spins + p_number; }
};

/// Couplings of the diagonal evolution Hamiltonian, plus the integers they
/// were built from (used by the exact-phase engine).
struct IsingCoefficients {
  std::vector<double> coupling;      // n*p row-major; J[j][l] = -a_j * 2^(l-2)
  std::vector<double> spin_field;    // b_j = a_j (2^p - 1)/2
  std::vector<double> number_field;  // c_l = delta * 2^(l-2)
  double constant = 0.0;             // d = delta (2^p - 1)/2

  std::vector<std::uint64_t> values;
  std::int64_t delta = 0;
  int number_qubits = 0;

  int n() const { return static_cast<int>(values.size()); }
  double coupling_at(int j, int l) const {  // 0-based
    return coupling[static_cast<std::size_t>(j) * number_qubits + l];
  }

  /// Diagonal energy of a basis state (spins in bits 0..n-1, number register
  /// in the `n` following bits). Equals (delta - sum_j a_j S_j) * x.
  double energy(std::uint64_t basis) const;
};

IsingCoefficients make_ising_coefficients(const std::vector<std::uint64_t>& values,
                                          std::int64_t delta, int p);
IsingCoefficients make_ising_coefficients(const Instance& inst, int p);

enum class GateKind {
  kRyPrep,       // exp(-i pi sigma^y / 4)
  kRyUnprep,     // its inverse
  kNot,          // sigma^x
  kToffoli,
  kZPhase,       // amp *= exp(-i theta z), z = +1 for |0>
  kZzPhase,      // amp *= exp(-i theta z1 z2)
  kGlobalPhase,  // amp *= exp(-i theta)
  kDiagEvolution,
};

struct Gate {
  GateKind kind;
  int q0 = -1;
  int q1 = -1;
  int q2 = -1;
  double param = 0.0;

  static Gate ry_prep(int q) { return {GateKind::kRyPrep, q}; }
  static Gate ry_unprep(int q) { return {GateKind::kRyUnprep, q}; }
  static Gate not_gate(int q) { return {GateKind::kNot, q}; }
  static Gate toffoli(int c1, int c2, int t) {
    return {GateKind::kToffoli, c1, c2, t};
  }
  static Gate z_phase(int q, double theta) {
    return {GateKind::kZPhase, q, -1, -1, theta};
  }
  static Gate zz_phase(int q1, int q2, double theta) {
    return {GateKind::kZzPhase, q1, q2, -1, theta};
  }
  static Gate global_phase(double theta) {
    return {GateKind::kGlobalPhase, -1, -1, -1, theta};
  }
  /// q0 indexes Circuit::evolutions, q1 is the number-register base qubit.
  static Gate diag_evolution(int payload, int number_base) {
    return {GateKind::kDiagEvolution, payload, number_base};
  }

  int arity() const;
};

struct Circuit {
  RegisterLayout layout;
  std::vector<Gate> gates;
  std::vector<IsingCoefficients> evolutions;

  std::size_t count_kind(GateKind kind) const;
};

/// Factor exp(-i pi H / 2^(p-1)) into commuting two-qubit and one-qubit
/// phase gates plus one global phase: n*p ZZPHASE, n+p ZPHASE, 1 GLOBALPHASE.
/// `number_base` is the first qubit of the number register (default n).
Circuit decompose_evolution(const IsingCoefficients& coeffs, int p,
                            int number_base = -1);

/// NOT every input qubit, then AND them into kappa through a balanced
/// Toffoli tree: kappa flips iff all inputs were |0> before the NOTs.
Circuit build_and_network(const RegisterLayout& layout);

/// Full pipelines, decomposed to exportable gates.
Circuit build_amplitude_circuit(const Instance& inst);
Circuit build_physical_circuit(const Instance& inst);

/// Text export: header lines `# qubits N` and `# layout ...`, then one gate
/// per line. DIAG_EVOLUTION gates are lowered via decompose_evolution so
/// every emitted line fits `GATE q0 [q1 [q2]] [param]`.
std::string emit_circuit(const Circuit& circuit);

/// Inverse of emit_circuit. Throws ParseError on malformed text.
Circuit parse_circuit(std::string_view text);

}  // namespace partcount
