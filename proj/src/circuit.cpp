#include "partcount/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace partcount {

namespace {

constexpr double kPi = std::numbers::pi;

/// Shortest decimal form that parses back to the same double.
std::string format_param(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kRyPrep: return "RY_PREP";
    case GateKind::kRyUnprep: return "RY_UNPREP";
    case GateKind::kNot: return "NOT";
    case GateKind::kToffoli: return "TOFFOLI";
    case GateKind::kZPhase: return "ZPHASE";
    case GateKind::kZzPhase: return "ZZPHASE";
    case GateKind::kGlobalPhase: return "GLOBALPHASE";
    case GateKind::kDiagEvolution: return "DIAG_EVOLUTION";
  }
  return "?";
}

bool gate_has_param(GateKind kind) {
  return kind == GateKind::kZPhase || kind == GateKind::kZzPhase ||
         kind == GateKind::kGlobalPhase;
}

}  // namespace

RegisterLayout RegisterLayout::amplitude(int n, int p, int q) {
  RegisterLayout l;
  l.n_spins = n;
  l.p_number = p;
  l.q_constraint = q;
  l.ancillas = 0;
  l.kappa_index = -1;
  l.total_qubits = n + p + q;
  return l;
}

RegisterLayout RegisterLayout::physical(int n, int p) {
  RegisterLayout l;
  l.n_spins = n;
  l.p_number = p;
  const int inputs = n + p;
  l.ancillas = inputs > 2 ? inputs - 2 : 0;
  l.kappa_index = inputs + l.ancillas;
  l.total_qubits = l.kappa_index + 1;
  return l;
}

double IsingCoefficients::energy(std::uint64_t basis) const {
  const int nn = n();
  const int p = number_qubits;
  double e = constant;
  for (int j = 0; j < nn; ++j) {
    const double sj = (basis >> j) & 1 ? -1.0 : 1.0;
    e -= spin_field[j] * sj;
    for (int l = 0; l < p; ++l) {
      const double sl = (basis >> (nn + l)) & 1 ? -1.0 : 1.0;
      e -= coupling_at(j, l) * sj * sl;
    }
  }
  for (int l = 0; l < p; ++l) {
    const double sl = (basis >> (nn + l)) & 1 ? -1.0 : 1.0;
    e -= number_field[l] * sl;
  }
  return e;
}

IsingCoefficients make_ising_coefficients(const std::vector<std::uint64_t>& values,
                                          std::int64_t delta, int p) {
  IsingCoefficients c;
  c.values = values;
  c.delta = delta;
  c.number_qubits = p;
  const int n = c.n();
  const double half_span = std::ldexp(1.0, p - 1) - 0.5;  // (2^p - 1)/2
  c.coupling.resize(static_cast<std::size_t>(n) * p);
  c.spin_field.resize(n);
  c.number_field.resize(p);
  for (int j = 0; j < n; ++j) {
    const double a = static_cast<double>(values[j]);
    c.spin_field[j] = a * half_span;
    for (int l = 0; l < p; ++l) {
      // Register qubit l (0-based) has bit weight 2^l; the coefficient
      // halves it because bit = (1 - s_l) / 2.
      c.coupling[static_cast<std::size_t>(j) * p + l] = -a * std::ldexp(1.0, l - 1);
    }
  }
  const double delta_d = static_cast<double>(delta);
  for (int l = 0; l < p; ++l) {
    c.number_field[l] = delta_d * std::ldexp(1.0, l - 1);
  }
  c.constant = delta_d * half_span;
  return c;
}

IsingCoefficients make_ising_coefficients(const Instance& inst, int p) {
  const auto params = derive_params(inst);
  return make_ising_coefficients(inst.values(), params.delta, p);
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::kRyPrep:
    case GateKind::kRyUnprep:
    case GateKind::kNot:
    case GateKind::kZPhase:
      return 1;
    case GateKind::kZzPhase:
      return 2;
    case GateKind::kToffoli:
      return 3;
    case GateKind::kGlobalPhase:
    case GateKind::kDiagEvolution:
      return 0;
  }
  return 0;
}

std::size_t Circuit::count_kind(GateKind kind) const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.kind == kind ? 1 : 0;
  return n;
}

Circuit decompose_evolution(const IsingCoefficients& coeffs, int p,
                            int number_base) {
  const int n = coeffs.n();
  if (number_base < 0) number_base = n;
  Circuit circuit;
  circuit.layout = RegisterLayout::amplitude(n, p);
  circuit.layout.total_qubits = std::max(n + p, number_base + p);
  const double tau = std::ldexp(kPi, -(p - 1));  // pi / 2^(p-1)
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < p; ++l) {
      circuit.gates.push_back(
          Gate::zz_phase(j, number_base + l, -tau * coeffs.coupling_at(j, l)));
    }
  }
  for (int j = 0; j < n; ++j) {
    circuit.gates.push_back(Gate::z_phase(j, -tau * coeffs.spin_field[j]));
  }
  for (int l = 0; l < p; ++l) {
    circuit.gates.push_back(
        Gate::z_phase(number_base + l, -tau * coeffs.number_field[l]));
  }
  circuit.gates.push_back(Gate::global_phase(tau * coeffs.constant));
  return circuit;
}

Circuit build_and_network(const RegisterLayout& layout) {
  const int inputs = layout.inputs();
  if (layout.kappa_index < 0 || layout.ancillas < inputs - 2) {
    throw std::invalid_argument("layout lacks the ancillas for an AND network");
  }
  Circuit circuit;
  circuit.layout = layout;
  for (int q = 0; q < inputs; ++q) circuit.gates.push_back(Gate::not_gate(q));

  std::vector<int> operands(inputs);
  for (int q = 0; q < inputs; ++q) operands[q] = q;
  int next_ancilla = inputs;
  while (operands.size() > 1) {
    std::vector<int> next_level;
    for (std::size_t i = 0; i < operands.size(); i += 2) {
      if (i + 1 == operands.size()) {
        next_level.push_back(operands[i]);  // odd operand promoted unchanged
        break;
      }
      const int target =
          operands.size() == 2 ? layout.kappa_index : next_ancilla++;
      circuit.gates.push_back(Gate::toffoli(operands[i], operands[i + 1], target));
      next_level.push_back(target);
    }
    operands = std::move(next_level);
  }
  return circuit;
}

namespace {

void append_prepare(Circuit& circuit, int first, int last_exclusive, bool inverse) {
  if (!inverse) {
    for (int q = first; q < last_exclusive; ++q) {
      circuit.gates.push_back(Gate::ry_prep(q));
    }
  } else {
    for (int q = last_exclusive - 1; q >= first; --q) {
      circuit.gates.push_back(Gate::ry_unprep(q));
    }
  }
}

}  // namespace

Circuit build_amplitude_circuit(const Instance& inst) {
  const auto params = derive_params(inst);
  const int n = inst.size();
  const int p = params.number_qubits;
  int q = 0;
  if (inst.constraint()) {
    const std::uint64_t K = *params.cardinality_modulus;
    q = std::max(1, static_cast<int>(std::bit_width(K - 1)));
  }
  Circuit circuit;
  circuit.layout = RegisterLayout::amplitude(n, p, q);
  append_prepare(circuit, 0, n + p + q, false);

  circuit.evolutions.push_back(make_ising_coefficients(inst, p));
  circuit.gates.push_back(Gate::diag_evolution(0, n));
  if (inst.constraint()) {
    const std::vector<std::uint64_t> ones(inst.values().size(), 1);
    circuit.evolutions.push_back(
        make_ising_coefficients(ones, *inst.constraint(), q));
    circuit.gates.push_back(Gate::diag_evolution(1, n + p));
  }
  append_prepare(circuit, 0, n + p + q, true);
  return circuit;
}

Circuit build_physical_circuit(const Instance& inst) {
  if (inst.constraint()) {
    throw std::invalid_argument("physical mode does not support constraints");
  }
  const auto params = derive_params(inst);
  const int n = inst.size();
  const int p = params.number_qubits;
  Circuit circuit;
  circuit.layout = RegisterLayout::physical(n, p);
  append_prepare(circuit, 0, n + p, false);
  circuit.evolutions.push_back(make_ising_coefficients(inst, p));
  circuit.gates.push_back(Gate::diag_evolution(0, n));
  append_prepare(circuit, 0, n + p, true);
  const Circuit and_net = build_and_network(circuit.layout);
  circuit.gates.insert(circuit.gates.end(), and_net.gates.begin(),
                       and_net.gates.end());
  return circuit;
}

std::string emit_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "# qubits " << circuit.layout.total_qubits << "\n";
  out << "# layout n=" << circuit.layout.n_spins
      << " p=" << circuit.layout.p_number;
  if (circuit.layout.q_constraint > 0) {
    out << " q=" << circuit.layout.q_constraint;
  }
  out << " anc=" << circuit.layout.ancillas
      << " kappa=" << circuit.layout.kappa_index << "\n";

  auto emit_gate = [&out](const Gate& g) {
    out << gate_name(g.kind);
    const int arity = g.arity();
    if (arity >= 1) out << ' ' << g.q0;
    if (arity >= 2) out << ' ' << g.q1;
    if (arity >= 3) out << ' ' << g.q2;
    if (gate_has_param(g.kind)) out << ' ' << format_param(g.param);
    out << "\n";
  };
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::kDiagEvolution) {
      const auto& coeffs = circuit.evolutions.at(g.q0);
      const Circuit lowered =
          decompose_evolution(coeffs, coeffs.number_qubits, g.q1);
      for (const auto& lg : lowered.gates) emit_gate(lg);
    } else {
      emit_gate(g);
    }
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Circuit circuit;
  bool have_qubits = false, have_layout = false;

  auto parse_kv = [](const std::string& token, const char* key) {
    const std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0) {
      throw ParseError("expected '" + prefix + "...' in layout header");
    }
    return std::atoi(token.c_str() + prefix.size());
  };

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "#") {
      std::string what;
      ls >> what;
      if (what == "qubits") {
        if (!(ls >> circuit.layout.total_qubits)) {
          throw ParseError("malformed '# qubits' header");
        }
        have_qubits = true;
      } else if (what == "layout") {
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.size() < 4) throw ParseError("malformed '# layout' header");
        std::size_t i = 0;
        circuit.layout.n_spins = parse_kv(tokens[i++], "n");
        circuit.layout.p_number = parse_kv(tokens[i++], "p");
        if (tokens[i].rfind("q=", 0) == 0) {
          circuit.layout.q_constraint = parse_kv(tokens[i++], "q");
        }
        if (i + 2 != tokens.size()) throw ParseError("malformed '# layout' header");
        circuit.layout.ancillas = parse_kv(tokens[i++], "anc");
        circuit.layout.kappa_index = parse_kv(tokens[i++], "kappa");
        have_layout = true;
      } else {
        throw ParseError("unknown header line: " + line);
      }
      continue;
    }
    if (!have_qubits || !have_layout) {
      throw ParseError("gate line before circuit headers");
    }
    Gate g{GateKind::kNot};
    if (head == "RY_PREP") g.kind = GateKind::kRyPrep;
    else if (head == "RY_UNPREP") g.kind = GateKind::kRyUnprep;
    else if (head == "NOT") g.kind = GateKind::kNot;
    else if (head == "TOFFOLI") g.kind = GateKind::kToffoli;
    else if (head == "ZPHASE") g.kind = GateKind::kZPhase;
    else if (head == "ZZPHASE") g.kind = GateKind::kZzPhase;
    else if (head == "GLOBALPHASE") g.kind = GateKind::kGlobalPhase;
    else throw ParseError("unknown gate '" + head + "'");

    const int arity = g.arity();
    int* slots[3] = {&g.q0, &g.q1, &g.q2};
    for (int k = 0; k < arity; ++k) {
      if (!(ls >> *slots[k])) throw ParseError("missing qubit operand: " + line);
      if (*slots[k] < 0 || *slots[k] >= circuit.layout.total_qubits) {
        throw ParseError("qubit index out of range: " + line);
      }
    }
    if (gate_has_param(g.kind)) {
      if (!(ls >> g.param)) throw ParseError("missing parameter: " + line);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens: " + line);
    if (g.kind == GateKind::kToffoli &&
        (g.q0 == g.q1 || g.q0 == g.q2 || g.q1 == g.q2)) {
      throw ParseError("TOFFOLI operands must be distinct: " + line);
    }
    circuit.gates.push_back(g);
  }
  if (!have_qubits || !have_layout) throw ParseError("missing circuit headers");
  return circuit;
}

}  // namespace partcount
