#include "partcount/methods.hpp"

#include <stdexcept>

#include "partcount/spectral.hpp"

namespace partcount {

CountResult count_by_method(const Instance& inst, CountMethod method,
                            const EmulatorConfig& cfg) {
  switch (method) {
    case CountMethod::kBruteforce:
      return count_bruteforce(inst);
    case CountMethod::kFormula:
      return inst.constraint() ? count_formula_constrained(inst, cfg.isa)
                               : count_formula(inst, cfg.isa);
    case CountMethod::kDp:
      return count_dp(inst);
    case CountMethod::kQuantumAmplitude:
      return inst.constraint() ? run_amplitude_mode_constrained(inst, cfg)
                               : run_amplitude_mode(inst, cfg);
    case CountMethod::kQuantumPhysical:
      return run_physical_mode(inst, cfg).result;
    case CountMethod::kSpectral:
      return count_spectral(inst, cfg.isa);
  }
  throw std::logic_error("unreachable count method");
}

CountMethod parse_method_name(const std::string& name) {
  if (name == "bruteforce") return CountMethod::kBruteforce;
  if (name == "formula") return CountMethod::kFormula;
  if (name == "dp") return CountMethod::kDp;
  if (name == "quantum") return CountMethod::kQuantumAmplitude;
  if (name == "physical") return CountMethod::kQuantumPhysical;
  if (name == "spectral") return CountMethod::kSpectral;
  throw std::invalid_argument(
      "method must be one of bruteforce|formula|dp|quantum|physical|spectral");
}

}  // namespace partcount
