#include "partcount/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace partcount {

namespace {

constexpr double kPi = std::numbers::pi;

// Phase flip by the parity of down spins: sigma_1^z ... sigma_n^z.
void apply_z_string(QuantumState& state) {
  auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) & 1) amps[i] = -amps[i];
  }
}

// exp(i theta sigma^x) = cos(theta) 1 + i sin(theta) sigma^x.
void apply_x_rotation(QuantumState& state, int qubit, double theta,
                      const EmulatorConfig& cfg) {
  const std::complex<double> c(std::cos(theta), 0.0);
  const std::complex<double> is(0.0, std::sin(theta));
  const std::complex<double> mtx[4] = {c, is, is, c};
  apply_matrix(state, qubit, mtx, cfg);
}

}  // namespace

std::complex<double> correlation_closed(const Instance& inst, double t) {
  double prod = 1.0;
  for (auto a : inst.values()) {
    prod *= std::cos(static_cast<double>(a) * t);
  }
  return {prod, 0.0};
}

std::complex<double> correlation_emulated(const Instance& inst, double t,
                                          const EmulatorConfig& cfg) {
  const int n = inst.size();
  if (n > cfg.qubit_budget) {
    throw BudgetError("correlation needs " + std::to_string(n) + " qubits");
  }
  QuantumState state(n);  // |Phi> = all spins up
  apply_z_string(state);
  for (int j = 0; j < n; ++j) {
    // e^{-i H_x t} with H_x = -sum_j a_j sigma_j^x / 2
    apply_x_rotation(state, j, static_cast<double>(inst.values()[j]) * t / 2.0, cfg);
  }
  apply_z_string(state);
  for (int j = 0; j < n; ++j) {
    apply_x_rotation(state, j, -static_cast<double>(inst.values()[j]) * t / 2.0, cfg);
  }
  return state.amplitude(0);
}

double zero_freq_estimate(const Instance& inst, std::uint64_t samples,
                          kernels::Isa isa) {
  const auto params = derive_params(inst);
  if (samples < params.modulus) {
    throw std::invalid_argument(
        "sample count below M would alias the zero-frequency weight");
  }
  std::vector<kernels::CosTrack> tracks;
  tracks.reserve(inst.values().size());
  for (auto a : inst.values()) tracks.push_back({a % samples, 0.0});
  const std::uint64_t d = static_cast<std::uint64_t>(params.delta) % samples;
  const auto sum = kernels::phase_cosine_sum(samples, d, tracks, 0, samples, isa);
  return sum.real() / static_cast<double>(samples);
}

double observation_bound(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return std::ldexp(kPi, n);
}

Spectrum spectrum_scan(const Instance& inst, double omega_max, int n_omega,
                       double t_max, int n_t) {
  if (!(t_max > 0.0)) throw std::invalid_argument("T must be positive");
  if (n_t < 2) throw std::invalid_argument("need at least two time samples");
  if (n_omega < 1) throw std::invalid_argument("need at least one omega point");

  Spectrum spec;
  spec.times.reserve(n_t);
  spec.values.reserve(n_t);
  const double dt = t_max / static_cast<double>(n_t - 1);
  for (int i = 0; i < n_t; ++i) {
    const double t = dt * static_cast<double>(i);
    spec.times.push_back(t);
    spec.values.push_back(correlation_closed(inst, t));
  }
  const auto params = derive_params(inst);
  spec.zero_freq = zero_freq_estimate(inst, params.modulus);

  spec.omega_grid.reserve(n_omega);
  for (int k = 0; k < n_omega; ++k) {
    const double omega =
        n_omega == 1 ? 0.0
                     : omega_max * static_cast<double>(k) /
                           static_cast<double>(n_omega - 1);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < n_t; ++i) {
      const double phase = omega * spec.times[i];
      acc += spec.values[i] *
             std::complex<double>(std::cos(phase), std::sin(phase));
    }
    spec.omega_grid.emplace_back(omega, std::abs(acc) * dt);
  }
  return spec;
}

CountResult count_spectral(const Instance& inst, kernels::Isa isa) {
  if (inst.constraint()) {
    throw std::invalid_argument("spectral counting is unconstrained only");
  }
  const auto params = derive_params(inst);
  const double est =
      std::ldexp(zero_freq_estimate(inst, params.modulus, isa), inst.size());
  long long rounded = std::llround(est);
  if (rounded < 0) rounded = 0;
  const double residual = std::abs(est - static_cast<double>(rounded));
  if (!(residual < kResidualTolerance)) {
    throw PrecisionError("spectral estimate " + std::to_string(est) +
                         " has residual " + std::to_string(residual));
  }
  return {static_cast<std::uint64_t>(rounded), CountMethod::kSpectral, residual};
}

}  // namespace partcount
