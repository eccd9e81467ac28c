#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "partcount/counting.hpp"
#include "partcount/emulator.hpp"
#include "partcount/instance.hpp"

namespace partcount {

struct Spectrum {
  std::vector<double> times;
  std::vector<std::complex<double>> values;          // C(t) samples
  double zero_freq = 0.0;                            // discrete zero-frequency average
  std::vector<std::pair<double, double>> omega_grid; // (omega, |S| estimate)
};

/// C(t) = prod_j cos(a_j t).
std::complex<double> correlation_closed(const Instance& inst, double t);

/// C(t) via the n-qubit state vector: z-string, x-rotations exp(-i H_x t),
/// z-string, inverse rotations, overlap with the all-up state.
std::complex<double> correlation_emulated(const Instance& inst, double t,
                                          const EmulatorConfig& cfg = {});

/// (1/M') sum_m exp(-2 pi i m delta / M') C(2 pi m / M'), real part.
/// Equals n_s / 2^n for any M' >= M; throws std::invalid_argument below M.
double zero_freq_estimate(const Instance& inst, std::uint64_t samples,
                          kernels::Isa isa = kernels::active_isa());

/// Minimum observation time needed to resolve n_s = 1 from 0: 2^n * pi.
double observation_bound(int n);

/// Qualitative scan: C(t) on n_t uniform samples of [0, T], rectangular-
/// window Fourier magnitudes on the omega grid, zero_freq at M' = M.
Spectrum spectrum_scan(const Instance& inst, double omega_max, int n_omega,
                       double t_max, int n_t);

/// CountResult wrapper around zero_freq_estimate at M' = M.
CountResult count_spectral(const Instance& inst,
                           kernels::Isa isa = kernels::active_isa());

}  // namespace partcount
