#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace partcount::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

/// True when the running CPU exposes AVX2 + FMA (and the lane was built).
bool avx2_available();

/// Auto-detected lane, overridable with PARTCOUNT_ISA=scalar|avx2.
Isa active_isa();

// ---------------------------------------------------------------------------
// Trace-formula accumulation
// ---------------------------------------------------------------------------

/// One cosine factor cos(2*pi*(((m*step) mod modulus)/modulus + offset)).
/// `offset` is a fraction of a full turn in [0, 1).
struct CosTrack {
  std::uint64_t step = 0;  // already reduced mod modulus
  double offset = 0.0;
};

/// Sum over m in [m0, m0+count) of
///   exp(-2*pi*i*((m*phase_step) mod modulus)/modulus) * prod_j cos_j(m),
/// accumulated with Neumaier-compensated summation.
std::complex<double> phase_cosine_sum(std::uint64_t modulus,
                                      std::uint64_t phase_step,
                                      std::span<const CosTrack> tracks,
                                      std::uint64_t m0, std::uint64_t count,
                                      Isa isa);

// ---------------------------------------------------------------------------
// State-vector kernels
// ---------------------------------------------------------------------------

/// Apply the row-major 2x2 matrix {m00, m01, m10, m11} to every amplitude
/// pair split by `qubit` (little-endian bit of the basis index).
void apply_one_qubit(std::complex<double>* amps, std::size_t count, int qubit,
                     const std::complex<double> mtx[4], Isa isa);

/// Factored table of the 2^width roots of unity:
///   phase(k) = lo[k & (2^lo_bits - 1)] * hi[k >> lo_bits].
/// The hi table holds exactly (1, 0) when width <= lo_bits, so the factored
/// product is bit-identical to a direct table in that regime.
struct PhaseTable {
  int width = 0;
  int lo_bits = 0;
  std::vector<double> lo_re, lo_im, hi_re, hi_im;

  /// phase(k) = exp(-2*pi*i*k / 2^width)
  static PhaseTable negative_root(int width);

  std::complex<double> at(std::uint32_t k) const;
};

/// amps[i] *= phase((reg(i) * w_mod[spin(i)]) mod 2^width) where
///   spin(i) = i & (2^spin_bits - 1),
///   reg(i)  = (i >> reg_shift) & (2^width - 1).
/// w_mod has 2^spin_bits entries, each already reduced mod 2^width.
/// Requires width <= 26 so index products stay exact in doubles.
void apply_phase_mod(std::complex<double>* amps, std::size_t count,
                     int spin_bits, int reg_shift,
                     std::span<const std::uint32_t> w_mod,
                     const PhaseTable& table, Isa isa);

#ifdef PARTCOUNT_WITH_AVX2
/// 4-lane sine/cosine on [0, 2*pi); exposed for accuracy tests.
void sincos4(const double angles[4], double sines[4], double cosines[4]);
#endif

}  // namespace partcount::kernels
