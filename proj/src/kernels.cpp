#include "partcount/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace partcount::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

std::uint64_t mulmod_init(std::uint64_t m, std::uint64_t step, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(m) * step) % modulus);
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#ifdef PARTCOUNT_WITH_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa picked = [] {
    if (const char* env = std::getenv("PARTCOUNT_ISA")) {
      const std::string want(env);
      if (want == "scalar") return Isa::kScalar;
      if (want == "avx2") {
        if (!avx2_available()) {
          throw std::runtime_error("PARTCOUNT_ISA=avx2 but AVX2 is unavailable");
        }
        return Isa::kAvx2;
      }
      throw std::runtime_error("PARTCOUNT_ISA must be scalar or avx2");
    }
    return avx2_available() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return picked;
}

// ---------------------------------------------------------------------------
// phase_cosine_sum
// ---------------------------------------------------------------------------

namespace detail {

std::complex<double> phase_cosine_sum_scalar(std::uint64_t modulus,
                                             std::uint64_t phase_step,
                                             std::span<const CosTrack> tracks,
                                             std::uint64_t m0,
                                             std::uint64_t count) {
  const double inv_mod = 1.0 / static_cast<double>(modulus);
  const std::size_t n_tracks = tracks.size();

  std::vector<std::uint64_t> residue(n_tracks);
  std::vector<std::uint64_t> step(n_tracks);
  std::vector<double> offset(n_tracks);
  for (std::size_t j = 0; j < n_tracks; ++j) {
    step[j] = tracks[j].step % modulus;
    residue[j] = mulmod_init(m0, step[j], modulus);
    offset[j] = tracks[j].offset;
  }
  std::uint64_t phase_residue = mulmod_init(m0, phase_step % modulus, modulus);
  const std::uint64_t phase_inc = phase_step % modulus;

  Neumaier re, im;
  for (std::uint64_t i = 0; i < count; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n_tracks; ++j) {
      double u = static_cast<double>(residue[j]) * inv_mod + offset[j];
      if (u >= 1.0) u -= 1.0;
      prod *= std::cos(kTwoPi * u);
      residue[j] += step[j];
      if (residue[j] >= modulus) residue[j] -= modulus;
    }
    const double up = static_cast<double>(phase_residue) * inv_mod;
    re.add(prod * std::cos(kTwoPi * up));
    im.add(-prod * std::sin(kTwoPi * up));
    phase_residue += phase_inc;
    if (phase_residue >= modulus) phase_residue -= modulus;
  }
  return {re.value(), im.value()};
}

}  // namespace detail

#ifdef PARTCOUNT_WITH_AVX2
namespace detail_avx2 {
std::complex<double> phase_cosine_sum_avx2(std::uint64_t modulus,
                                           std::uint64_t phase_step,
                                           std::span<const CosTrack> tracks,
                                           std::uint64_t m0, std::uint64_t count);
void apply_one_qubit_avx2(std::complex<double>* amps, std::size_t count,
                          int qubit, const std::complex<double> mtx[4]);
void apply_phase_mod_avx2(std::complex<double>* amps, std::size_t count,
                          int spin_bits, int reg_shift,
                          std::span<const std::uint32_t> w_mod,
                          const PhaseTable& table);
}  // namespace detail_avx2
#endif

std::complex<double> phase_cosine_sum(std::uint64_t modulus,
                                      std::uint64_t phase_step,
                                      std::span<const CosTrack> tracks,
                                      std::uint64_t m0, std::uint64_t count,
                                      Isa isa) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
#ifdef PARTCOUNT_WITH_AVX2
  if (isa == Isa::kAvx2) {
    return detail_avx2::phase_cosine_sum_avx2(modulus, phase_step, tracks, m0, count);
  }
#else
  if (isa == Isa::kAvx2) throw std::runtime_error("AVX2 lane not built");
#endif
  return detail::phase_cosine_sum_scalar(modulus, phase_step, tracks, m0, count);
}

// ---------------------------------------------------------------------------
// apply_one_qubit
// ---------------------------------------------------------------------------

namespace detail {

void apply_one_qubit_scalar(std::complex<double>* amps, std::size_t count,
                            int qubit, const std::complex<double> mtx[4]) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const std::complex<double> a0 = amps[i0];
      const std::complex<double> a1 = amps[i1];
      amps[i0] = mtx[0] * a0 + mtx[1] * a1;
      amps[i1] = mtx[2] * a0 + mtx[3] * a1;
    }
  }
}

}  // namespace detail

void apply_one_qubit(std::complex<double>* amps, std::size_t count, int qubit,
                     const std::complex<double> mtx[4], Isa isa) {
  assert(count >= (std::size_t{2} << qubit));
#ifdef PARTCOUNT_WITH_AVX2
  if (isa == Isa::kAvx2) {
    detail_avx2::apply_one_qubit_avx2(amps, count, qubit, mtx);
    return;
  }
#else
  if (isa == Isa::kAvx2) throw std::runtime_error("AVX2 lane not built");
#endif
  detail::apply_one_qubit_scalar(amps, count, qubit, mtx);
}

// ---------------------------------------------------------------------------
// apply_phase_mod
// ---------------------------------------------------------------------------

PhaseTable PhaseTable::negative_root(int width) {
  if (width < 0 || width > 26) {
    throw std::invalid_argument("phase table width must be in [0, 26]");
  }
  PhaseTable t;
  t.width = width;
  t.lo_bits = width < 14 ? width : 14;
  const int hi_bits = width - t.lo_bits;
  const std::size_t lo_size = std::size_t{1} << t.lo_bits;
  const std::size_t hi_size = std::size_t{1} << hi_bits;
  const double scale = std::ldexp(kTwoPi, -width);  // 2*pi / 2^width
  t.lo_re.resize(lo_size);
  t.lo_im.resize(lo_size);
  for (std::size_t k = 0; k < lo_size; ++k) {
    t.lo_re[k] = std::cos(scale * static_cast<double>(k));
    t.lo_im[k] = -std::sin(scale * static_cast<double>(k));
  }
  t.hi_re.resize(hi_size);
  t.hi_im.resize(hi_size);
  for (std::size_t k = 0; k < hi_size; ++k) {
    const double angle = scale * static_cast<double>(k << t.lo_bits);
    t.hi_re[k] = std::cos(angle);
    t.hi_im[k] = -std::sin(angle);
  }
  return t;
}

std::complex<double> PhaseTable::at(std::uint32_t k) const {
  const std::uint32_t lo = k & ((std::uint32_t{1} << lo_bits) - 1);
  const std::uint32_t hi = k >> lo_bits;
  const std::complex<double> a(lo_re[lo], lo_im[lo]);
  const std::complex<double> b(hi_re[hi], hi_im[hi]);
  return a * b;
}

namespace detail {

void apply_phase_mod_scalar(std::complex<double>* amps, std::size_t count,
                            int spin_bits, int reg_shift,
                            std::span<const std::uint32_t> w_mod,
                            const PhaseTable& table) {
  const std::uint64_t spin_mask = (std::uint64_t{1} << spin_bits) - 1;
  const std::uint64_t reg_mask = (std::uint64_t{1} << table.width) - 1;
  const std::uint32_t lo_mask = (std::uint32_t{1} << table.lo_bits) - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = i & spin_mask;
    const std::uint64_t v = (i >> reg_shift) & reg_mask;
    const std::uint32_t k =
        static_cast<std::uint32_t>((v * w_mod[s]) & reg_mask);
    const std::uint32_t lo = k & lo_mask;
    const std::uint32_t hi = k >> table.lo_bits;
    const std::complex<double> phase =
        std::complex<double>(table.lo_re[lo], table.lo_im[lo]) *
        std::complex<double>(table.hi_re[hi], table.hi_im[hi]);
    amps[i] *= phase;
  }
}

}  // namespace detail

void apply_phase_mod(std::complex<double>* amps, std::size_t count,
                     int spin_bits, int reg_shift,
                     std::span<const std::uint32_t> w_mod,
                     const PhaseTable& table, Isa isa) {
  assert(w_mod.size() == (std::size_t{1} << spin_bits));
  assert(reg_shift >= spin_bits);
#ifdef PARTCOUNT_WITH_AVX2
  if (isa == Isa::kAvx2) {
    detail_avx2::apply_phase_mod_avx2(amps, count, spin_bits, reg_shift, w_mod, table);
    return;
  }
#else
  if (isa == Isa::kAvx2) throw std::runtime_error("AVX2 lane not built");
#endif
  detail::apply_phase_mod_scalar(amps, count, spin_bits, reg_shift, w_mod, table);
}

}  // namespace partcount::kernels
