// AVX2/FMA variants of the arithmetic kernels. Compiled with -mavx2 -mfma and
// selected at runtime; every function here must match the scalar reference in
// kernels.cpp (equivalence-tested in tests/test_kernels.cpp).

#include <immintrin.h>

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>

#include "partcount/kernels.hpp"

namespace partcount::kernels {

namespace detail {
// scalar reference, used for loop tails
std::complex<double> phase_cosine_sum_scalar(std::uint64_t modulus,
                                             std::uint64_t phase_step,
                                             std::span<const CosTrack> tracks,
                                             std::uint64_t m0,
                                             std::uint64_t count);
void apply_phase_mod_scalar(std::complex<double>* amps, std::size_t count,
                            int spin_bits, int reg_shift,
                            std::span<const std::uint32_t> w_mod,
                            const PhaseTable& table);
}  // namespace detail

namespace detail_avx2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fdlibm kernel polynomial coefficients for |t| <= pi/4.
constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;
constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632679489655800e+00;
constexpr double kPio2Lo = 6.12323399573676603587e-17;

inline __m256d u64_to_pd(__m256i v) {
  // Exact for v < 2^52.
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)),
                       _mm256_set1_pd(0x1.0p52));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Simultaneous sine and cosine for angles in [-2*pi, 2*pi].
inline void sincos_pd(__m256d theta, __m256d* sines, __m256d* cosines) {
  const __m256d q = _mm256_round_pd(
      _mm256_mul_pd(theta, _mm256_set1_pd(kTwoOverPi)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d t = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), theta);
  t = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), t);

  const __m256d z = _mm256_mul_pd(t, t);

  __m256d rs = _mm256_fmadd_pd(z, _mm256_set1_pd(kS6), _mm256_set1_pd(kS5));
  rs = _mm256_fmadd_pd(z, rs, _mm256_set1_pd(kS4));
  rs = _mm256_fmadd_pd(z, rs, _mm256_set1_pd(kS3));
  rs = _mm256_fmadd_pd(z, rs, _mm256_set1_pd(kS2));
  rs = _mm256_fmadd_pd(z, rs, _mm256_set1_pd(kS1));
  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(z, t), rs, t);

  __m256d rc = _mm256_fmadd_pd(z, _mm256_set1_pd(kC6), _mm256_set1_pd(kC5));
  rc = _mm256_fmadd_pd(z, rc, _mm256_set1_pd(kC4));
  rc = _mm256_fmadd_pd(z, rc, _mm256_set1_pd(kC3));
  rc = _mm256_fmadd_pd(z, rc, _mm256_set1_pd(kC2));
  rc = _mm256_fmadd_pd(z, rc, _mm256_set1_pd(kC1));
  const __m256d hz = _mm256_mul_pd(z, _mm256_set1_pd(0.5));
  const __m256d w = _mm256_sub_pd(_mm256_set1_pd(1.0), hz);
  const __m256d tail = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(1.0), w), hz);
  const __m256d c = _mm256_add_pd(
      w, _mm256_add_pd(tail, _mm256_mul_pd(_mm256_mul_pd(z, z), rc)));

  // Quadrant selection from q mod 4.
  const __m128i qi = _mm256_cvtpd_epi32(q);
  const __m256d swap_mask = _mm256_castsi256_pd(
      _mm256_cvtepi32_epi64(_mm_slli_epi32(qi, 31)));
  const __m256d sin_base = _mm256_blendv_pd(s, c, swap_mask);
  const __m256d cos_base = _mm256_blendv_pd(c, s, swap_mask);

  const __m256d neg_zero = _mm256_set1_pd(-0.0);
  const __m256d sin_flip = _mm256_and_pd(
      _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_slli_epi32(qi, 30))),
      neg_zero);
  const __m256d cos_flip = _mm256_and_pd(
      _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
          _mm_slli_epi32(_mm_add_epi32(qi, _mm_set1_epi32(1)), 30))),
      neg_zero);

  *sines = _mm256_xor_pd(sin_base, sin_flip);
  *cosines = _mm256_xor_pd(cos_base, cos_flip);
}

struct NeumaierLanes {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  inline void add(__m256d x) {
    const __m256d abs_mask = _mm256_castsi256_pd(
        _mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big = _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask),
                                      _mm256_and_pd(x, abs_mask), _CMP_GE_OQ);
    const __m256d path1 = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d path2 = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(path2, path1, big));
    sum = t;
  }

  double total() const {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    return ((s[0] + s[1]) + (s[2] + s[3])) + ((c[0] + c[1]) + (c[2] + c[3]));
  }
};

inline std::uint64_t mulmod(std::uint64_t m, std::uint64_t step, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(m) * step) % modulus);
}

// amps (as doubles) times per-complex phases given as SoA lanes.
inline void scale_pairs(double* d, __m256d pr, __m256d pi) {
  const __m256d v0 = _mm256_loadu_pd(d);
  const __m256d v1 = _mm256_loadu_pd(d + 4);
  const __m256d pr01 = _mm256_permute4x64_pd(pr, 0x50);
  const __m256d pi01 = _mm256_permute4x64_pd(pi, 0x50);
  const __m256d pr23 = _mm256_permute4x64_pd(pr, 0xFA);
  const __m256d pi23 = _mm256_permute4x64_pd(pi, 0xFA);
  const __m256d r0 = _mm256_addsub_pd(_mm256_mul_pd(v0, pr01),
                                      _mm256_mul_pd(swap_pairs(v0), pi01));
  const __m256d r1 = _mm256_addsub_pd(_mm256_mul_pd(v1, pr23),
                                      _mm256_mul_pd(swap_pairs(v1), pi23));
  _mm256_storeu_pd(d, r0);
  _mm256_storeu_pd(d + 4, r1);
}

// v times the broadcast complex constant (cr, ci).
inline __m256d cmul_const(__m256d v, __m256d cr, __m256d ci) {
  return _mm256_addsub_pd(_mm256_mul_pd(v, cr),
                          _mm256_mul_pd(swap_pairs(v), ci));
}

}  // namespace

void sincos4_impl(const double angles[4], double sines[4], double cosines[4]) {
  __m256d s, c;
  sincos_pd(_mm256_loadu_pd(angles), &s, &c);
  _mm256_storeu_pd(sines, s);
  _mm256_storeu_pd(cosines, c);
}

std::complex<double> phase_cosine_sum_avx2(std::uint64_t modulus,
                                           std::uint64_t phase_step,
                                           std::span<const CosTrack> tracks,
                                           std::uint64_t m0,
                                           std::uint64_t count) {
  const std::uint64_t main_count = count & ~std::uint64_t{3};
  std::complex<double> tail{0.0, 0.0};
  if (main_count < count) {
    tail = detail::phase_cosine_sum_scalar(modulus, phase_step, tracks,
                                           m0 + main_count, count - main_count);
  }
  if (main_count == 0) return tail;

  const std::size_t n_tracks = tracks.size();
  assert(n_tracks <= 31);
  __m256i residue[31];
  __m256i step4[31];
  __m256d offset[31];
  for (std::size_t j = 0; j < n_tracks; ++j) {
    const std::uint64_t st = tracks[j].step % modulus;
    residue[j] = _mm256_setr_epi64x(
        static_cast<long long>(mulmod(m0 + 0, st, modulus)),
        static_cast<long long>(mulmod(m0 + 1, st, modulus)),
        static_cast<long long>(mulmod(m0 + 2, st, modulus)),
        static_cast<long long>(mulmod(m0 + 3, st, modulus)));
    step4[j] = _mm256_set1_epi64x(static_cast<long long>((4 * st) % modulus));
    offset[j] = _mm256_set1_pd(tracks[j].offset);
  }
  const std::uint64_t pst = phase_step % modulus;
  __m256i phase_res = _mm256_setr_epi64x(
      static_cast<long long>(mulmod(m0 + 0, pst, modulus)),
      static_cast<long long>(mulmod(m0 + 1, pst, modulus)),
      static_cast<long long>(mulmod(m0 + 2, pst, modulus)),
      static_cast<long long>(mulmod(m0 + 3, pst, modulus)));
  const __m256i phase_step4 =
      _mm256_set1_epi64x(static_cast<long long>((4 * pst) % modulus));

  const __m256d inv_mod = _mm256_set1_pd(1.0 / static_cast<double>(modulus));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256i mod_minus_1 =
      _mm256_set1_epi64x(static_cast<long long>(modulus - 1));
  const __m256i mod_vec = _mm256_set1_epi64x(static_cast<long long>(modulus));
  const __m256d neg_zero = _mm256_set1_pd(-0.0);

  NeumaierLanes re, im;
  for (std::uint64_t i = 0; i < main_count; i += 4) {
    __m256d prod = one;
    for (std::size_t j = 0; j < n_tracks; ++j) {
      __m256d u = _mm256_fmadd_pd(u64_to_pd(residue[j]), inv_mod, offset[j]);
      const __m256d ge1 = _mm256_cmp_pd(u, one, _CMP_GE_OQ);
      u = _mm256_sub_pd(u, _mm256_and_pd(ge1, one));
      __m256d s, c;
      sincos_pd(_mm256_mul_pd(u, two_pi), &s, &c);
      prod = _mm256_mul_pd(prod, c);

      residue[j] = _mm256_add_epi64(residue[j], step4[j]);
      const __m256i over = _mm256_cmpgt_epi64(residue[j], mod_minus_1);
      residue[j] =
          _mm256_sub_epi64(residue[j], _mm256_and_si256(over, mod_vec));
    }
    const __m256d up = _mm256_mul_pd(u64_to_pd(phase_res), inv_mod);
    __m256d sp, cp;
    sincos_pd(_mm256_mul_pd(up, two_pi), &sp, &cp);
    re.add(_mm256_mul_pd(prod, cp));
    im.add(_mm256_xor_pd(_mm256_mul_pd(prod, sp), neg_zero));

    phase_res = _mm256_add_epi64(phase_res, phase_step4);
    const __m256i over = _mm256_cmpgt_epi64(phase_res, mod_minus_1);
    phase_res = _mm256_sub_epi64(phase_res, _mm256_and_si256(over, mod_vec));
  }
  return std::complex<double>(re.total(), im.total()) + tail;
}

void apply_one_qubit_avx2(std::complex<double>* amps, std::size_t count,
                          int qubit, const std::complex<double> mtx[4]) {
  double* d = reinterpret_cast<double*>(amps);
  const std::size_t stride = std::size_t{1} << qubit;
  if (qubit == 0) {
    // Pairs are adjacent; one 4-double vector holds both amplitudes.
    const __m256d col_a_re =
        _mm256_setr_pd(mtx[0].real(), mtx[0].real(), mtx[2].real(), mtx[2].real());
    const __m256d col_a_im =
        _mm256_setr_pd(mtx[0].imag(), mtx[0].imag(), mtx[2].imag(), mtx[2].imag());
    const __m256d col_b_re =
        _mm256_setr_pd(mtx[1].real(), mtx[1].real(), mtx[3].real(), mtx[3].real());
    const __m256d col_b_im =
        _mm256_setr_pd(mtx[1].imag(), mtx[1].imag(), mtx[3].imag(), mtx[3].imag());
    for (std::size_t i = 0; i < count; i += 2) {
      const __m256d v = _mm256_loadu_pd(d + 2 * i);
      const __m256d va = _mm256_permute2f128_pd(v, v, 0x00);  // [a0, a0]
      const __m256d vb = _mm256_permute2f128_pd(v, v, 0x11);  // [a1, a1]
      const __m256d r = _mm256_add_pd(cmul_const(va, col_a_re, col_a_im),
                                      cmul_const(vb, col_b_re, col_b_im));
      _mm256_storeu_pd(d + 2 * i, r);
    }
    return;
  }
  const __m256d m00r = _mm256_set1_pd(mtx[0].real());
  const __m256d m00i = _mm256_set1_pd(mtx[0].imag());
  const __m256d m01r = _mm256_set1_pd(mtx[1].real());
  const __m256d m01i = _mm256_set1_pd(mtx[1].imag());
  const __m256d m10r = _mm256_set1_pd(mtx[2].real());
  const __m256d m10i = _mm256_set1_pd(mtx[2].imag());
  const __m256d m11r = _mm256_set1_pd(mtx[3].real());
  const __m256d m11i = _mm256_set1_pd(mtx[3].imag());
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; off += 2) {
      double* p0 = d + 2 * (base + off);
      double* p1 = d + 2 * (base + off + stride);
      const __m256d v0 = _mm256_loadu_pd(p0);
      const __m256d v1 = _mm256_loadu_pd(p1);
      const __m256d r0 = _mm256_add_pd(cmul_const(v0, m00r, m00i),
                                       cmul_const(v1, m01r, m01i));
      const __m256d r1 = _mm256_add_pd(cmul_const(v0, m10r, m10i),
                                       cmul_const(v1, m11r, m11i));
      _mm256_storeu_pd(p0, r0);
      _mm256_storeu_pd(p1, r1);
    }
  }
}

void apply_phase_mod_avx2(std::complex<double>* amps, std::size_t count,
                          int spin_bits, int reg_shift,
                          std::span<const std::uint32_t> w_mod,
                          const PhaseTable& table) {
  if (spin_bits < 2) {
    detail::apply_phase_mod_scalar(amps, count, spin_bits, reg_shift, w_mod, table);
    return;
  }
  double* d = reinterpret_cast<double*>(amps);
  const std::size_t spin_size = std::size_t{1} << spin_bits;
  const std::uint64_t reg_mask = (std::uint64_t{1} << table.width) - 1;
  const double two_w = std::ldexp(1.0, table.width);
  const double inv_two_w = std::ldexp(1.0, -table.width);
  const __m128i lo_mask =
      _mm_set1_epi32(static_cast<int>((std::uint32_t{1} << table.lo_bits) - 1));

  for (std::size_t block = 0; block < count; block += spin_size) {
    const std::uint64_t v = (block >> reg_shift) & reg_mask;
    const __m256d vd = _mm256_set1_pd(static_cast<double>(v));
    const __m256d tw = _mm256_set1_pd(two_w);
    const __m256d itw = _mm256_set1_pd(inv_two_w);
    for (std::size_t s = 0; s < spin_size; s += 4) {
      const __m128i w4 = _mm_loadu_si128(
          reinterpret_cast<const __m128i*>(w_mod.data() + s));
      const __m256d wd = _mm256_cvtepi32_pd(w4);
      const __m256d p = _mm256_mul_pd(vd, wd);
      const __m256d q = _mm256_floor_pd(_mm256_mul_pd(p, itw));
      const __m256d k = _mm256_fnmadd_pd(q, tw, p);
      const __m128i ki = _mm256_cvttpd_epi32(k);
      const __m128i klo = _mm_and_si128(ki, lo_mask);
      const __m128i khi = _mm_srli_epi32(ki, table.lo_bits);
      const __m256d lor = _mm256_i32gather_pd(table.lo_re.data(), klo, 8);
      const __m256d loi = _mm256_i32gather_pd(table.lo_im.data(), klo, 8);
      const __m256d hir = _mm256_i32gather_pd(table.hi_re.data(), khi, 8);
      const __m256d hii = _mm256_i32gather_pd(table.hi_im.data(), khi, 8);
      const __m256d pr = _mm256_fmsub_pd(lor, hir, _mm256_mul_pd(loi, hii));
      const __m256d pi = _mm256_fmadd_pd(lor, hii, _mm256_mul_pd(loi, hir));
      scale_pairs(d + 2 * (block + s), pr, pi);
    }
  }
}

}  // namespace detail_avx2

#ifdef PARTCOUNT_WITH_AVX2
void sincos4(const double angles[4], double sines[4], double cosines[4]) {
  detail_avx2::sincos4_impl(angles, sines, cosines);
}
#endif

}  // namespace partcount::kernels
