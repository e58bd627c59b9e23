// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

#include "aoa/kernels.hpp"

#include <immintrin.h>

#include <array>
#include <cmath>

namespace aoa::kernels {
namespace {

// exp(x) for four doubles: range reduction x = n ln2 + r, |r| <= ln2/2,
// degree-13 Taylor polynomial for exp(r), then scale by 2^n through the
// exponent field. Inputs below -708 flush to zero.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo_limit = _mm256_set1_pd(-708.0);
  const __m256d hi_limit = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo_limit), hi_limit);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr std::array<double, 14> inv_factorial = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        1.0 / 2.0,
      1.0,                1.0};
  __m256d p = _mm256_set1_pd(inv_factorial[0]);
  for (std::size_t i = 1; i < inv_factorial.size(); ++i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_factorial[i]));
  }

  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  return _mm256_andnot_pd(underflow, _mm256_mul_pd(p, scale));
}

inline __m256d mixture_block(const MixtureView& mix, __m256d xv) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t components = mix.mean.size();
  for (std::size_t k = 0; k < components; ++k) {
    const __m256d d = _mm256_sub_pd(xv, _mm256_set1_pd(mix.mean[k]));
    const __m256d arg = _mm256_mul_pd(_mm256_mul_pd(d, d), _mm256_set1_pd(-mix.inv_two_var[k]));
    acc = _mm256_fmadd_pd(_mm256_set1_pd(mix.coef[k]), exp_pd(arg), acc);
  }
  return acc;
}

void mixture_density_avx2(const MixtureView& mix, std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    _mm256_storeu_pd(out.data() + i, mixture_block(mix, _mm256_loadu_pd(x.data() + i)));
  }
  if (i < x.size()) {
    alignas(32) std::array<double, 4> tail_in{};
    alignas(32) std::array<double, 4> tail_out{};
    const std::size_t rest = x.size() - i;
    for (std::size_t t = 0; t < rest; ++t) tail_in[t] = x[i + t];
    _mm256_store_pd(tail_out.data(), mixture_block(mix, _mm256_load_pd(tail_in.data())));
    for (std::size_t t = 0; t < rest; ++t) out[i + t] = tail_out[t];
  }
}

void beam_power_avx2(const SteeringTable& table, std::span<const double> z_re,
                     std::span<const double> z_im, std::span<double> out) {
  const std::size_t rows = table.rows;
  std::size_t j = 0;
  for (; j + 4 <= rows; j += 4) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t n = 0; n < table.antennas; ++n) {
      const __m256d a_re = _mm256_loadu_pd(table.re.data() + n * rows + j);
      const __m256d a_im = _mm256_loadu_pd(table.im.data() + n * rows + j);
      const __m256d zr = _mm256_set1_pd(z_re[n]);
      const __m256d zi = _mm256_set1_pd(z_im[n]);
      acc_re = _mm256_fmadd_pd(a_re, zr, acc_re);
      acc_re = _mm256_fmadd_pd(a_im, zi, acc_re);
      acc_im = _mm256_fmadd_pd(a_re, zi, acc_im);
      acc_im = _mm256_fnmadd_pd(a_im, zr, acc_im);
    }
    const __m256d power = _mm256_fmadd_pd(acc_re, acc_re, _mm256_mul_pd(acc_im, acc_im));
    _mm256_storeu_pd(out.data() + j, power);
  }
  for (; j < rows; ++j) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t n = 0; n < table.antennas; ++n) {
      const double a_re = table.re[n * rows + j];
      const double a_im = table.im[n * rows + j];
      acc_re += a_re * z_re[n] + a_im * z_im[n];
      acc_im += a_re * z_im[n] - a_im * z_re[n];
    }
    out[j] = acc_re * acc_re + acc_im * acc_im;
  }
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

std::complex<double> conj_dot_avx2(std::span<const double> a_re, std::span<const double> a_im,
                                   std::span<const double> b_re, std::span<const double> b_im) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t n = 0;
  for (; n + 4 <= a_re.size(); n += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re.data() + n);
    const __m256d ai = _mm256_loadu_pd(a_im.data() + n);
    const __m256d br = _mm256_loadu_pd(b_re.data() + n);
    const __m256d bi = _mm256_loadu_pd(b_im.data() + n);
    acc_re = _mm256_fmadd_pd(ar, br, acc_re);
    acc_re = _mm256_fmadd_pd(ai, bi, acc_re);
    acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
    acc_im = _mm256_fnmadd_pd(ai, br, acc_im);
  }
  double re = horizontal_sum(acc_re);
  double im = horizontal_sum(acc_im);
  for (; n < a_re.size(); ++n) {
    re += a_re[n] * b_re[n] + a_im[n] * b_im[n];
    im += a_re[n] * b_im[n] - a_im[n] * b_re[n];
  }
  return {re, im};
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::avx2, &mixture_density_avx2, &beam_power_avx2,
                                 &conj_dot_avx2};
  return table;
}

}  // namespace aoa::kernels
