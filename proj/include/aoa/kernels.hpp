#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is selected at runtime when the CPU
// supports it. Callers go through active() and never name an ISA directly.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace aoa::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Weighted Gaussian sum over a set of components, evaluated at many points:
//   out[i] = sum_k coef[k] * exp(-(x[i] - mean[k])^2 * inv_two_var[k])
// Component arrays share one length. out and x share one length.
struct MixtureView {
  std::span<const double> mean;
  std::span<const double> coef;
  std::span<const double> inv_two_var;
};

// Antenna-major complex table: element (row j, antenna n) lives at
// re[n * rows + j], im[n * rows + j]. Rows are candidate steering vectors.
struct SteeringTable {
  std::span<const double> re;
  std::span<const double> im;
  std::size_t rows = 0;
  std::size_t antennas = 0;
};

struct KernelTable {
  Isa isa;
  void (*mixture_density)(const MixtureView& mix, std::span<const double> x, std::span<double> out);
  // out[j] = |sum_n conj(a[j][n]) * z[n]|^2
  void (*beam_power)(const SteeringTable& table, std::span<const double> z_re,
                     std::span<const double> z_im, std::span<double> out);
  // sum_n conj(a[n]) * b[n]
  std::complex<double> (*conj_dot)(std::span<const double> a_re, std::span<const double> a_im,
                                   std::span<const double> b_re, std::span<const double> b_im);
};

const KernelTable& scalar_kernels();

// Null when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

Isa best_available_isa();

// Kernels used by the rest of the library. Defaults to the best available
// ISA unless AOA_FORCE_SCALAR is set in the environment.
const KernelTable& active();

// Overrides the active ISA. Returns false (and changes nothing) when the
// requested ISA is unavailable. Not thread-safe against concurrent active().
bool select_isa(Isa isa);

}  // namespace aoa::kernels
