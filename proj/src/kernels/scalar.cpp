#include "aoa/kernels.hpp"

#include <cmath>

namespace aoa::kernels {
namespace {

void mixture_density_scalar(const MixtureView& mix, std::span<const double> x, std::span<double> out) {
  const std::size_t components = mix.mean.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < components; ++k) {
      const double d = x[i] - mix.mean[k];
      acc += mix.coef[k] * std::exp(-(d * d) * mix.inv_two_var[k]);
    }
    out[i] = acc;
  }
}

void beam_power_scalar(const SteeringTable& table, std::span<const double> z_re,
                       std::span<const double> z_im, std::span<double> out) {
  const std::size_t rows = table.rows;
  for (std::size_t j = 0; j < rows; ++j) {
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

std::complex<double> conj_dot_scalar(std::span<const double> a_re, std::span<const double> a_im,
                                     std::span<const double> b_re, std::span<const double> b_im) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t n = 0; n < a_re.size(); ++n) {
    acc_re += a_re[n] * b_re[n] + a_im[n] * b_im[n];
    acc_im += a_re[n] * b_im[n] - a_im[n] * b_re[n];
  }
  return {acc_re, acc_im};
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, &mixture_density_scalar, &beam_power_scalar,
                                 &conj_dot_scalar};
  return table;
}

}  // namespace aoa::kernels
