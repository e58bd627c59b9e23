#include "aoa/objective.hpp"

#include <cmath>
#include <numbers>

#include "aoa/errors.hpp"
#include "aoa/kernels.hpp"

namespace aoa {
namespace {

void check_distinct(std::span<const double> theta) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (std::size_t j = i + 1; j < theta.size(); ++j) {
      if (theta[i] == theta[j]) throw DuplicateAngles("candidate repeats an angle");
    }
  }
}

CMatrix gram_or_throw(const CMatrix& d) {
  CMatrix gram = adjoint(d) * d;
  if (!(condition_estimate(gram) <= kGramConditionLimit)) {
    throw SingularGram("Gram matrix condition estimate exceeds 1e12");
  }
  return gram;
}

}  // namespace

CMatrix projection_matrix(std::span<const double> theta, const ArrayGeometry& array) {
  const CMatrix d = steering_matrix(theta, array);
  const CMatrix gram_inv = inverse(gram_or_throw(d));
  return d * gram_inv * adjoint(d);
}

LeastSquaresObjective::LeastSquaresObjective(ArrayGeometry array, CVector z)
    : array_(std::move(array)), z_(std::move(z)), z_re_(z_.size()), z_im_(z_.size()) {
  if (z_.size() != array_.size()) throw InvalidScenario("snapshot length does not match the array");
  for (std::size_t n = 0; n < z_.size(); ++n) {
    z_re_[n] = z_[n].real();
    z_im_[n] = z_[n].imag();
  }
  energy_ = squared_norm(z_);
}

LeastSquaresObjective::Solution LeastSquaresObjective::solve(std::span<const double> theta) const {
  check_distinct(theta);
  const std::size_t n = array_.size();
  const std::size_t m = theta.size();
  const auto& k = kernels::active();

  Solution s;
  s.d_re.resize(n * m);
  s.d_im.resize(n * m);
  const double wavenumber = 2.0 * std::numbers::pi / array_.wavelength;
  for (std::size_t c = 0; c < m; ++c) {
    const double phase_rate = wavenumber * std::sin(theta[c]);
    for (std::size_t a = 0; a < n; ++a) {
      const double phase = phase_rate * array_.positions[a];
      s.d_re[c * n + a] = std::cos(phase);
      s.d_im[c * n + a] = std::sin(phase);
    }
  }
  auto col_re = [&](std::size_t c) { return std::span<const double>(s.d_re).subspan(c * n, n); };
  auto col_im = [&](std::size_t c) { return std::span<const double>(s.d_im).subspan(c * n, n); };

  CMatrix gram(m, m);
  s.projections.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    gram(i, i) = static_cast<double>(n);
    for (std::size_t j = i + 1; j < m; ++j) {
      const cdouble g = k.conj_dot(col_re(i), col_im(i), col_re(j), col_im(j));
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
    s.projections[i] = k.conj_dot(col_re(i), col_im(i), z_re_, z_im_);
  }
  if (!(condition_estimate(gram) <= kGramConditionLimit)) {
    throw SingularGram("Gram matrix condition estimate exceeds 1e12");
  }
  s.amplitudes = solve_hermitian(gram, s.projections);
  return s;
}

ObjectiveEval LeastSquaresObjective::evaluate(std::span<const double> theta) {
  ++evaluations_;
  const Solution s = solve(theta);
  const std::size_t n = array_.size();
  const std::size_t m = theta.size();

  // f from the normal equations, J from the explicit residual; the two are
  // computed independently so f + J = ||z||^2 is a real consistency check.
  cdouble explained{};
  for (std::size_t i = 0; i < m; ++i) explained += std::conj(s.projections[i]) * s.amplitudes[i];

  double residual = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    cdouble fit{};
    for (std::size_t c = 0; c < m; ++c) fit += cdouble{s.d_re[c * n + a], s.d_im[c * n + a]} * s.amplitudes[c];
    residual += std::norm(z_[a] - fit);
  }

  ObjectiveEval out;
  out.theta.assign(theta.begin(), theta.end());
  out.value = explained.real();
  out.ls_error = residual;
  return out;
}

CVector LeastSquaresObjective::recover_amplitudes(std::span<const double> theta) const {
  return solve(theta).amplitudes;
}

}  // namespace aoa
