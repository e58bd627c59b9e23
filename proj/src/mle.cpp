#include "aoa/mle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "aoa/errors.hpp"
#include "aoa/kernels.hpp"

namespace aoa {

GridBeamScanner::GridBeamScanner(const AngleGrid& grid, const ArrayGeometry& array)
    : rows_(grid.count), antennas_(array.size()), re_(rows_ * antennas_), im_(rows_ * antennas_) {
  const double wavenumber = 2.0 * std::numbers::pi / array.wavelength;
  for (std::size_t j = 0; j < rows_; ++j) {
    const double phase_rate = wavenumber * std::sin(grid.point(j));
    for (std::size_t n = 0; n < antennas_; ++n) {
      const double phase = phase_rate * array.positions[n];
      re_[n * rows_ + j] = std::cos(phase);
      im_[n * rows_ + j] = std::sin(phase);
    }
  }
}

std::vector<double> GridBeamScanner::powers(std::span<const cdouble> z) const {
  std::vector<double> z_re(antennas_), z_im(antennas_), out(rows_);
  for (std::size_t n = 0; n < antennas_; ++n) {
    z_re[n] = z[n].real();
    z_im[n] = z[n].imag();
  }
  kernels::active().beam_power({re_, im_, rows_, antennas_}, z_re, z_im, out);
  return out;
}

std::size_t GridBeamScanner::best_index(std::span<const cdouble> z) const {
  const std::vector<double> p = powers(z);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

namespace {

enum class UpdateOrder { simultaneous, sequential };

CVector residual_of(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& p) {
  CVector res(z.begin(), z.end());
  for (std::size_t m = 0; m < p.theta.size(); ++m) {
    const CVector d = steering_vector(p.theta[m], array);
    for (std::size_t n = 0; n < res.size(); ++n) res[n] -= d[n] * p.r[m];
  }
  return res;
}

double parameter_change(const MleParams& a, const MleParams& b) {
  double change = 0.0;
  for (std::size_t m = 0; m < a.theta.size(); ++m) {
    change = std::max(change, std::abs(a.theta[m] - b.theta[m]));
    change = std::max(change, std::abs(a.r[m] - b.r[m]));
  }
  return change;
}

// One source's E-step and M-step against a given residual.
void update_source(std::size_t m, std::span<const cdouble> residual, const MleParams& from, MleParams& to,
                   const ArrayGeometry& array, const AngleGrid& grid, const GridBeamScanner& scanner) {
  const CVector d_old = steering_vector(from.theta[m], array);
  CVector z_m(residual.size());
  for (std::size_t n = 0; n < z_m.size(); ++n) z_m[n] = d_old[n] * from.r[m] + residual[n];

  const std::size_t j = scanner.best_index(z_m);
  to.theta[m] = grid.point(j);
  const CVector d_new = steering_vector(to.theta[m], array);
  cdouble r{};
  for (std::size_t n = 0; n < z_m.size(); ++n) r += std::conj(d_new[n]) * z_m[n];
  to.r[m] = r / static_cast<double>(array.size());
}

MleReport run_mle(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& init,
                  const AngleGrid& grid, const MleOptions& options, UpdateOrder order) {
  if (init.theta.size() != init.r.size()) throw ConfigError("initial theta and r differ in length");
  if (!(options.tolerance > 0.0)) throw ConfigError("MLE tolerance must be positive");
  const GridBeamScanner scanner(grid, array);

  MleReport report;
  report.params = init;
  report.params.iteration = 0;
  report.residual_norms.push_back(std::sqrt(squared_norm(residual_of(z, array, report.params))));

  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    const MleParams previous = report.params;
    MleParams next = previous;
    if (order == UpdateOrder::simultaneous) {
      const CVector residual = residual_of(z, array, previous);
      for (std::size_t m = 0; m < previous.theta.size(); ++m) {
        update_source(m, residual, previous, next, array, grid, scanner);
      }
    } else {
      for (std::size_t m = 0; m < previous.theta.size(); ++m) {
        const CVector residual = residual_of(z, array, next);
        const MleParams current = next;
        update_source(m, residual, current, next, array, grid, scanner);
      }
    }
    next.iteration = k;
    report.params = next;
    report.iterations = k;
    report.residual_norms.push_back(std::sqrt(squared_norm(residual_of(z, array, next))));
    if (parameter_change(previous, next) <= options.tolerance) {
      report.converged = true;
      break;
    }
  }
  return report;
}

}  // namespace

MleReport em_estimate(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& init,
                      const AngleGrid& grid, const MleOptions& options) {
  return run_mle(z, array, init, grid, options, UpdateOrder::simultaneous);
}

MleReport sage_estimate(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& init,
                        const AngleGrid& grid, const MleOptions& options) {
  return run_mle(z, array, init, grid, options, UpdateOrder::sequential);
}

MleParams good_initialization(std::span<const double> truth, const AngleGrid& grid) {
  std::vector<std::size_t> idx(truth.size());
  for (std::size_t m = 0; m < truth.size(); ++m) idx[m] = grid.nearest_index(truth[m]);
  const bool at_top = std::any_of(idx.begin(), idx.end(), [&](std::size_t j) { return j + 1 >= grid.count; });
  std::vector<bool> taken(grid.count, false);
  std::vector<std::size_t> shifted(idx.size());
  // Shift the leading source first so a full block moves as one.
  std::vector<std::size_t> order(idx.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return at_top ? idx[a] < idx[b] : idx[a] > idx[b];
  });
  for (std::size_t m : order) {
    const std::size_t j = idx[m];
    std::size_t target = at_top ? (j == 0 ? j : j - 1) : j + 1;
    if (taken[target]) target = j;
    taken[target] = true;
    shifted[m] = target;
  }
  MleParams p;
  for (std::size_t j : shifted) p.theta.push_back(grid.point(j));
  p.r.assign(truth.size(), cdouble{1.0, 0.0});
  return p;
}

MleParams random_initialization(std::size_t num_sources, const AngleGrid& grid, std::mt19937_64& rng) {
  if (num_sources > grid.count) throw ConfigError("more sources than grid points");
  std::vector<std::size_t> pool(grid.count);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  MleParams p;
  for (std::size_t m = 0; m < num_sources; ++m) {
    std::uniform_int_distribution<std::size_t> pick(m, pool.size() - 1);
    std::swap(pool[m], pool[pick(rng)]);
    p.theta.push_back(grid.point(pool[m]));
  }
  p.r.assign(num_sources, cdouble{1.0, 0.0});
  return p;
}

void score_mle_report(MleReport& report, std::span<const double> truth_theta,
                      std::span<const cdouble> truth_r, double r_tolerance) {
  const std::size_t m = truth_theta.size();
  auto order_by = [](std::span<const double> v) {
    std::vector<std::size_t> o(v.size());
    std::iota(o.begin(), o.end(), std::size_t{0});
    std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return o;
  };
  const auto est_order = order_by(report.params.theta);
  const auto true_order = order_by(truth_theta);
  report.acc_theta.assign(m, false);
  report.acc_r.assign(m, false);
  for (std::size_t i = 0; i < m && i < est_order.size(); ++i) {
    const std::size_t e = est_order[i];
    const std::size_t t = true_order[i];
    report.acc_theta[i] = std::abs(report.params.theta[e] - truth_theta[t]) <= 1e-9;
    report.acc_r[i] = std::abs(report.params.r[e] - truth_r[t]) <= r_tolerance;
  }
}

}  // namespace aoa
