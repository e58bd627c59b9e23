#include "aoa/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "aoa/errors.hpp"
#include "aoa/kernels.hpp"

namespace aoa {
namespace {

std::size_t good_size(std::size_t n, double gamma) {
  const auto k = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n) - 1e-12));
  // Both sides stay non-empty once there are two observations.
  return std::clamp<std::size_t>(k, 1, n > 1 ? n - 1 : 1);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

HistorySplit split_history(std::span<const Observation> history, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  std::vector<std::size_t> order(history.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return history[a].score < history[b].score; });
  HistorySplit out;
  if (history.empty()) return out;
  const std::size_t k = good_size(history.size(), gamma);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < k ? out.good : out.bad).push_back(history[order[i]]);
  }
  out.threshold = out.good.back().score;
  return out;
}

ParzenDensity::ParzenDensity(std::span<const double> points, double lower, double upper, double min_sigma,
                             double max_sigma)
    : lower_(lower), upper_(upper) {
  if (points.empty()) throw ConfigError("Parzen density needs at least one point");
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? sorted[i] - lower : sorted[i] - sorted[i - 1];
    const double right = i + 1 == n ? upper - sorted[i] : sorted[i + 1] - sorted[i];
    const double sigma = std::clamp(std::max(left, right), min_sigma, max_sigma);
    add_component(sorted[i], sigma, 1.0);
  }
  finalize();
}

ParzenDensity ParzenDensity::on_grid(std::span<const double> points, const AngleGrid& grid) {
  return ParzenDensity(points, grid.lower, grid.upper(), grid.resolution, grid.upper() - grid.lower);
}

ParzenDensity ParzenDensity::from_grid_counts(std::span<const std::size_t> counts, const AngleGrid& grid) {
  const double lower = grid.lower;
  const double upper = grid.upper();
  const double min_sigma = grid.resolution;
  const double max_sigma = upper - lower;
  ParzenDensity d(lower, upper);

  std::vector<std::size_t> occupied;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) occupied.push_back(j);
  }
  if (occupied.empty()) throw ConfigError("Parzen density needs at least one point");

  // Within a run of c equal coordinates the first copy sees the gap on its
  // left, the last copy the gap on its right and the middle copies see zero
  // on both sides.
  for (std::size_t o = 0; o < occupied.size(); ++o) {
    const std::size_t j = occupied[o];
    const double x = grid.point(j);
    const double left = o == 0 ? x - lower : x - grid.point(occupied[o - 1]);
    const double right = o + 1 == occupied.size() ? upper - x : grid.point(occupied[o + 1]) - x;
    const std::size_t c = counts[j];
    auto clip = [&](double s) { return std::clamp(s, min_sigma, max_sigma); };
    if (c == 1) {
      d.add_component(x, clip(std::max(left, right)), 1.0);
    } else {
      d.add_component(x, clip(left), 1.0);
      if (c > 2) d.add_component(x, clip(0.0), static_cast<double>(c - 2));
      d.add_component(x, clip(right), 1.0);
    }
  }
  d.finalize();
  return d;
}

void ParzenDensity::add_component(double mean, double sigma, double weight) {
  means_.push_back(mean);
  sigmas_.push_back(sigma);
  weights_.push_back(weight);
}

void ParzenDensity::finalize() {
  // Merge identical (mean, sigma) pairs so evaluation cost scales with the
  // number of distinct components.
  std::vector<std::size_t> order(means_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return means_[a] != means_[b] ? means_[a] < means_[b] : sigmas_[a] < sigmas_[b];
  });
  std::vector<double> means, sigmas, weights;
  for (std::size_t i : order) {
    if (!means.empty() && means.back() == means_[i] && sigmas.back() == sigmas_[i]) {
      weights.back() += weights_[i];
    } else {
      means.push_back(means_[i]);
      sigmas.push_back(sigmas_[i]);
      weights.push_back(weights_[i]);
    }
  }
  means_ = std::move(means);
  sigmas_ = std::move(sigmas);
  weights_ = std::move(weights);

  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  coef_.resize(means_.size());
  inv_two_var_.resize(means_.size());
  cumulative_.resize(means_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < means_.size(); ++k) {
    const double s = sigmas_[k];
    const double mass = normal_cdf((upper_ - means_[k]) / s) - normal_cdf((lower_ - means_[k]) / s);
    coef_[k] = (weights_[k] / total) / (s * std::sqrt(2.0 * std::numbers::pi) * mass);
    inv_two_var_[k] = 1.0 / (2.0 * s * s);
    running += weights_[k] / total;
    cumulative_[k] = running;
  }
  cumulative_.back() = 1.0;
}

double ParzenDensity::operator()(double x) const {
  double out = 0.0;
  evaluate(std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

void ParzenDensity::evaluate(std::span<const double> x, std::span<double> out) const {
  kernels::active().mixture_density({means_, coef_, inv_two_var_}, x, out);
}

double ParzenDensity::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const std::size_t k = static_cast<std::size_t>(
      std::lower_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
  const std::size_t comp = std::min(k, means_.size() - 1);
  std::normal_distribution<double> normal(means_[comp], sigmas_[comp]);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double x = normal(rng);
    if (x >= lower_ && x <= upper_) return x;
  }
  return std::clamp(means_[comp], lower_, upper_);
}

double expected_improvement(double gamma, double l, double g) { return 1.0 / (gamma + (g / l) * (1.0 - gamma)); }

TpeState::TpeState(AngleGrid grid, std::size_t dims, TpeOptions options, std::uint64_t seed)
    : grid_(grid), dims_(dims), options_(options), rng_(seed) {
  if (!(options_.gamma > 0.0 && options_.gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (options_.n_candidates == 0) throw ConfigError("n_candidates must be at least 1");
  if (dims_ == 0) throw ConfigError("TPE needs at least one dimension");
}

void TpeState::observe(std::span<const double> theta, double score) {
  if (theta.size() != dims_) throw ConfigError("observation has the wrong dimension");
  const std::size_t id = history_.size();
  history_.push_back({std::vector<double>(theta.begin(), theta.end()), score});
  std::vector<std::size_t> idx(dims_);
  for (std::size_t m = 0; m < dims_; ++m) idx[m] = grid_.nearest_index(theta[m]);
  std::vector<std::size_t> key = idx;
  std::sort(key.begin(), key.end());
  seen_sorted_.insert(std::move(key));
  indices_.push_back(std::move(idx));
  // upper_bound keeps equal scores in insertion order.
  const auto pos = std::upper_bound(by_score_.begin(), by_score_.end(), score,
                                    [&](double s, std::size_t other) { return s < history_[other].score; });
  by_score_.insert(pos, id);
}

std::size_t TpeState::good_count() const {
  return history_.empty() ? 0 : good_size(history_.size(), options_.gamma);
}

std::span<const std::size_t> TpeState::good_indices() const {
  return std::span<const std::size_t>(by_score_).first(good_count());
}

std::span<const std::size_t> TpeState::bad_indices_sorted() const {
  return std::span<const std::size_t>(by_score_).subspan(good_count());
}

HistorySplit TpeState::split() const {
  HistorySplit out;
  for (std::size_t i : good_indices()) out.good.push_back(history_[i]);
  for (std::size_t i : bad_indices_sorted()) out.bad.push_back(history_[i]);
  if (!out.good.empty()) out.threshold = out.good.back().score;
  return out;
}

double TpeState::threshold() const {
  const auto good = good_indices();
  return good.empty() ? 0.0 : history_[good.back()].score;
}

bool TpeState::evaluated(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> key(indices.begin(), indices.end());
  std::sort(key.begin(), key.end());
  return seen_sorted_.contains(key);
}

const ScoredCandidate& best_candidate(std::span<const ScoredCandidate> candidates) {
  const ScoredCandidate* best = &candidates.front();
  for (const ScoredCandidate& c : candidates.subspan(1)) {
    if (c.log_ratio > best->log_ratio || (c.log_ratio == best->log_ratio && c.indices < best->indices)) {
      best = &c;
    }
  }
  return *best;
}

namespace {

struct DimensionModel {
  ParzenDensity good;
  ParzenDensity bad;
};

std::vector<DimensionModel> build_models(const TpeState& state) {
  const AngleGrid& grid = state.grid();
  std::vector<DimensionModel> models;
  models.reserve(state.dims());
  for (std::size_t m = 0; m < state.dims(); ++m) {
    std::vector<std::size_t> good_counts(grid.count, 0), bad_counts(grid.count, 0);
    for (std::size_t i : state.good_indices()) ++good_counts[state.grid_indices(i)[m]];
    for (std::size_t i : state.bad_indices_sorted()) ++bad_counts[state.grid_indices(i)[m]];
    models.push_back({ParzenDensity::from_grid_counts(good_counts, grid),
                      ParzenDensity::from_grid_counts(bad_counts, grid)});
  }
  return models;
}

std::vector<std::vector<double>> ratio_table(const std::vector<DimensionModel>& models, const AngleGrid& grid) {
  const std::vector<double> xs = grid.points();
  std::vector<std::vector<double>> table(models.size(), std::vector<double>(grid.count));
  std::vector<double> l(grid.count), g(grid.count);
  constexpr double floor = std::numeric_limits<double>::min();
  for (std::size_t m = 0; m < models.size(); ++m) {
    models[m].good.evaluate(xs, l);
    models[m].bad.evaluate(xs, g);
    for (std::size_t j = 0; j < grid.count; ++j) {
      table[m][j] = std::log(std::max(l[j], floor)) - std::log(std::max(g[j], floor));
    }
  }
  return table;
}

}  // namespace

std::vector<std::vector<double>> log_ratio_table(const TpeState& state) {
  if (state.history().size() < 2) throw ConfigError("TPE needs at least two observations");
  return ratio_table(build_models(state), state.grid());
}

std::vector<double> propose_candidate(TpeState& state, std::size_t n_candidates) {
  if (n_candidates == 0) throw ConfigError("n_candidates must be at least 1");
  if (state.history().size() < 2) throw ConfigError("TPE needs at least two observations");
  const AngleGrid& grid = state.grid();
  const std::size_t dims = state.dims();
  const auto models = build_models(state);
  const auto table = ratio_table(models, grid);

  std::vector<ScoredCandidate> fresh;
  std::vector<ScoredCandidate> repeats;
  std::vector<std::size_t> idx(dims);
  const std::size_t max_draws = 100 * n_candidates;
  for (std::size_t draw = 0; draw < max_draws && fresh.size() < n_candidates; ++draw) {
    for (std::size_t m = 0; m < dims; ++m) idx[m] = grid.nearest_index(models[m].good.sample(state.rng()));
    bool distinct = true;
    for (std::size_t a = 0; a < dims && distinct; ++a) {
      for (std::size_t b = a + 1; b < dims; ++b) {
        if (idx[a] == idx[b]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    ScoredCandidate c{idx, 0.0};
    for (std::size_t m = 0; m < dims; ++m) c.log_ratio += table[m][idx[m]];
    if (state.evaluated(idx)) {
      if (repeats.size() < n_candidates) repeats.push_back(std::move(c));
    } else {
      fresh.push_back(std::move(c));
    }
  }

  const std::vector<ScoredCandidate>& pool = fresh.empty() ? repeats : fresh;
  if (pool.empty()) {
    throw ResampleExhausted("no duplicate-free candidate in " + std::to_string(max_draws) + " draws");
  }
  return grid.angles(best_candidate(pool).indices);
}

}  // namespace aoa
