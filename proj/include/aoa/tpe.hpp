#pragma once

// Tree-structured Parzen estimator over a discrete angle grid.
//
// Observations are split at the gamma-quantile of their scores (lower is
// better). Per dimension, the good coordinates form the density l and the
// rest form g. Candidates are drawn from l, snapped to the grid, and ranked
// by prod_m l(theta_m) / g(theta_m); expected improvement
// (gamma + (g/l)(1 - gamma))^-1 is monotone in that ratio, so the two
// rankings coincide.

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "aoa/grid_search.hpp"

namespace aoa {

struct Observation {
  std::vector<double> theta;
  double score = 0.0;
};

struct HistorySplit {
  std::vector<Observation> good;
  std::vector<Observation> bad;
  double threshold = 0.0;  // max score over good
};

// good = the ceil(gamma * |L|) lowest scores, ties kept in insertion order.
HistorySplit split_history(std::span<const Observation> history, double gamma);

// One-dimensional Parzen mixture on [lower, upper]. Each point contributes a
// Gaussian centred on it with sigma = max(gap to left neighbour, gap to right
// neighbour) among the sorted points, the domain bounds acting as the
// outermost neighbours, clipped to [min_sigma, max_sigma]. Components are
// truncated to the domain and renormalised there; mixture weights are
// uniform. Identical components are merged.
class ParzenDensity {
 public:
  ParzenDensity(std::span<const double> points, double lower, double upper, double min_sigma,
                double max_sigma);

  // Domain = grid span, sigma clip = [resolution, grid width].
  static ParzenDensity on_grid(std::span<const double> points, const AngleGrid& grid);

  // Same mixture as on_grid for points given as per-index multiplicities.
  static ParzenDensity from_grid_counts(std::span<const std::size_t> counts, const AngleGrid& grid);

  double operator()(double x) const;
  void evaluate(std::span<const double> x, std::span<double> out) const;

  // Draws from the truncated mixture.
  double sample(std::mt19937_64& rng) const;

  std::span<const double> means() const { return means_; }
  std::span<const double> sigmas() const { return sigmas_; }
  std::span<const double> weights() const { return weights_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  ParzenDensity(double lower, double upper) : lower_(lower), upper_(upper) {}
  void add_component(double mean, double sigma, double weight);
  void finalize();

  double lower_;
  double upper_;
  std::vector<double> means_;
  std::vector<double> sigmas_;
  std::vector<double> weights_;
  std::vector<double> coef_;
  std::vector<double> inv_two_var_;
  std::vector<double> cumulative_;
};

// Expected-improvement score (gamma + (g/l)(1 - gamma))^-1.
double expected_improvement(double gamma, double l, double g);

struct TpeOptions {
  double gamma = 0.25;
  std::size_t n_candidates = 24;
};

// Single-owner optimizer state. Keeps the history sorted by score
// incrementally and remembers which angle sets were evaluated.
class TpeState {
 public:
  TpeState(AngleGrid grid, std::size_t dims, TpeOptions options, std::uint64_t seed);

  void observe(std::span<const double> theta, double score);

  const std::vector<Observation>& history() const { return history_; }
  // Same result as split_history(history(), gamma), without re-sorting.
  HistorySplit split() const;
  double threshold() const;

  // Angle sets are unordered: any permutation of an evaluated tuple counts.
  bool evaluated(std::span<const std::size_t> indices) const;

  const AngleGrid& grid() const { return grid_; }
  std::size_t dims() const { return dims_; }
  const TpeOptions& options() const { return options_; }
  std::mt19937_64& rng() { return rng_; }

  // Indices of the good observations (ascending score).
  std::span<const std::size_t> good_indices() const;
  std::span<const std::size_t> bad_indices_sorted() const;

  const std::vector<std::size_t>& grid_indices(std::size_t observation) const { return indices_[observation]; }

 private:
  std::size_t good_count() const;

  AngleGrid grid_;
  std::size_t dims_;
  TpeOptions options_;
  std::mt19937_64 rng_;
  std::vector<Observation> history_;
  std::vector<std::vector<std::size_t>> indices_;
  std::vector<std::size_t> by_score_;
  std::set<std::vector<std::size_t>> seen_sorted_;
};

struct ScoredCandidate {
  std::vector<std::size_t> indices;
  double log_ratio = 0.0;  // sum_m log l(theta_m) - log g(theta_m)
};

// Highest log_ratio; ties go to the lexicographically lowest index tuple.
// Requires a non-empty span.
const ScoredCandidate& best_candidate(std::span<const ScoredCandidate> candidates);

// Per-dimension log(l/g) on every grid point: table[m][j].
std::vector<std::vector<double>> log_ratio_table(const TpeState& state);

// Draws up to n_candidates duplicate-free tuples from l (resampling tuples
// that repeat a coordinate or an already evaluated angle set), and returns the
// best by density ratio. Falls back to already evaluated sets when no fresh
// one turns up within 100 * n_candidates draws; throws ResampleExhausted when
// no duplicate-free tuple turns up at all. Requires at least two observations.
std::vector<double> propose_candidate(TpeState& state, std::size_t n_candidates);

}  // namespace aoa
