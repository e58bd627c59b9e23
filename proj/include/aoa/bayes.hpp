#pragma once

// TPE-driven angle search (with and without gradient-based early stopping)
// and the central-difference gradient used by the stopping rule.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aoa/grid_search.hpp"
#include "aoa/objective.hpp"
#include "aoa/tpe.hpp"

namespace aoa {

struct BayesRunConfig {
  std::size_t max_iterations = 1000;  // K
  std::size_t initial_samples = 20;
  TpeOptions tpe;
  bool early_stopping = false;
  double grad_threshold = 0.05;  // applied to max |dJ/dtheta_m|
  std::size_t es_interval = 100;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

struct BayesRunReport {
  std::vector<double> theta;  // best angle set seen, always on the grid
  double ls_error = 0.0;
  std::size_t stop_iteration = 0;  // k-hat, counting the initial samples
  std::uint64_t objective_evals = 0;  // every call to J, gradient probes included
  std::uint64_t gradient_evals = 0;
  std::size_t es_checks = 0;
  bool stopped_early = false;
  // Best J after each iteration k = 1..k-hat.
  std::vector<double> best_trace;
};

using ScalarObjective = std::function<double(std::span<const double>)>;

// Central differences with step theta_i / 10000 (1e-12 for a zero
// coordinate). Exactly 2M evaluations unless a probe hits SingularGram, in
// which case that step is halved up to three times before rethrowing.
std::vector<double> grad(const ScalarObjective& objective, std::span<const double> theta);

BayesRunReport bayes_aoa(LeastSquaresObjective& objective, const AngleGrid& grid, std::size_t num_sources,
                         const BayesRunConfig& config);

// Every es_interval iterations, the gradient of J at the incumbent is
// checked; the run stops once max |dJ/dtheta_m| <= grad_threshold.
BayesRunReport bayes_aoa_es(LeastSquaresObjective& objective, const AngleGrid& grid, std::size_t num_sources,
                            const BayesRunConfig& config);

}  // namespace aoa
