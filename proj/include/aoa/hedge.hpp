#pragma once

// Online selection of the early-stopping gradient threshold with Hedge
// (multiplicative weights). Each expert is one threshold; every round all
// experts run on the same snapshot and pay
//   loss = (1 - zeta) * err + zeta * k_hat / K,   w <- w * beta^loss.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aoa/bayes.hpp"
#include "aoa/signal_model.hpp"

namespace aoa {

struct ExpertPool {
  std::vector<double> thresholds;
  std::vector<double> weights;
  double beta = 0.5;
  double zeta = 0.1;
  std::size_t round = 0;

  static ExpertPool uniform(std::vector<double> thresholds, double beta, double zeta);
  static std::vector<double> default_thresholds() { return {1.0, 0.5, 0.1, 0.05, 0.01}; }

  // Normalised weights.
  std::vector<double> distribution() const;
  std::size_t best_expert() const;

  // Throws ConfigError.
  void validate() const;
};

double hedge_loss(bool error, std::size_t k_hat, std::size_t max_iterations, double zeta);

struct ExpertOutcome {
  double threshold = 0.0;
  std::vector<double> theta;
  std::size_t k_hat = 0;
  bool error = true;
  double loss = 1.0;
  bool failed = false;  // estimator threw; loss forced to 1
  std::uint64_t objective_evals = 0;
  std::uint64_t gradient_evals = 0;
};

struct RoundOutcome {
  std::size_t round = 0;
  std::vector<ExpertOutcome> experts;
  std::vector<double> weights;       // after the update
  std::vector<double> distribution;  // p^t
};

// w_b <- w_b * beta^loss_b, then the round counter advances.
void update_weights(ExpertPool& pool, std::span<const double> losses);

// One round on one snapshot. Expert b runs bayes_aoa_es with its threshold
// and a seed derived from (round_seed, b).
struct HedgeProblem {
  ArrayGeometry array;
  CVector z;
  std::vector<double> truth;
  std::uint64_t seed = 0;
  // Set by the caller when N or the noise level changed before this round.
  bool environment_changed = false;
};

RoundOutcome hedge_round(ExpertPool& pool, const HedgeProblem& problem, const AngleGrid& grid,
                         const BayesRunConfig& base);

// Weights back to 1; thresholds and round counter kept.
ExpertPool reset_on_change(ExpertPool pool);

struct HedgeTrajectory {
  std::vector<RoundOutcome> rounds;
  std::size_t best_expert = 0;
  double best_threshold = 0.0;
};

using ProblemStream = std::function<HedgeProblem(std::size_t round)>;

HedgeTrajectory run_hedge(ExpertPool& pool, std::size_t rounds, const ProblemStream& stream, const AngleGrid& grid,
                          const BayesRunConfig& base);

// round,expert,threshold,weight,probability,loss,k_hat,err
std::string trajectory_csv(const HedgeTrajectory& trajectory);

}  // namespace aoa
