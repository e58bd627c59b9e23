#include "aoa/hedge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "aoa/errors.hpp"
#include "aoa/seeds.hpp"

namespace aoa {

ExpertPool ExpertPool::uniform(std::vector<double> thresholds, double beta, double zeta) {
  ExpertPool pool;
  pool.weights.assign(thresholds.size(), 1.0);
  pool.thresholds = std::move(thresholds);
  pool.beta = beta;
  pool.zeta = zeta;
  pool.validate();
  return pool;
}

void ExpertPool::validate() const {
  if (thresholds.empty()) throw ConfigError("expert pool needs at least one threshold");
  if (weights.size() != thresholds.size()) throw ConfigError("one weight per threshold");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw ConfigError("zeta must lie in [0, 1]");
  for (double t : thresholds) {
    if (!(t > 0.0)) throw ConfigError("thresholds must be positive");
  }
}

std::vector<double> ExpertPool::distribution() const {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> p(weights.size());
  for (std::size_t b = 0; b < weights.size(); ++b) p[b] = weights[b] / total;
  return p;
}

std::size_t ExpertPool::best_expert() const {
  return static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) - weights.begin());
}

double hedge_loss(bool error, std::size_t k_hat, std::size_t max_iterations, double zeta) {
  return (1.0 - zeta) * (error ? 1.0 : 0.0) +
         zeta * static_cast<double>(k_hat) / static_cast<double>(max_iterations);
}

void update_weights(ExpertPool& pool, std::span<const double> losses) {
  if (losses.size() != pool.weights.size()) throw ConfigError("one loss per expert");
  for (std::size_t b = 0; b < pool.weights.size(); ++b) pool.weights[b] *= std::pow(pool.beta, losses[b]);
  ++pool.round;
}

namespace {

bool same_angle_set(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

RoundOutcome hedge_round(ExpertPool& pool, const HedgeProblem& problem, const AngleGrid& grid,
                         const BayesRunConfig& base) {
  pool.validate();
  RoundOutcome outcome;
  outcome.round = pool.round;
  outcome.experts.resize(pool.thresholds.size());

  for (std::size_t b = 0; b < pool.thresholds.size(); ++b) {
    ExpertOutcome& e = outcome.experts[b];
    e.threshold = pool.thresholds[b];
    BayesRunConfig config = base;
    config.early_stopping = true;
    config.grad_threshold = e.threshold;
    config.seed = derive_seed(problem.seed, static_cast<std::uint32_t>(b), 0x68656467u);
    try {
      LeastSquaresObjective objective(problem.array, problem.z);
      const BayesRunReport report = bayes_aoa_es(objective, grid, problem.truth.size(), config);
      e.theta = report.theta;
      e.k_hat = report.stop_iteration;
      e.objective_evals = report.objective_evals;
      e.gradient_evals = report.gradient_evals;
      e.error = !same_angle_set(report.theta, problem.truth);
      e.loss = hedge_loss(e.error, e.k_hat, config.max_iterations, pool.zeta);
    } catch (const Error&) {
      e.failed = true;
      e.error = true;
      e.loss = 1.0;
    }
  }

  std::vector<double> losses;
  for (const ExpertOutcome& e : outcome.experts) losses.push_back(e.loss);
  update_weights(pool, losses);
  outcome.weights = pool.weights;
  outcome.distribution = pool.distribution();
  return outcome;
}

ExpertPool reset_on_change(ExpertPool pool) {
  std::fill(pool.weights.begin(), pool.weights.end(), 1.0);
  return pool;
}

HedgeTrajectory run_hedge(ExpertPool& pool, std::size_t rounds, const ProblemStream& stream, const AngleGrid& grid,
                          const BayesRunConfig& base) {
  if (rounds < 1) throw ConfigError("Hedge needs at least one round");
  HedgeTrajectory trajectory;
  for (std::size_t t = 0; t < rounds; ++t) {
    const HedgeProblem problem = stream(t);
    if (problem.environment_changed) pool = reset_on_change(std::move(pool));
    trajectory.rounds.push_back(hedge_round(pool, problem, grid, base));
  }
  trajectory.best_expert = pool.best_expert();
  trajectory.best_threshold = pool.thresholds[trajectory.best_expert];
  return trajectory;
}

std::string trajectory_csv(const HedgeTrajectory& trajectory) {
  std::ostringstream out;
  out.precision(17);
  out << "round,expert,threshold,weight,probability,loss,k_hat,err\n";
  for (const RoundOutcome& r : trajectory.rounds) {
    for (std::size_t b = 0; b < r.experts.size(); ++b) {
      const ExpertOutcome& e = r.experts[b];
      out << r.round << ',' << b << ',' << e.threshold << ',' << r.weights[b] << ',' << r.distribution[b] << ','
          << e.loss << ',' << e.k_hat << ',' << (e.error ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace aoa
