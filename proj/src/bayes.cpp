#include "aoa/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aoa/errors.hpp"

namespace aoa {

void BayesRunConfig::validate() const {
  if (initial_samples < 2) throw ConfigError("need at least two initial samples");
  if (max_iterations < initial_samples) throw ConfigError("max iterations K must be >= the initial sample count");
  if (es_interval < 1) throw ConfigError("ES interval must be >= 1");
  if (early_stopping && !(grad_threshold > 0.0)) throw ConfigError("gradient threshold must be positive");
  if (!(tpe.gamma > 0.0 && tpe.gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (tpe.n_candidates < 1) throw ConfigError("n_candidates must be >= 1");
}

std::vector<double> grad(const ScalarObjective& objective, std::span<const double> theta) {
  std::vector<double> g(theta.size());
  std::vector<double> u(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    double delta = theta[i] == 0.0 ? 1e-12 : theta[i] / 10000.0;
    for (int halvings = 0;; ++halvings) {
      try {
        u[i] = theta[i] + delta;
        const double f1 = objective(u);
        u[i] = theta[i] - delta;
        const double f2 = objective(u);
        g[i] = (f1 - f2) / (2.0 * delta);
        break;
      } catch (const SingularGram&) {
        if (halvings == 3) throw;
        delta /= 2.0;
      }
    }
    u[i] = theta[i];
  }
  return g;
}

namespace {

std::vector<std::size_t> random_tuple(std::size_t dims, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> pool(count);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t m = 0; m < dims; ++m) {
    std::uniform_int_distribution<std::size_t> pick(m, count - 1);
    std::swap(pool[m], pool[pick(rng)]);
  }
  pool.resize(dims);
  return pool;
}

BayesRunReport run(LeastSquaresObjective& objective, const AngleGrid& grid, std::size_t num_sources,
                   const BayesRunConfig& requested, bool early_stopping) {
  BayesRunConfig config = requested;
  config.early_stopping = early_stopping;
  config.validate();
  if (num_sources == 0 || num_sources > grid.count) throw ConfigError("num_sources must be in [1, grid count]");
  if (num_sources > objective.array().size()) throw ConfigError("num_sources exceeds the number of antennas");

  const std::uint64_t evals_before = objective.evaluations();
  TpeState state(grid, num_sources, config.tpe, config.seed);
  BayesRunReport report;
  report.ls_error = std::numeric_limits<double>::infinity();
  report.best_trace.reserve(config.max_iterations);

  auto record = [&](const std::vector<double>& theta) {
    const double j = objective.residual(theta);
    state.observe(theta, j);
    if (j < report.ls_error) {
      report.ls_error = j;
      report.theta = theta;
    }
    report.best_trace.push_back(report.ls_error);
  };

  // Initial samples are distinct angle sets while fresh ones remain.
  for (std::size_t k = 1; k <= config.initial_samples; ++k) {
    std::vector<std::size_t> idx;
    for (int attempt = 0; attempt < 100; ++attempt) {
      idx = random_tuple(num_sources, grid.count, state.rng());
      if (!state.evaluated(idx)) break;
    }
    record(grid.angles(idx));
    report.stop_iteration = k;
  }

  const ScalarObjective residual = [&](std::span<const double> t) { return objective.residual(t); };
  for (std::size_t k = config.initial_samples + 1; k <= config.max_iterations; ++k) {
    record(propose_candidate(state, config.tpe.n_candidates));
    report.stop_iteration = k;
    if (early_stopping && k % config.es_interval == 0) {
      const std::vector<double> g = grad(residual, report.theta);
      ++report.es_checks;
      report.gradient_evals += 2 * num_sources;
      double steepest = 0.0;
      for (double gi : g) steepest = std::max(steepest, std::abs(gi));
      if (steepest <= config.grad_threshold) {
        report.stopped_early = k < config.max_iterations;
        break;
      }
    }
  }
  report.objective_evals = objective.evaluations() - evals_before;
  return report;
}

}  // namespace

BayesRunReport bayes_aoa(LeastSquaresObjective& objective, const AngleGrid& grid, std::size_t num_sources,
                         const BayesRunConfig& config) {
  return run(objective, grid, num_sources, config, false);
}

BayesRunReport bayes_aoa_es(LeastSquaresObjective& objective, const AngleGrid& grid, std::size_t num_sources,
                            const BayesRunConfig& config) {
  return run(objective, grid, num_sources, config, true);
}

}  // namespace aoa
