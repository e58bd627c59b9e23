#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aoa/errors.hpp"
#include "aoa/hedge.hpp"
#include "aoa/mle.hpp"
#include "doctest.h"

using namespace aoa;

namespace {

ProblemStream fixed_stream(std::size_t n, double noise, std::uint64_t seed) {
  return [=](std::size_t t) {
    const AngleGrid grid;
    std::mt19937_64 rng(seed + t);
    std::vector<double> truth = random_initialization(3, grid, rng).theta;
    std::sort(truth.begin(), truth.end());
    const Scenario s = Scenario::make(n, truth, noise);
    HedgeProblem p;
    p.array = s.array;
    p.z = generate_snapshot(s, seed + 7919 * (t + 1)).z;
    p.truth = truth;
    p.seed = seed * 31 + t;
    return p;
  };
}

BayesRunConfig short_runs() {
  BayesRunConfig c;
  c.max_iterations = 200;
  return c;
}

}  // namespace

TEST_CASE("loss formula") {
  CHECK(hedge_loss(true, 900, 1000, 0.1) == doctest::Approx(0.99));
  CHECK(hedge_loss(false, 0, 1000, 0.1) == 0.0);
  CHECK(hedge_loss(true, 1000, 1000, 0.1) == doctest::Approx(1.0));
  CHECK(hedge_loss(false, 500, 1000, 0.0) == 0.0);
}

TEST_CASE("weight update") {
  ExpertPool pool = ExpertPool::uniform({1.0, 0.5}, 0.5, 0.1);
  update_weights(pool, std::vector<double>{1.0, 0.0});
  CHECK(pool.weights[0] == 0.5);
  CHECK(pool.weights[1] == 1.0);
  CHECK(pool.round == 1);
  CHECK_THROWS_AS(update_weights(pool, std::vector<double>{1.0}), ConfigError);
}

TEST_CASE("a perfect expert takes over geometrically") {
  ExpertPool pool = ExpertPool::uniform(ExpertPool::default_thresholds(), 0.5, 0.1);
  for (int t = 1; t <= 30; ++t) {
    update_weights(pool, std::vector<double>{1, 1, 0, 1, 1});
    const double want = 1.0 / (1.0 + 4.0 * std::pow(0.5, t));
    CHECK(pool.distribution()[2] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(pool.best_expert() == 2);
}

TEST_CASE("weight ordering follows cumulative loss over 200 rounds") {
  ExpertPool pool = ExpertPool::uniform(ExpertPool::default_thresholds(), 0.5, 0.1);
  std::vector<double> cumulative(5, 0.0);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> loss(5);
    for (double& l : loss) l = std::round(u(rng) * 4) / 4;  // ties happen
    update_weights(pool, loss);
    for (std::size_t b = 0; b < 5; ++b) cumulative[b] += loss[b];
    const auto p = pool.distribution();
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
    for (std::size_t a = 0; a < 5; ++a) {
      CHECK(p[a] >= 0.0);
      for (std::size_t b = 0; b < 5; ++b) {
        if (cumulative[a] < cumulative[b]) CHECK(pool.weights[a] > pool.weights[b]);
      }
    }
  }
}

TEST_CASE("regret against the best expert grows sublinearly") {
  ExpertPool pool = ExpertPool::uniform(ExpertPool::default_thresholds(), 0.5, 0.1);
  const std::vector<double> rate{0.6, 0.5, 0.3, 0.2, 0.35};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> cumulative(5, 0.0);
  double expected = 0.0;
  double regret_half = 0.0;
  for (int t = 1; t <= 200; ++t) {
    std::vector<double> loss(5);
    for (std::size_t b = 0; b < 5; ++b) loss[b] = u(rng) < rate[b] ? 1.0 : 0.0;
    const auto p = pool.distribution();
    for (std::size_t b = 0; b < 5; ++b) expected += p[b] * loss[b];
    update_weights(pool, loss);
    for (std::size_t b = 0; b < 5; ++b) cumulative[b] += loss[b];
    if (t == 100) regret_half = expected - *std::min_element(cumulative.begin(), cumulative.end());
  }
  const double regret = expected - *std::min_element(cumulative.begin(), cumulative.end());
  CHECK(regret / 200.0 < regret_half / 100.0 + 0.05);
  CHECK(regret / 200.0 < 0.1);
}

TEST_CASE("zeta zero: equal error histories keep equal weights") {
  ExpertPool pool = ExpertPool::uniform({1.0, 0.5}, 0.5, 0.0);
  for (int t = 0; t < 5; ++t) {
    update_weights(pool, std::vector<double>{hedge_loss(t % 2 == 0, 100 * t, 1000, 0.0),
                                             hedge_loss(t % 2 == 0, 900, 1000, 0.0)});
  }
  CHECK(pool.weights[0] == pool.weights[1]);
}

TEST_CASE("reset restores uniform weights") {
  ExpertPool pool = ExpertPool::uniform(ExpertPool::default_thresholds(), 0.5, 0.1);
  update_weights(pool, std::vector<double>{0.1, 0.9, 0.3, 0.2, 1.0});
  const ExpertPool reset = reset_on_change(pool);
  for (double p : reset.distribution()) CHECK(p == doctest::Approx(0.2));
  CHECK(reset.round == 1);
  CHECK(reset.thresholds == pool.thresholds);
}

TEST_CASE("pool validation") {
  CHECK_THROWS_AS(ExpertPool::uniform({}, 0.5, 0.1), ConfigError);
  CHECK_THROWS_AS(ExpertPool::uniform({1.0}, 1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(ExpertPool::uniform({1.0}, 0.5, 1.5), ConfigError);
  CHECK_THROWS_AS(ExpertPool::uniform({-1.0}, 0.5, 0.1), ConfigError);
}

TEST_CASE("one real round: losses follow the formula and p is normalized") {
  const AngleGrid grid;
  ExpertPool pool = ExpertPool::uniform({1.0, 0.01}, 0.5, 0.1);
  const HedgeProblem problem = fixed_stream(8, 1e-6, 1)(0);
  const RoundOutcome out = hedge_round(pool, problem, grid, short_runs());
  REQUIRE(out.experts.size() == 2);
  for (std::size_t b = 0; b < 2; ++b) {
    const ExpertOutcome& e = out.experts[b];
    CHECK(e.loss == doctest::Approx(hedge_loss(e.error, e.k_hat, 200, 0.1)));
    CHECK(e.loss >= 0.0);
    CHECK(e.loss <= 1.0);
    CHECK(out.weights[b] == doctest::Approx(std::pow(0.5, e.loss)));
  }
  CHECK(out.distribution[0] + out.distribution[1] == doctest::Approx(1.0));
  CHECK(pool.round == 1);
}

TEST_CASE("a reset mid-stream matches a fresh pool on the same problems") {
  const AngleGrid grid;
  const ProblemStream noisy = fixed_stream(8, 1e-2, 5);
  const ProblemStream quiet = fixed_stream(8, 1e-6, 9);
  const std::size_t half = 2;
  const ProblemStream switched = [&](std::size_t t) {
    HedgeProblem p = t < half ? noisy(t) : quiet(t - half);
    p.environment_changed = t == half;
    return p;
  };
  ExpertPool a = ExpertPool::uniform({1.0, 0.1, 0.01}, 0.5, 0.1);
  const HedgeTrajectory ta = run_hedge(a, 2 * half, switched, grid, short_runs());
  ExpertPool b = ExpertPool::uniform({1.0, 0.1, 0.01}, 0.5, 0.1);
  const HedgeTrajectory tb = run_hedge(b, half, quiet, grid, short_runs());
  for (std::size_t t = 0; t < half; ++t) {
    CHECK(ta.rounds[half + t].weights == tb.rounds[t].weights);
    for (std::size_t e = 0; e < 3; ++e) CHECK(ta.rounds[half + t].experts[e].k_hat == tb.rounds[t].experts[e].k_hat);
  }
  CHECK(ta.best_expert == tb.best_expert);
}

TEST_CASE("trajectory CSV") {
  const AngleGrid grid;
  ExpertPool pool = ExpertPool::uniform({1.0, 0.5}, 0.5, 0.1);
  const HedgeTrajectory t = run_hedge(pool, 2, fixed_stream(8, 1e-6, 3), grid, short_runs());
  const std::string csv = trajectory_csv(t);
  CHECK(csv.rfind("round,expert,threshold,weight,probability,loss,k_hat,err\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK_THROWS_AS(run_hedge(pool, 0, fixed_stream(8, 1e-6, 3), grid, short_runs()), ConfigError);
}
