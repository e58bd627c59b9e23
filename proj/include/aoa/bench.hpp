#pragma once

// Seeded Monte Carlo sweeps over (N, noise variance, gradient threshold) for
// every estimator, plus CSV/JSON emitters for the aggregated cells.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoa/grid_search.hpp"
#include "aoa/hedge.hpp"
#include "aoa/key_value.hpp"
#include "aoa/linalg.hpp"
#include "aoa/signal_model.hpp"

namespace aoa {

enum class Method { brute, em, sage, bayes, bayes_es, hedge };
enum class InitMode { good, random };
enum class OutputFormat { csv, json };

std::string_view to_string(Method method);
std::string_view to_string(InitMode mode);
std::string_view to_string(OutputFormat format);
// Throw ConfigError on unknown names.
Method parse_method(std::string_view name);
InitMode parse_init_mode(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

struct ExperimentConfig {
  Method method = Method::bayes_es;
  InitMode init = InitMode::good;  // em and sage only
  // Each combination of the three lists below is one sweep cell. For hedge
  // the thresholds form the expert pool instead.
  std::vector<std::size_t> num_antennas{8};
  std::vector<double> noise_variances{1e-6};
  std::vector<double> grad_thresholds{0.05};
  std::size_t num_sources = 3;
  AngleGrid grid;
  std::size_t max_iterations = 1000;  // K
  std::size_t es_interval = 100;      // I
  std::size_t initial_samples = 20;
  double gamma = 0.25;
  std::size_t n_candidates = 24;
  double beta = 0.5;
  double zeta = 0.1;
  double mle_tolerance = 1e-6;
  std::size_t mle_max_iterations = 1000;
  std::size_t runs = 50;  // hedge: rounds T
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  // Throws ConfigError.
  void validate() const;
};

// Setting names shared by the CLI flags and the config file (kebab-case;
// underscores are accepted too). Lists are comma or space separated.
const std::vector<std::string>& setting_names();
// Throws ConfigError for unknown keys or malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
// Later entries win.
void apply_settings(ExperimentConfig& config, const KeyValues& settings);

// Sub-streams of a run seed.
enum class SeedStream : std::uint32_t { truth = 1, noise = 2, estimator = 3, init = 4 };

std::uint64_t run_seed(const ExperimentConfig& config, std::size_t run);

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::vector<double> truth;     // sorted
  std::vector<double> estimate;  // sorted
  bool correct_theta = false;
  bool correct_r = false;
  std::size_t iterations = 0;  // evaluations, EM/SAGE iterations or k-hat
  std::uint64_t objective_evals = 0;
  std::uint64_t gradient_evals = 0;
  bool converged = true;  // false when EM/SAGE hit the cap or the estimator threw
  std::string failure;    // error message when the estimator threw
};

struct SweepCell {
  Method method = Method::brute;
  std::optional<InitMode> init;
  std::size_t num_antennas = 0;
  std::size_t num_sources = 0;
  double noise_variance = 0.0;
  std::optional<double> grad_threshold;
  std::size_t runs = 0;
  double accuracy_theta = 0.0;  // percent
  double accuracy_r = 0.0;      // percent
  double mean_iterations = 0.0;
  double mean_objective_evals = 0.0;
  double mean_gradient_evals = 0.0;
  std::vector<RunRecord> records;
  std::optional<HedgeTrajectory> hedge;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepCell> cells;
};

// Fills the aggregate fields of a cell from its records.
void aggregate(SweepCell& cell);

// Mean iteration count rounded to the nearest hundred.
long long bucket_iterations(double mean_iterations);

// The truth, snapshot and estimator for one seeded run.
RunRecord run_once(const ExperimentConfig& config, Method method, std::size_t num_antennas, double noise_variance,
                   std::optional<double> grad_threshold, std::size_t run);

// Same as run_once with a caller-supplied scenario; the run seed still drives
// noise and estimator randomness.
RunRecord run_on_scenario(const ExperimentConfig& config, Method method, const Scenario& scenario,
                          std::optional<double> grad_threshold, std::size_t run);

// The snapshot run_on_scenario sees: angles sorted, seed field = run seed.
Snapshot snapshot_for_run(const ExperimentConfig& config, const Scenario& scenario, std::size_t run);

SweepResult run_sweep(const ExperimentConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);
std::string config_json(const ExperimentConfig& config);
std::string record_json(const RunRecord& record);

// Writes CSV or JSON to path. Throws IoError.
void emit_table(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace aoa
