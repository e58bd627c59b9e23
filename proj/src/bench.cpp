#include "aoa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "aoa/bayes.hpp"
#include "aoa/errors.hpp"
#include "aoa/key_value.hpp"
#include "aoa/mle.hpp"
#include "aoa/seeds.hpp"
#include "aoa/signal_model.hpp"
#include "json.hpp"

namespace aoa {

namespace {

struct NamedMethod {
  Method method;
  std::string_view name;
};

constexpr NamedMethod kMethods[] = {{Method::brute, "brute"}, {Method::em, "em"},
                                    {Method::sage, "sage"},   {Method::bayes, "bayes"},
                                    {Method::bayes_es, "bayes-es"}, {Method::hedge, "hedge"}};

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& m : kMethods) {
    if (m.method == method) return m.name;
  }
  return "?";
}

std::string_view to_string(InitMode mode) { return mode == InitMode::good ? "good" : "random"; }
std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

Method parse_method(std::string_view name) {
  for (const auto& m : kMethods) {
    if (m.name == name) return m.method;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (brute|em|sage|bayes|bayes-es|hedge)");
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "good") return InitMode::good;
  if (name == "random") return InitMode::random;
  throw ConfigError("unknown init '" + std::string(name) + "' (good|random)");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + std::string(name) + "' (csv|json)");
}

void ExperimentConfig::validate() const {
  grid.validate();
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (num_antennas.empty()) throw ConfigError("at least one antenna count is required");
  if (noise_variances.empty()) throw ConfigError("at least one noise variance is required");
  if (num_sources < 1) throw ConfigError("num-sources must be >= 1");
  if (num_sources > grid.count) throw ConfigError("num-sources exceeds the grid size");
  for (std::size_t n : num_antennas) {
    if (num_sources > n) {
      throw ConfigError("num-sources (M=" + std::to_string(num_sources) + ") exceeds num-antennas (N=" +
                        std::to_string(n) + ")");
    }
  }
  for (double s : noise_variances) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("noise variance must be finite and >= 0");
  }
  if (method == Method::bayes_es || method == Method::hedge) {
    if (grad_thresholds.empty()) throw ConfigError("at least one gradient threshold is required");
  }
  if (method == Method::em || method == Method::sage) {
    if (!(mle_tolerance > 0.0)) throw ConfigError("mle tolerance must be positive");
    if (mle_max_iterations < 1) throw ConfigError("mle max iterations must be >= 1");
  }
  if (method == Method::bayes || method == Method::bayes_es || method == Method::hedge) {
    BayesRunConfig bayes;
    bayes.max_iterations = max_iterations;
    bayes.initial_samples = initial_samples;
    bayes.es_interval = es_interval;
    bayes.tpe.gamma = gamma;
    bayes.tpe.n_candidates = n_candidates;
    bayes.early_stopping = method != Method::bayes;
    for (double t : grad_thresholds) {
      bayes.grad_threshold = t;
      bayes.validate();
    }
  }
  if (method == Method::hedge) ExpertPool::uniform(grad_thresholds, beta, zeta);
}

namespace {

std::size_t parse_count(std::string_view key, std::string_view value) {
  const long long v = parse_integer(key, value);
  if (v < 0) throw ConfigError(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view key, std::string_view value, Parse parse) {
  std::vector<T> out;
  for (const std::string& item : split_list(value)) out.push_back(parse(key, item));
  if (out.empty()) throw ConfigError(std::string(key) + " needs at least one value");
  return out;
}

}  // namespace

const std::vector<std::string>& setting_names() {
  static const std::vector<std::string> names = {
      "method",          "init",         "num-antennas", "num-sources", "noise-variance", "grad-threshold",
      "grid-lower",      "grid-resolution", "grid-count", "max-iterations", "es-interval", "initial-samples",
      "gamma",           "n-candidates", "beta",         "zeta",        "mle-tolerance",  "mle-max-iterations",
      "runs",            "seed",         "jobs",         "output",      "format"};
  return names;
}

void apply_setting(ExperimentConfig& c, std::string_view raw_key, std::string_view value) {
  std::string key(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "method") c.method = parse_method(value);
  else if (key == "init") c.init = parse_init_mode(value);
  else if (key == "num-antennas") c.num_antennas = parse_list<std::size_t>(key, value, parse_count);
  else if (key == "num-sources") c.num_sources = parse_count(key, value);
  else if (key == "noise-variance") c.noise_variances = parse_list<double>(key, value, parse_double);
  else if (key == "grad-threshold") c.grad_thresholds = parse_list<double>(key, value, parse_double);
  else if (key == "grid-lower") c.grid.lower = parse_double(key, value);
  else if (key == "grid-resolution") c.grid.resolution = parse_double(key, value);
  else if (key == "grid-count") c.grid.count = parse_count(key, value);
  else if (key == "max-iterations") c.max_iterations = parse_count(key, value);
  else if (key == "es-interval") c.es_interval = parse_count(key, value);
  else if (key == "initial-samples") c.initial_samples = parse_count(key, value);
  else if (key == "gamma") c.gamma = parse_double(key, value);
  else if (key == "n-candidates") c.n_candidates = parse_count(key, value);
  else if (key == "beta") c.beta = parse_double(key, value);
  else if (key == "zeta") c.zeta = parse_double(key, value);
  else if (key == "mle-tolerance") c.mle_tolerance = parse_double(key, value);
  else if (key == "mle-max-iterations") c.mle_max_iterations = parse_count(key, value);
  else if (key == "runs") c.runs = parse_count(key, value);
  else if (key == "seed") c.base_seed = static_cast<std::uint64_t>(parse_count(key, value));
  else if (key == "jobs") c.jobs = parse_count(key, value);
  else if (key == "output") c.output_path = std::string(value);
  else if (key == "format") c.format = parse_output_format(value);
  else throw ConfigError("unknown setting '" + std::string(raw_key) + "'");
}

void apply_settings(ExperimentConfig& config, const KeyValues& settings) {
  for (const auto& [key, value] : settings) apply_setting(config, key, value);
}

std::uint64_t run_seed(const ExperimentConfig& config, std::size_t run) {
  return config.base_seed + static_cast<std::uint64_t>(run);
}

namespace {

struct RunSetup {
  std::uint64_t seed = 0;
  Scenario scenario;
  CVector z;
};

// Truth depends on the run seed only, so every cell of a sweep sees the same
// angle sets.
RunSetup make_setup(const ExperimentConfig& config, std::size_t num_antennas, double noise_variance,
                    std::size_t run) {
  RunSetup s;
  s.seed = run_seed(config, run);
  std::mt19937_64 truth_rng(derive_seed(s.seed, static_cast<std::uint32_t>(SeedStream::truth)));
  std::vector<double> truth = random_initialization(config.num_sources, config.grid, truth_rng).theta;
  std::sort(truth.begin(), truth.end());
  s.scenario = Scenario::make(num_antennas, std::move(truth), noise_variance);
  s.z = generate_snapshot(s.scenario, derive_seed(s.seed, static_cast<std::uint32_t>(SeedStream::noise))).z;
  return s;
}

bool same_set(std::vector<double> a, const std::vector<double>& sorted_truth) {
  std::sort(a.begin(), a.end());
  if (a.size() != sorted_truth.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - sorted_truth[i]) > 1e-9) return false;
  }
  return true;
}

// Unit amplitudes in the generator, so the comparison is against 1.
bool amplitudes_match(const LeastSquaresObjective& objective, const std::vector<double>& sorted_estimate,
                      const CVector& truth_r) {
  try {
    const CVector r = objective.recover_amplitudes(sorted_estimate);
    for (std::size_t m = 0; m < r.size(); ++m) {
      if (std::abs(r[m] - truth_r[m]) > kAmplitudeTolerance) return false;
    }
    return true;
  } catch (const SingularGram&) {
    return false;
  }
}

BayesRunConfig bayes_config(const ExperimentConfig& config, bool early_stopping, double threshold) {
  BayesRunConfig b;
  b.max_iterations = config.max_iterations;
  b.initial_samples = config.initial_samples;
  b.es_interval = config.es_interval;
  b.tpe.gamma = config.gamma;
  b.tpe.n_candidates = config.n_candidates;
  b.early_stopping = early_stopping;
  b.grad_threshold = threshold;
  return b;
}

void finish_record(RunRecord& rec, const RunSetup& setup, const LeastSquaresObjective& objective) {
  std::sort(rec.estimate.begin(), rec.estimate.end());
  rec.correct_theta = same_set(rec.estimate, rec.truth);
  rec.correct_r = rec.correct_theta && amplitudes_match(objective, rec.estimate, setup.scenario.amplitudes);
}

RunRecord estimate(const ExperimentConfig& config, Method method, const RunSetup& setup,
                   std::optional<double> grad_threshold, std::size_t run) {
  RunRecord rec;
  rec.run = run;
  rec.seed = setup.seed;
  rec.truth = setup.scenario.angles;
  const std::size_t M = config.num_sources;
  const std::uint64_t estimator_seed = derive_seed(setup.seed, static_cast<std::uint32_t>(SeedStream::estimator));

  try {
    switch (method) {
      case Method::brute: {
        LeastSquaresObjective objective(setup.scenario.array, setup.z);
        const BruteForceResult res = brute_force_estimate(objective, config.grid, M);
        rec.estimate = res.theta;
        rec.iterations = static_cast<std::size_t>(res.evaluations);
        rec.objective_evals = res.evaluations;
        finish_record(rec, setup, objective);
        break;
      }
      case Method::em:
      case Method::sage: {
        MleParams init;
        if (config.init == InitMode::good) {
          init = good_initialization(rec.truth, config.grid);
        } else {
          std::mt19937_64 rng(derive_seed(setup.seed, static_cast<std::uint32_t>(SeedStream::init)));
          init = random_initialization(M, config.grid, rng);
        }
        const MleOptions opts{config.mle_tolerance, config.mle_max_iterations};
        MleReport rep = method == Method::em ? em_estimate(setup.z, setup.scenario.array, init, config.grid, opts)
                                             : sage_estimate(setup.z, setup.scenario.array, init, config.grid, opts);
        score_mle_report(rep, rec.truth, setup.scenario.amplitudes);
        rec.estimate = rep.params.theta;
        std::sort(rec.estimate.begin(), rec.estimate.end());
        rec.correct_theta = std::all_of(rep.acc_theta.begin(), rep.acc_theta.end(), [](bool b) { return b; });
        rec.correct_r = std::all_of(rep.acc_r.begin(), rep.acc_r.end(), [](bool b) { return b; });
        rec.iterations = rep.iterations;
        rec.converged = rep.converged;
        break;
      }
      case Method::bayes:
      case Method::bayes_es: {
        LeastSquaresObjective objective(setup.scenario.array, setup.z);
        BayesRunConfig b = bayes_config(config, method == Method::bayes_es, grad_threshold.value_or(0.05));
        b.seed = estimator_seed;
        const BayesRunReport rep = method == Method::bayes ? bayes_aoa(objective, config.grid, M, b)
                                                           : bayes_aoa_es(objective, config.grid, M, b);
        rec.estimate = rep.theta;
        rec.iterations = rep.stop_iteration;
        rec.objective_evals = rep.objective_evals;
        rec.gradient_evals = rep.gradient_evals;
        finish_record(rec, setup, objective);
        break;
      }
      case Method::hedge:
        throw ConfigError("hedge cells are not built from independent runs");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    rec.converged = false;
    rec.correct_theta = false;
    rec.correct_r = false;
    rec.failure = e.what();
  }
  return rec;
}

// Results land in slot j whatever the thread count, so the reduction order
// is fixed.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  const std::size_t workers = std::min(jobs, count);
  if (workers <= 1) {
    for (std::size_t j = 0; j < count; ++j) fn(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < count; j = next++) {
        try {
          fn(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SweepCell hedge_cell(const ExperimentConfig& config, std::size_t num_antennas, double noise_variance) {
  SweepCell cell;
  cell.method = Method::hedge;
  cell.num_antennas = num_antennas;
  cell.num_sources = config.num_sources;
  cell.noise_variance = noise_variance;

  ExpertPool pool = ExpertPool::uniform(config.grad_thresholds, config.beta, config.zeta);
  std::vector<RunSetup> setups(config.runs);
  parallel_for(config.runs, config.jobs,
               [&](std::size_t t) { setups[t] = make_setup(config, num_antennas, noise_variance, t); });
  const ProblemStream stream = [&](std::size_t t) {
    HedgeProblem p;
    p.array = setups[t].scenario.array;
    p.z = setups[t].z;
    p.truth = setups[t].scenario.angles;
    p.seed = derive_seed(setups[t].seed, static_cast<std::uint32_t>(SeedStream::estimator));
    return p;
  };
  HedgeTrajectory trajectory = run_hedge(pool, config.runs, stream, config.grid, bayes_config(config, true, 0.05));

  // Per-run records follow the expert that holds the largest final weight.
  const std::size_t b = trajectory.best_expert;
  for (std::size_t t = 0; t < config.runs; ++t) {
    const ExpertOutcome& e = trajectory.rounds[t].experts[b];
    RunRecord rec;
    rec.run = t;
    rec.seed = setups[t].seed;
    rec.truth = setups[t].scenario.angles;
    rec.estimate = e.theta;
    rec.iterations = e.k_hat;
    rec.objective_evals = e.objective_evals;
    rec.gradient_evals = e.gradient_evals;
    rec.converged = !e.failed;
    if (!e.failed) {
      LeastSquaresObjective objective(setups[t].scenario.array, setups[t].z);
      finish_record(rec, setups[t], objective);
    }
    cell.records.push_back(std::move(rec));
  }
  cell.grad_threshold = trajectory.best_threshold;
  cell.hedge = std::move(trajectory);
  aggregate(cell);
  return cell;
}

}  // namespace

RunRecord run_once(const ExperimentConfig& config, Method method, std::size_t num_antennas, double noise_variance,
                   std::optional<double> grad_threshold, std::size_t run) {
  return estimate(config, method, make_setup(config, num_antennas, noise_variance, run), grad_threshold, run);
}

namespace {

// Angles ascending, amplitudes kept with their sources.
Scenario sorted_scenario(const Scenario& scenario) {
  scenario.validate();
  std::vector<std::size_t> order(scenario.num_sources());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scenario.angles[a] < scenario.angles[b]; });
  Scenario sorted = scenario;
  for (std::size_t m = 0; m < order.size(); ++m) {
    sorted.angles[m] = scenario.angles[order[m]];
    sorted.amplitudes[m] = scenario.amplitudes[order[m]];
  }
  return sorted;
}

}  // namespace

Snapshot snapshot_for_run(const ExperimentConfig& config, const Scenario& scenario, std::size_t run) {
  const std::uint64_t seed = run_seed(config, run);
  Snapshot snap = generate_snapshot(sorted_scenario(scenario),
                                    derive_seed(seed, static_cast<std::uint32_t>(SeedStream::noise)),
                                    "run" + std::to_string(run));
  snap.seed = seed;
  return snap;
}

RunRecord run_on_scenario(const ExperimentConfig& config, Method method, const Scenario& scenario,
                          std::optional<double> grad_threshold, std::size_t run) {
  if (scenario.num_sources() != config.num_sources) throw ConfigError("scenario source count differs from num-sources");
  RunSetup s;
  s.seed = run_seed(config, run);
  s.scenario = sorted_scenario(scenario);
  s.z = snapshot_for_run(config, scenario, run).z;
  return estimate(config, method, s, grad_threshold, run);
}

void aggregate(SweepCell& cell) {
  cell.runs = cell.records.size();
  cell.accuracy_theta = cell.accuracy_r = 0.0;
  cell.mean_iterations = cell.mean_objective_evals = cell.mean_gradient_evals = 0.0;
  if (cell.records.empty()) return;
  std::size_t hits_theta = 0, hits_r = 0;
  double iters = 0.0, evals = 0.0, grads = 0.0;
  for (const RunRecord& r : cell.records) {
    hits_theta += r.correct_theta ? 1 : 0;
    hits_r += r.correct_r ? 1 : 0;
    iters += static_cast<double>(r.iterations);
    evals += static_cast<double>(r.objective_evals);
    grads += static_cast<double>(r.gradient_evals);
  }
  const double n = static_cast<double>(cell.records.size());
  cell.accuracy_theta = 100.0 * static_cast<double>(hits_theta) / n;
  cell.accuracy_r = 100.0 * static_cast<double>(hits_r) / n;
  cell.mean_iterations = iters / n;
  cell.mean_objective_evals = evals / n;
  cell.mean_gradient_evals = grads / n;
}

long long bucket_iterations(double mean_iterations) { return std::llround(mean_iterations / 100.0) * 100; }

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;

  const bool per_threshold = config.method == Method::bayes_es;
  const std::vector<std::optional<double>> thresholds = [&] {
    std::vector<std::optional<double>> t;
    if (per_threshold) {
      for (double g : config.grad_thresholds) t.emplace_back(g);
    } else {
      t.emplace_back(std::nullopt);
    }
    return t;
  }();

  for (std::size_t n : config.num_antennas) {
    for (double s2 : config.noise_variances) {
      if (config.method == Method::hedge) {
        result.cells.push_back(hedge_cell(config, n, s2));
        continue;
      }
      for (const auto& eps : thresholds) {
        SweepCell cell;
        cell.method = config.method;
        if (config.method == Method::em || config.method == Method::sage) cell.init = config.init;
        cell.num_antennas = n;
        cell.num_sources = config.num_sources;
        cell.noise_variance = s2;
        cell.grad_threshold = eps;
        cell.records.resize(config.runs);
        parallel_for(config.runs, config.jobs,
                     [&](std::size_t j) { cell.records[j] = run_once(config, config.method, n, s2, eps, j); });
        aggregate(cell);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

using Json = nlohmann::ordered_json;

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["method"] = to_string(c.method);
  j["init"] = to_string(c.init);
  j["num_antennas"] = c.num_antennas;
  j["num_sources"] = c.num_sources;
  j["noise_variances"] = c.noise_variances;
  j["grad_thresholds"] = c.grad_thresholds;
  j["grid"] = {{"lower", c.grid.lower}, {"resolution", c.grid.resolution}, {"count", c.grid.count}};
  j["max_iterations"] = c.max_iterations;
  j["es_interval"] = c.es_interval;
  j["initial_samples"] = c.initial_samples;
  j["gamma"] = c.gamma;
  j["n_candidates"] = c.n_candidates;
  j["beta"] = c.beta;
  j["zeta"] = c.zeta;
  j["mle_tolerance"] = c.mle_tolerance;
  j["mle_max_iterations"] = c.mle_max_iterations;
  j["runs"] = c.runs;
  j["seed"] = c.base_seed;
  j["jobs"] = c.jobs;
  j["output"] = c.output_path;
  j["format"] = to_string(c.format);
  return j;
}

Json record_to_json(const RunRecord& r) {
  Json rec;
  rec["run"] = r.run;
  rec["seed"] = r.seed;
  rec["truth"] = r.truth;
  rec["estimate"] = r.estimate;
  rec["correct_theta"] = r.correct_theta;
  rec["correct_r"] = r.correct_r;
  rec["iterations"] = r.iterations;
  rec["objective_evals"] = r.objective_evals;
  rec["gradient_evals"] = r.gradient_evals;
  rec["converged"] = r.converged;
  if (!r.failure.empty()) rec["failure"] = r.failure;
  return rec;
}

}  // namespace

std::string record_json(const RunRecord& record) { return record_to_json(record).dump(2) + "\n"; }

std::string config_json(const ExperimentConfig& config) { return config_to_json(config).dump(2); }

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "method,init,num_antennas,num_sources,noise_variance,grad_threshold,runs,accuracy_theta,accuracy_r,"
         "mean_iterations,iterations_bucketed,mean_objective_evals,mean_gradient_evals\r\n";
  for (const SweepCell& c : result.cells) {
    out << csv_field(to_string(c.method)) << ',' << (c.init ? to_string(*c.init) : "") << ',' << c.num_antennas
        << ',' << c.num_sources << ',' << format("%g", c.noise_variance) << ','
        << (c.grad_threshold ? format("%g", *c.grad_threshold) : "") << ',' << c.runs << ','
        << format("%.1f", c.accuracy_theta) << ',' << format("%.1f", c.accuracy_r) << ','
        << format("%.0f", c.mean_iterations) << ',' << bucket_iterations(c.mean_iterations) << ','
        << format("%.0f", c.mean_objective_evals) << ',' << format("%.0f", c.mean_gradient_evals) << "\r\n";
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result) {
  Json root;
  root["config"] = config_to_json(result.config);
  Json cells = Json::array();
  for (const SweepCell& c : result.cells) {
    Json cell;
    cell["method"] = to_string(c.method);
    cell["init"] = c.init ? Json(to_string(*c.init)) : Json(nullptr);
    cell["num_antennas"] = c.num_antennas;
    cell["num_sources"] = c.num_sources;
    cell["noise_variance"] = c.noise_variance;
    cell["grad_threshold"] = c.grad_threshold ? Json(*c.grad_threshold) : Json(nullptr);
    cell["runs"] = c.runs;
    cell["accuracy_theta"] = c.accuracy_theta;
    cell["accuracy_r"] = c.accuracy_r;
    cell["mean_iterations"] = c.mean_iterations;
    cell["iterations_bucketed"] = bucket_iterations(c.mean_iterations);
    cell["mean_objective_evals"] = c.mean_objective_evals;
    cell["mean_gradient_evals"] = c.mean_gradient_evals;
    Json records = Json::array();
    for (const RunRecord& r : c.records) records.push_back(record_to_json(r));
    cell["records"] = std::move(records);
    if (c.hedge) {
      cell["hedge"] = {{"best_expert", c.hedge->best_expert},
                       {"best_threshold", c.hedge->best_threshold},
                       {"final_weights", c.hedge->rounds.empty() ? std::vector<double>{}
                                                                 : c.hedge->rounds.back().weights}};
    }
    cells.push_back(std::move(cell));
  }
  root["cells"] = std::move(cells);
  return root.dump(2) + "\n";
}

void emit_table(const SweepResult& result, OutputFormat format, const std::string& path) {
  write_text_file(path, format == OutputFormat::csv ? sweep_csv(result) : sweep_json(result));
}

}  // namespace aoa
