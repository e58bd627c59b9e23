#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aoa/bench.hpp"
#include "aoa/errors.hpp"
#include "aoa/key_value.hpp"
#include "aoa/kernels.hpp"
#include "aoa/reproduce.hpp"
#include "aoa/signal_model.hpp"

namespace {

// Every setting is captured as text so flags and the config file share one
// parser; the config file is applied last and wins.
struct SettingFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void attach(CLI::App& app) {
    for (const std::string& name : aoa::setting_names()) {
      options[name] = app.add_option("--" + name, values[name]);
    }
    app.add_option("--config", config_path, "key = value file; its entries override flags");
  }

  aoa::KeyValues collect() const {
    aoa::KeyValues out;
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) out.emplace_back(name, values.at(name));
    }
    if (!config_path.empty()) {
      for (auto& kv : aoa::parse_key_values(aoa::read_text_file(config_path))) out.push_back(std::move(kv));
    }
    return out;
  }
};

bool has_setting(const aoa::KeyValues& kv, const std::string& name) {
  for (const auto& [k, v] : kv) {
    std::string key = k;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == name) return true;
  }
  return false;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    aoa::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angle-of-arrival estimator benchmark"};
  app.require_subcommand(1);

  std::string isa;
  app.add_option("--isa", isa, "kernel set: scalar|avx2 (default: best available)");

  auto* sweep = app.add_subcommand("sweep", "run a seeded sweep and emit CSV or JSON");
  SettingFlags sweep_flags;
  sweep_flags.attach(*sweep);
  std::string trajectory_path;
  sweep->add_option("--trajectory", trajectory_path, "hedge weight trajectory CSV (method=hedge)");

  auto* repro = app.add_subcommand("reproduce", "regenerate a published table with a comparison report");
  std::string table;
  std::size_t repro_runs = 0;
  std::uint64_t repro_seed = 1;
  std::size_t repro_jobs = 1;
  std::string out_dir = ".";
  repro->add_option("table", table, "t1|t2|t4|t5")->required();
  repro->add_option("--runs", repro_runs, "override the preset run count");
  repro->add_option("--seed", repro_seed, "base seed");
  repro->add_option("--jobs", repro_jobs, "worker threads");
  repro->add_option("--out-dir", out_dir, "output directory");

  auto* single = app.add_subcommand("single", "one seeded run, printed as JSON");
  SettingFlags single_flags;
  single_flags.attach(*single);
  std::size_t run_index = 0;
  std::string angles, scenario_path, snapshot_path;
  single->add_option("--run", run_index, "run index j (seed = base + j)");
  single->add_option("--angles", angles, "true angles in radians, comma separated");
  single->add_option("--scenario", scenario_path, "scenario file (overrides num-antennas, noise and angles)");
  single->add_option("--snapshot-out", snapshot_path, "append the snapshot as a CSV row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!isa.empty()) {
      if (isa == "scalar") aoa::kernels::select_isa(aoa::kernels::Isa::scalar);
      else if (isa == "avx2") aoa::kernels::select_isa(aoa::kernels::Isa::avx2);
      else throw aoa::ConfigError("unknown isa '" + isa + "' (scalar|avx2)");
    }

    if (*sweep) {
      const aoa::KeyValues settings = sweep_flags.collect();
      if (!has_setting(settings, "seed")) throw aoa::ConfigError("--seed is required for sweep");
      aoa::ExperimentConfig config;
      aoa::apply_settings(config, settings);
      const aoa::SweepResult result = aoa::run_sweep(config);
      const std::string text =
          config.format == aoa::OutputFormat::csv ? aoa::sweep_csv(result) : aoa::sweep_json(result);
      write_or_print(config.output_path, text);
      if (!trajectory_path.empty()) {
        if (config.method != aoa::Method::hedge) throw aoa::ConfigError("--trajectory needs method=hedge");
        std::string csv;
        for (const aoa::SweepCell& cell : result.cells) {
          const std::string part = aoa::trajectory_csv(*cell.hedge);
          csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
        }
        aoa::write_text_file(trajectory_path, csv);
      }
    } else if (*repro) {
      const aoa::TableId id = aoa::parse_table_id(table);
      const aoa::Reproduction rep = aoa::reproduce(id, {repro_runs, repro_seed, repro_jobs});
      aoa::write_reproduction(rep, out_dir);
      std::cout << aoa::comparison_csv(rep);
    } else if (*single) {
      aoa::ExperimentConfig config;
      aoa::apply_settings(config, single_flags.collect());
      std::optional<aoa::Scenario> scenario;
      if (!scenario_path.empty()) {
        scenario = aoa::scenario_from_config(aoa::read_text_file(scenario_path));
        config.num_sources = scenario->num_sources();
      } else if (!angles.empty()) {
        std::vector<double> theta;
        for (const std::string& a : aoa::split_list(angles)) theta.push_back(aoa::parse_double("angles", a));
        config.num_sources = theta.size();
        scenario = aoa::Scenario::make(config.num_antennas.front(), theta, config.noise_variances.front());
      }
      config.runs = run_index + 1;
      config.validate();
      if (config.method == aoa::Method::hedge) throw aoa::ConfigError("single does not support method=hedge");
      std::optional<double> eps;
      if (config.method == aoa::Method::bayes_es) eps = config.grad_thresholds.front();
      const aoa::RunRecord record =
          scenario ? aoa::run_on_scenario(config, config.method, *scenario, eps, run_index)
                   : aoa::run_once(config, config.method, config.num_antennas.front(),
                                   config.noise_variances.front(), eps, run_index);
      if (!snapshot_path.empty()) {
        const aoa::Scenario s = scenario ? *scenario
                                         : aoa::Scenario::make(config.num_antennas.front(), record.truth,
                                                               config.noise_variances.front());
        aoa::write_text_file(snapshot_path, aoa::snapshot_csv_header(s.num_antennas()) +
                                                aoa::snapshot_csv_row(aoa::snapshot_for_run(config, s, run_index)));
      }
      write_or_print(config.output_path, aoa::record_json(record));
    }
  } catch (const aoa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
