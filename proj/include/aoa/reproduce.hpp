#pragma once

// Preset sweeps for the four published result tables, with a side-by-side
// comparison against the published numbers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoa/bench.hpp"

namespace aoa {

enum class TableId { t1, t2, t4, t5 };

TableId parse_table_id(std::string_view name);  // throws ConfigError
std::string_view to_string(TableId id);

struct ReproduceOptions {
  std::size_t runs = 0;  // 0: the preset's own run count
  std::uint64_t base_seed = 1;
  std::size_t jobs = 1;
};

struct ReferenceRow {
  std::string label;
  Method method = Method::brute;
  std::optional<InitMode> init;
  std::size_t num_antennas = 8;
  double noise_variance = 0.0;
  std::optional<double> grad_threshold;
  std::optional<double> accuracy_theta;
  std::optional<double> accuracy_r;
  std::optional<double> iterations;
};

// Published values for a table.
std::vector<ReferenceRow> reference_rows(TableId id);

// The sweeps that regenerate a table.
std::vector<ExperimentConfig> preset_configs(TableId id, const ReproduceOptions& options);

struct Reproduction {
  TableId id = TableId::t5;
  SweepResult result;  // cells of every preset sweep, in order
  std::vector<ReferenceRow> reference;
};

Reproduction reproduce(TableId id, const ReproduceOptions& options);

// label,reference_accuracy_theta,measured_accuracy_theta,reference_accuracy_r,
// measured_accuracy_r,reference_iterations,measured_iterations
std::string comparison_csv(const Reproduction& reproduction);

// Writes <dir>/<id>.csv, <dir>/<id>.json and <dir>/<id>_comparison.csv.
void write_reproduction(const Reproduction& reproduction, const std::string& directory);

}  // namespace aoa
