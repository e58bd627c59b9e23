#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aoa/objective.hpp"

namespace aoa {

// Discrete search domain: point j = lower + j * resolution, j < count.
struct AngleGrid {
  double lower = -1.57;
  double resolution = 0.1;
  std::size_t count = 32;

  double point(std::size_t j) const { return lower + static_cast<double>(j) * resolution; }
  double upper() const { return point(count - 1); }
  std::vector<double> points() const;

  std::size_t nearest_index(double theta) const;
  // Index of theta when it sits on the grid (within 1e-9), otherwise nullopt.
  std::optional<std::size_t> index_of(double theta) const;

  std::vector<double> angles(std::span<const std::size_t> indices) const;

  // Throws ConfigError.
  void validate() const;
};

std::uint64_t binomial(std::size_t n, std::size_t k);

// Strictly increasing index tuples of size k drawn from [0, n), in
// lexicographic order.
class CombinationCursor {
 public:
  CombinationCursor(std::size_t n, std::size_t k);

  bool done() const { return done_; }
  std::span<const std::size_t> indices() const { return indices_; }
  void advance();

 private:
  std::size_t n_;
  std::vector<std::size_t> indices_;
  bool done_;
};

std::vector<std::vector<double>> enumerate_combinations(const AngleGrid& grid, std::size_t num_sources);

struct BruteForceResult {
  std::vector<double> theta;
  double ls_error = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t singular_skipped = 0;
};

// Exhaustive argmin of J over all C(count, M) grid tuples. Ties keep the
// first tuple in lexicographic order; tuples whose Gram matrix is singular
// are counted and excluded.
BruteForceResult brute_force_estimate(LeastSquaresObjective& objective, const AngleGrid& grid,
                                      std::size_t num_sources);

}  // namespace aoa
