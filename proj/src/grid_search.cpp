#include "aoa/grid_search.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "aoa/errors.hpp"

namespace aoa {

std::vector<double> AngleGrid::points() const {
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = point(j);
  return out;
}

std::size_t AngleGrid::nearest_index(double theta) const {
  const double pos = std::round((theta - lower) / resolution);
  if (pos <= 0.0) return 0;
  if (pos >= static_cast<double>(count - 1)) return count - 1;
  return static_cast<std::size_t>(pos);
}

std::optional<std::size_t> AngleGrid::index_of(double theta) const {
  const std::size_t j = nearest_index(theta);
  if (std::abs(point(j) - theta) <= 1e-9) return j;
  return std::nullopt;
}

std::vector<double> AngleGrid::angles(std::span<const std::size_t> indices) const {
  std::vector<double> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) out[i] = point(indices[i]);
  return out;
}

void AngleGrid::validate() const {
  if (count == 0) throw ConfigError("grid count must be positive");
  if (!(resolution > 0.0)) throw ConfigError("grid resolution must be positive");
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(lower > -half_pi) || !(upper() < half_pi)) {
    throw ConfigError("grid must lie inside (-pi/2, pi/2)");
  }
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

CombinationCursor::CombinationCursor(std::size_t n, std::size_t k)
    : n_(n), indices_(k), done_(k > n) {
  for (std::size_t i = 0; i < k; ++i) indices_[i] = i;
}

void CombinationCursor::advance() {
  const std::size_t k = indices_.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (indices_[i] < n_ - k + i) {
      ++indices_[i];
      for (std::size_t j = i + 1; j < k; ++j) indices_[j] = indices_[j - 1] + 1;
      return;
    }
  }
  done_ = true;
}

std::vector<std::vector<double>> enumerate_combinations(const AngleGrid& grid, std::size_t num_sources) {
  std::vector<std::vector<double>> out;
  out.reserve(binomial(grid.count, num_sources));
  for (CombinationCursor c(grid.count, num_sources); !c.done(); c.advance()) {
    out.push_back(grid.angles(c.indices()));
  }
  return out;
}

BruteForceResult brute_force_estimate(LeastSquaresObjective& objective, const AngleGrid& grid,
                                      std::size_t num_sources) {
  if (num_sources > objective.array().size()) {
    throw ConfigError("num_sources exceeds the number of antennas");
  }
  BruteForceResult result;
  result.ls_error = std::numeric_limits<double>::infinity();
  std::vector<double> theta(num_sources);
  for (CombinationCursor c(grid.count, num_sources); !c.done(); c.advance()) {
    const auto idx = c.indices();
    for (std::size_t i = 0; i < num_sources; ++i) theta[i] = grid.point(idx[i]);
    ++result.evaluations;
    try {
      const double j = objective.residual(theta);
      if (j < result.ls_error) {
        result.ls_error = j;
        result.theta = theta;
      }
    } catch (const SingularGram&) {
      ++result.singular_skipped;
    }
  }
  return result;
}

}  // namespace aoa
