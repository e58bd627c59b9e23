#pragma once

// EM and SAGE maximum-likelihood baselines. Both alternate a per-source
// E-step z_m = d(theta_m) r_m + (z - D r) with a grid-restricted M-step
//   theta_m = argmax_theta |d(theta)^H z_m|^2,  r_m = d(theta_m)^H z_m / N.
// EM updates every source from the same parameter snapshot; SAGE refreshes
// the residual after each source.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "aoa/grid_search.hpp"
#include "aoa/linalg.hpp"
#include "aoa/signal_model.hpp"

namespace aoa {

struct MleParams {
  std::vector<double> theta;
  CVector r;
  std::size_t iteration = 0;
};

struct MleOptions {
  double tolerance = 1e-6;
  std::size_t max_iterations = 1000;
};

struct MleReport {
  MleParams params;
  std::size_t iterations = 0;
  bool converged = false;
  // ||z - D r|| for the initial parameters and after every iteration.
  std::vector<double> residual_norms;
  // Filled by score_mle_report, ordered by ascending true angle.
  std::vector<bool> acc_theta;
  std::vector<bool> acc_r;
};

// Steering vectors for every grid point, laid out for the beam-power kernel.
class GridBeamScanner {
 public:
  GridBeamScanner(const AngleGrid& grid, const ArrayGeometry& array);

  // First grid index maximizing |d(theta_j)^H z|^2.
  std::size_t best_index(std::span<const cdouble> z) const;
  std::vector<double> powers(std::span<const cdouble> z) const;

 private:
  std::size_t rows_;
  std::size_t antennas_;
  std::vector<double> re_;
  std::vector<double> im_;
};

MleReport em_estimate(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& init,
                      const AngleGrid& grid, const MleOptions& options = {});

MleReport sage_estimate(std::span<const cdouble> z, const ArrayGeometry& array, const MleParams& init,
                        const AngleGrid& grid, const MleOptions& options = {});

// True angles shifted one grid step up (or all one step down when the top
// angle is already the last grid point); r = 1.
MleParams good_initialization(std::span<const double> truth, const AngleGrid& grid);

// Distinct grid angles drawn uniformly without replacement; r = 1.
MleParams random_initialization(std::size_t num_sources, const AngleGrid& grid, std::mt19937_64& rng);

inline constexpr double kAmplitudeTolerance = 0.05;

// Pairs estimates with sources by ascending angle and fills acc_theta/acc_r.
void score_mle_report(MleReport& report, std::span<const double> truth_theta,
                      std::span<const cdouble> truth_r, double r_tolerance = kAmplitudeTolerance);

}  // namespace aoa
