#pragma once

// Far-field narrowband sources impinging on a linear array:
//   z = D(theta) r + noise,  D[n][m] = exp(i 2pi/lambda d_n sin(theta_m)).

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoa/linalg.hpp"

namespace aoa {

struct ArrayGeometry {
  double wavelength = 2.0;
  std::vector<double> positions;

  // d_n = (n - 1) * wavelength / 2.
  static ArrayGeometry half_wavelength_ula(std::size_t num_antennas, double wavelength = 2.0);

  std::size_t size() const { return positions.size(); }
};

struct Scenario {
  ArrayGeometry array;
  std::vector<double> angles;  // radians, in (-pi/2, pi/2)
  CVector amplitudes;
  double noise_variance = 0.0;

  // Half-wavelength ULA with unit amplitudes.
  static Scenario make(std::size_t num_antennas, std::vector<double> angles, double noise_variance);

  std::size_t num_antennas() const { return array.size(); }
  std::size_t num_sources() const { return angles.size(); }

  // Throws InvalidScenario or DuplicateAngles.
  void validate() const;
};

struct Snapshot {
  CVector z;
  std::uint64_t seed = 0;
  std::string scenario_id;
};

CVector steering_vector(double theta, const ArrayGeometry& array);

// Column m is steering_vector(theta[m]). Throws DuplicateAngles when two
// angles coincide.
CMatrix steering_matrix(std::span<const double> theta, const ArrayGeometry& array);

// Noise is circularly-symmetric complex Gaussian: variance sigma^2 / 2 on
// each of the real and imaginary parts. Deterministic in (scenario, seed).
Snapshot generate_snapshot(const Scenario& scenario, std::uint64_t seed,
                           std::string scenario_id = {});

// Plain "key = value" text. Amplitudes and positions are whitespace
// separated lists; amplitudes are written as re,im pairs.
std::string scenario_to_config(const Scenario& scenario);
Scenario scenario_from_config(std::string_view text);

std::string snapshot_csv_header(std::size_t num_antennas);
std::string snapshot_csv_row(const Snapshot& snapshot);

}  // namespace aoa
