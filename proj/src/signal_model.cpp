#include "aoa/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "aoa/errors.hpp"
#include "aoa/key_value.hpp"

namespace aoa {
namespace {

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

ArrayGeometry ArrayGeometry::half_wavelength_ula(std::size_t num_antennas, double wavelength) {
  ArrayGeometry g;
  g.wavelength = wavelength;
  g.positions.resize(num_antennas);
  for (std::size_t n = 0; n < num_antennas; ++n) g.positions[n] = static_cast<double>(n) * wavelength / 2.0;
  return g;
}

Scenario Scenario::make(std::size_t num_antennas, std::vector<double> angles, double noise_variance) {
  Scenario s;
  s.array = ArrayGeometry::half_wavelength_ula(num_antennas);
  s.amplitudes.assign(angles.size(), cdouble{1.0, 0.0});
  s.angles = std::move(angles);
  s.noise_variance = noise_variance;
  return s;
}

void Scenario::validate() const {
  const std::size_t n = num_antennas();
  const std::size_t m = num_sources();
  if (n == 0) throw InvalidScenario("scenario needs at least one antenna");
  if (m == 0) throw InvalidScenario("scenario needs at least one source");
  if (m > n) {
    throw InvalidScenario("num_sources (" + std::to_string(m) + ") exceeds num_antennas (" +
                          std::to_string(n) + ")");
  }
  if (amplitudes.size() != m) throw InvalidScenario("amplitudes must have one entry per source");
  if (!(array.wavelength > 0.0)) throw InvalidScenario("wavelength must be positive");
  if (!(noise_variance >= 0.0)) throw InvalidScenario("noise_variance must be non-negative");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(array.positions[i] > array.positions[i - 1])) {
      throw InvalidScenario("antenna_positions must be strictly increasing");
    }
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (double a : angles) {
    if (!(a > -half_pi && a < half_pi)) throw InvalidScenario("angle outside (-pi/2, pi/2)");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (angles[i] == angles[j]) throw DuplicateAngles("two sources share the angle " + format_double(angles[i]));
    }
  }
}

CVector steering_vector(double theta, const ArrayGeometry& array) {
  const double k = 2.0 * std::numbers::pi / array.wavelength * std::sin(theta);
  CVector out(array.size());
  for (std::size_t n = 0; n < array.size(); ++n) out[n] = std::polar(1.0, k * array.positions[n]);
  return out;
}

CMatrix steering_matrix(std::span<const double> theta, const ArrayGeometry& array) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (std::size_t j = i + 1; j < theta.size(); ++j) {
      if (theta[i] == theta[j]) throw DuplicateAngles("steering matrix would repeat the angle " + format_double(theta[i]));
    }
  }
  CMatrix d(array.size(), theta.size());
  for (std::size_t m = 0; m < theta.size(); ++m) {
    const CVector column = steering_vector(theta[m], array);
    std::copy(column.begin(), column.end(), d.col(m).begin());
  }
  return d;
}

Snapshot generate_snapshot(const Scenario& scenario, std::uint64_t seed, std::string scenario_id) {
  const CMatrix d = steering_matrix(scenario.angles, scenario.array);
  Snapshot snap;
  snap.z = d * std::span<const cdouble>(scenario.amplitudes);
  snap.seed = seed;
  snap.scenario_id = std::move(scenario_id);
  if (scenario.noise_variance > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(scenario.noise_variance / 2.0));
    for (cdouble& v : snap.z) {
      const double re = noise(rng);
      const double im = noise(rng);
      v += cdouble{re, im};
    }
  }
  return snap;
}

std::string scenario_to_config(const Scenario& s) {
  std::ostringstream out;
  out << "num_antennas = " << s.num_antennas() << '\n';
  out << "num_sources = " << s.num_sources() << '\n';
  out << "angles =";
  for (double a : s.angles) out << ' ' << format_double(a);
  out << "\namplitudes =";
  for (const cdouble& r : s.amplitudes) out << ' ' << format_double(r.real()) << ',' << format_double(r.imag());
  out << "\nnoise_variance = " << format_double(s.noise_variance) << '\n';
  out << "wavelength = " << format_double(s.array.wavelength) << '\n';
  out << "antenna_positions =";
  for (double p : s.array.positions) out << ' ' << format_double(p);
  out << '\n';
  return out.str();
}

Scenario scenario_from_config(std::string_view text) {
  long long num_antennas = -1;
  long long num_sources = -1;
  std::vector<double> angles;
  CVector amplitudes;
  std::vector<double> positions;
  double noise_variance = 0.0;
  double wavelength = 2.0;
  bool have_amplitudes = false;
  bool have_positions = false;

  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "num_antennas") {
      num_antennas = parse_integer(key, value);
    } else if (key == "num_sources") {
      num_sources = parse_integer(key, value);
    } else if (key == "angles") {
      for (const auto& tok : split_list(value)) angles.push_back(parse_double(key, tok));
    } else if (key == "amplitudes") {
      have_amplitudes = true;
      for (const auto& tok : split_list(value, " \t")) {
        const auto parts = split_list(tok, ",");
        if (parts.size() != 2) throw ConfigError("amplitudes: expected re,im pairs, got '" + tok + "'");
        amplitudes.emplace_back(parse_double(key, parts[0]), parse_double(key, parts[1]));
      }
    } else if (key == "noise_variance") {
      noise_variance = parse_double(key, value);
    } else if (key == "wavelength") {
      wavelength = parse_double(key, value);
    } else if (key == "antenna_positions") {
      have_positions = true;
      for (const auto& tok : split_list(value)) positions.push_back(parse_double(key, tok));
    } else {
      throw ConfigError("unknown scenario key '" + key + "'");
    }
  }

  if (num_antennas < 0 && have_positions) num_antennas = static_cast<long long>(positions.size());
  if (num_antennas <= 0) throw ConfigError("num_antennas must be a positive integer");
  if (num_sources >= 0 && static_cast<std::size_t>(num_sources) != angles.size()) {
    throw ConfigError("num_sources does not match the number of angles");
  }

  Scenario s = Scenario::make(static_cast<std::size_t>(num_antennas), std::move(angles), noise_variance);
  s.array = ArrayGeometry::half_wavelength_ula(s.array.size(), wavelength);
  if (have_positions) {
    if (positions.size() != s.array.size()) throw ConfigError("antenna_positions does not match num_antennas");
    s.array.positions = std::move(positions);
  }
  if (have_amplitudes) s.amplitudes = std::move(amplitudes);
  s.validate();
  return s;
}

std::string snapshot_csv_header(std::size_t num_antennas) {
  std::string out = "scenario_id,seed";
  for (std::size_t n = 0; n < num_antennas; ++n) {
    out += ",re" + std::to_string(n) + ",im" + std::to_string(n);
  }
  return out + '\n';
}

std::string snapshot_csv_row(const Snapshot& snap) {
  std::ostringstream out;
  out << snap.scenario_id << ',' << snap.seed;
  for (const cdouble& v : snap.z) out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
  out << '\n';
  return out.str();
}

}  // namespace aoa
