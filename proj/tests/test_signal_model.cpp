#include <cmath>
#include <numbers>

#include "aoa/errors.hpp"
#include "aoa/signal_model.hpp"
#include "doctest.h"

using namespace aoa;

TEST_CASE("steering vector at broadside is all ones") {
  for (std::size_t n : {1u, 4u, 8u}) {
    const CVector d = steering_vector(0.0, ArrayGeometry::half_wavelength_ula(n));
    for (const cdouble& v : d) CHECK(std::abs(v - cdouble(1.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("steering vector at endfire alternates sign") {
  const ArrayGeometry g{2.0, {0.0, 1.0}};
  const CVector d = steering_vector(std::numbers::pi / 2, g);
  CHECK(std::abs(d[0] - cdouble(1, 0)) < 1e-15);
  CHECK(std::abs(d[1] - cdouble(-1, 0)) < 1e-15);
}

TEST_CASE("steering vector matches the phase formula") {
  const ArrayGeometry g{2.0, {0.0, 1.0, 2.0, 3.0}};
  const CVector d = steering_vector(0.5, g);
  for (int n = 0; n < 4; ++n) {
    const cdouble want = std::polar(1.0, std::numbers::pi * n * std::sin(0.5));
    CHECK(std::abs(d[static_cast<std::size_t>(n)] - want) < 1e-14);
  }
}

TEST_CASE("steering vectors have unit modulus and conjugate symmetry") {
  const ArrayGeometry g = ArrayGeometry::half_wavelength_ula(8);
  for (double t = -1.5; t <= 1.5; t += 0.137) {
    const CVector a = steering_vector(t, g);
    const CVector b = steering_vector(-t, g);
    for (std::size_t n = 0; n < a.size(); ++n) {
      CHECK(std::abs(std::abs(a[n]) - 1.0) < 1e-12);
      CHECK(std::abs(b[n] - std::conj(a[n])) < 1e-12);
    }
  }
}

TEST_CASE("steering matrix columns are steering vectors") {
  const ArrayGeometry g = ArrayGeometry::half_wavelength_ula(4);
  const std::vector<double> theta{-0.3, 0.7};
  const CMatrix D = steering_matrix(theta, g);
  REQUIRE(D.rows() == 4);
  REQUIRE(D.cols() == 2);
  for (std::size_t m = 0; m < 2; ++m) {
    const CVector d = steering_vector(theta[m], g);
    for (std::size_t n = 0; n < 4; ++n) CHECK(D(n, m) == d[n]);
  }
  const std::vector<double> one{0.4};
  const CMatrix D1 = steering_matrix(one, g);
  CHECK(D1.cols() == 1);
  CHECK_THROWS_AS(steering_matrix(std::vector<double>{0.0, 0.0}, g), DuplicateAngles);
}

TEST_CASE("scenario validation") {
  CHECK_NOTHROW(Scenario::make(4, {0.1, 0.2}, 0.0).validate());
  CHECK_THROWS_AS(Scenario::make(2, {0.1, 0.2, 0.3}, 0.0).validate(), InvalidScenario);
  CHECK_THROWS_AS(Scenario::make(4, {0.1, 0.1}, 0.0).validate(), DuplicateAngles);
  CHECK_THROWS_AS(Scenario::make(4, {1.6}, 0.0).validate(), InvalidScenario);
  CHECK_THROWS_AS(Scenario::make(4, {0.1}, -1.0).validate(), InvalidScenario);
  Scenario s = Scenario::make(3, {0.1}, 0.0);
  s.array.positions = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(s.validate(), InvalidScenario);
}

TEST_CASE("zero-noise snapshot equals D r") {
  Scenario s = Scenario::make(6, {-0.4, 0.3, 1.1}, 0.0);
  s.amplitudes = {{1.0, 0.5}, {-0.2, 1.0}, {0.7, -0.7}};
  const Snapshot snap = generate_snapshot(s, 5);
  const CVector want = steering_matrix(s.angles, s.array) * std::span<const cdouble>(s.amplitudes);
  for (std::size_t n = 0; n < want.size(); ++n) CHECK(std::abs(snap.z[n] - want[n]) < 1e-14);
}

TEST_CASE("snapshots are deterministic in the seed") {
  const Scenario s = Scenario::make(8, {-0.4, 0.3, 1.1}, 1e-2);
  const Snapshot a = generate_snapshot(s, 42);
  const Snapshot b = generate_snapshot(s, 42);
  const Snapshot c = generate_snapshot(s, 43);
  CHECK(a.z == b.z);
  CHECK(a.z != c.z);
}

TEST_CASE("noise variance is split across real and imaginary parts") {
  const Scenario s = Scenario::make(8, {-0.4, 0.3, 1.1}, 1e-2);
  const CVector clean = generate_snapshot(Scenario::make(8, {-0.4, 0.3, 1.1}, 0.0), 0).z;
  double sum_re = 0.0, sum_im = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const CVector z = generate_snapshot(s, static_cast<std::uint64_t>(k)).z;
    for (std::size_t n = 0; n < z.size(); ++n) {
      const cdouble nu = z[n] - clean[n];
      sum_re += nu.real() * nu.real();
      sum_im += nu.imag() * nu.imag();
    }
  }
  const double count = draws * 8.0;
  // sigma^2 per complex entry, sigma^2 / 2 per part.
  CHECK((sum_re + sum_im) / count == doctest::Approx(1e-2).epsilon(0.05));
  CHECK(sum_re / count == doctest::Approx(5e-3).epsilon(0.05));
  CHECK(sum_im / count == doctest::Approx(5e-3).epsilon(0.05));
}

TEST_CASE("scenario config round trip") {
  Scenario s = Scenario::make(5, {-1.07, 0.23}, 1e-4);
  s.amplitudes = {{1.0, -0.25}, {0.5, 2.0}};
  const Scenario back = scenario_from_config(scenario_to_config(s));
  CHECK(back.angles == s.angles);
  CHECK(back.amplitudes == s.amplitudes);
  CHECK(back.noise_variance == s.noise_variance);
  CHECK(back.array.positions == s.array.positions);
  CHECK(back.array.wavelength == s.array.wavelength);
  CHECK_THROWS_AS(scenario_from_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(scenario_from_config("num_antennas = 4\nnum_sources = 2\nangles = 0.1\n"), Error);
}

TEST_CASE("snapshot CSV rows") {
  const Scenario s = Scenario::make(2, {0.3}, 1e-3);
  const Snapshot snap = generate_snapshot(s, 9, "demo");
  CHECK(snapshot_csv_header(2) == "scenario_id,seed,re0,im0,re1,im1\n");
  const std::string row = snapshot_csv_row(snap);
  CHECK(row.rfind("demo,9,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 5);
  CHECK(std::stod(row.substr(7)) == snap.z[0].real());
}
