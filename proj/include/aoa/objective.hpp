#pragma once

// Nonlinear least-squares objective for angle estimation. For candidate
// angles theta with steering matrix D:
//   P(theta) = D (D^H D)^-1 D^H
//   f(theta) = z^H P z        (energy explained)
//   J(theta) = z^H (I - P) z  (residual, the quantity every estimator minimizes)

#include <cstdint>
#include <span>
#include <vector>

#include "aoa/linalg.hpp"
#include "aoa/signal_model.hpp"

namespace aoa {

inline constexpr double kGramConditionLimit = 1e12;

struct ObjectiveEval {
  std::vector<double> theta;
  double value = 0.0;     // f
  double ls_error = 0.0;  // J
};

// Throws DuplicateAngles or SingularGram.
CMatrix projection_matrix(std::span<const double> theta, const ArrayGeometry& array);

// Objective bound to one snapshot. Each instance owns its evaluation counter;
// one instance per estimator run.
class LeastSquaresObjective {
 public:
  LeastSquaresObjective(ArrayGeometry array, CVector z);

  // Counts one evaluation, including evaluations that end in SingularGram.
  ObjectiveEval evaluate(std::span<const double> theta);
  double residual(std::span<const double> theta) { return evaluate(theta).ls_error; }

  // r = (D^H D)^-1 D^H z. Not counted.
  CVector recover_amplitudes(std::span<const double> theta) const;

  std::uint64_t evaluations() const { return evaluations_; }
  void reset_evaluations() { evaluations_ = 0; }

  const ArrayGeometry& array() const { return array_; }
  const CVector& snapshot() const { return z_; }
  double energy() const { return energy_; }

 private:
  struct Solution {
    CVector amplitudes;
    CVector projections;  // D^H z
    std::vector<double> d_re;
    std::vector<double> d_im;
  };
  Solution solve(std::span<const double> theta) const;

  ArrayGeometry array_;
  CVector z_;
  std::vector<double> z_re_;
  std::vector<double> z_im_;
  double energy_ = 0.0;
  std::uint64_t evaluations_ = 0;
};

}  // namespace aoa
