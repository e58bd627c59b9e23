#pragma once

// Small dense complex linear algebra. Sizes here are N <= a few dozen and
// M <= N, so everything is direct and allocation-light.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace aoa {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Column-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<cdouble> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const cdouble> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

CMatrix adjoint(const CMatrix& a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, std::span<const cdouble> v);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

double squared_norm(std::span<const cdouble> v);
double max_abs_entry(const CMatrix& a);
// Maximum absolute column sum.
double norm1(const CMatrix& a);

// LU with partial (row) pivoting, PA = LU stored in place.
struct LuFactors {
  CMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LuFactors lu_factor(CMatrix a);
CVector lu_solve(const LuFactors& factors, std::span<const cdouble> b);

// Throws SingularGram on an exactly singular matrix.
CMatrix inverse(const CMatrix& a);

// ||A||_1 * ||A^-1||_1; +inf for a singular matrix.
double condition_estimate(const CMatrix& a);

// Solves A x = b for Hermitian A by pivoted elimination. Throws SingularGram
// when A is singular.
CVector solve_hermitian(const CMatrix& a, std::span<const cdouble> b);

}  // namespace aoa
