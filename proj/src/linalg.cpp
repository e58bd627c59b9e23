#include "aoa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoa/errors.hpp"

namespace aoa {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(c, r) = std::conj(a(r, c));
  }
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cdouble bkc = b(k, c);
      for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) += a(r, k) * bkc;
    }
  }
  return out;
}

CVector operator*(const CMatrix& a, std::span<const cdouble> v) {
  CVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    for (std::size_t r = 0; r < a.rows(); ++r) out[r] += a(r, k) * v[k];
  }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c) - b(r, c);
  }
  return out;
}

double squared_norm(std::span<const cdouble> v) {
  double acc = 0.0;
  for (const cdouble& x : v) acc += std::norm(x);
  return acc;
}

double max_abs_entry(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) best = std::max(best, std::abs(a(r, c)));
  }
  return best;
}

double norm1(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) sum += std::abs(a(r, c));
    best = std::max(best, sum);
  }
  return best;
}

LuFactors lu_factor(CMatrix a) {
  const std::size_t n = a.rows();
  LuFactors f{std::move(a), std::vector<std::size_t>(n), false};
  CMatrix& lu = f.lu;
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double pivot_mag = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double mag = std::abs(lu(r, k));
      if (mag > pivot_mag) {
        pivot = r;
        pivot_mag = mag;
      }
    }
    if (pivot_mag == 0.0) {
      f.singular = true;
      return f;
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
      std::swap(f.perm[k], f.perm[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const cdouble factor = lu(r, k) / lu(k, k);
      lu(r, k) = factor;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= factor * lu(k, c);
    }
  }
  return f;
}

CVector lu_solve(const LuFactors& f, std::span<const cdouble> b) {
  const std::size_t n = f.lu.rows();
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
    x[i] /= f.lu(i, i);
  }
  return x;
}

CMatrix inverse(const CMatrix& a) {
  const LuFactors f = lu_factor(a);
  if (f.singular) throw SingularGram("matrix is singular");
  const std::size_t n = a.rows();
  CMatrix out(n, n);
  CVector unit(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(unit.begin(), unit.end(), cdouble{});
    unit[c] = 1.0;
    const CVector x = lu_solve(f, unit);
    std::copy(x.begin(), x.end(), out.col(c).begin());
  }
  return out;
}

double condition_estimate(const CMatrix& a) {
  const LuFactors f = lu_factor(a);
  if (f.singular) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.rows();
  double inv_norm = 0.0;
  CVector unit(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(unit.begin(), unit.end(), cdouble{});
    unit[c] = 1.0;
    const CVector x = lu_solve(f, unit);
    double sum = 0.0;
    for (const cdouble& v : x) sum += std::abs(v);
    inv_norm = std::max(inv_norm, sum);
  }
  return norm1(a) * inv_norm;
}

CVector solve_hermitian(const CMatrix& a, std::span<const cdouble> b) {
  const LuFactors f = lu_factor(a);
  if (f.singular) throw SingularGram("Hermitian system is singular");
  return lu_solve(f, b);
}

}  // namespace aoa
