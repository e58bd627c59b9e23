#include <random>

#include "aoa/errors.hpp"
#include "aoa/linalg.hpp"
#include "doctest.h"

using namespace aoa;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix a(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) a(i, j) = {n(rng), n(rng)};
  return a;
}

}  // namespace

TEST_CASE("matrix products and adjoint") {
  CMatrix a(2, 2);
  a(0, 0) = {1, 1};
  a(0, 1) = {0, 2};
  a(1, 0) = {3, 0};
  a(1, 1) = {1, -1};
  const CMatrix h = adjoint(a);
  CHECK(h(0, 1) == std::conj(a(1, 0)));
  CHECK(h(1, 0) == std::conj(a(0, 1)));
  const CMatrix p = a * CMatrix::identity(2);
  CHECK(max_abs_entry(p - a) == 0.0);
  const CVector v = a * std::vector<cdouble>{{1, 0}, {0, 1}};
  CHECK(v[0] == cdouble(1, 1) + cdouble(0, 2) * cdouble(0, 1));
  CHECK(norm1(a) == doctest::Approx(std::abs(cdouble(1, 1)) + 3.0));
  CHECK(squared_norm(std::vector<cdouble>{{3, 4}}) == 25.0);
}

TEST_CASE("hermitian solve reproduces the right-hand side") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 5);
    const CMatrix b = random_matrix(m + 3, m, rng);
    CMatrix g = adjoint(b) * b;  // Hermitian positive definite
    std::normal_distribution<double> n;
    CVector rhs(m);
    for (auto& x : rhs) x = {n(rng), n(rng)};
    const CVector x = solve_hermitian(g, rhs);
    const CVector back = g * std::span<const cdouble>(x);
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(back[i] - rhs[i]) < 1e-10);
  }
}

TEST_CASE("inverse and condition estimate") {
  std::mt19937_64 rng(4);
  const CMatrix a = random_matrix(4, 4, rng);
  const CMatrix inv = inverse(a);
  CHECK(max_abs_entry(a * inv - CMatrix::identity(4)) < 1e-12);
  CHECK(condition_estimate(CMatrix::identity(3)) == doctest::Approx(1.0));
  CMatrix s(2, 2);
  s(0, 0) = s(0, 1) = s(1, 0) = s(1, 1) = {1, 0};
  CHECK(std::isinf(condition_estimate(s)));
  CHECK_THROWS_AS(inverse(s), SingularGram);
  CHECK_THROWS_AS(solve_hermitian(s, std::vector<cdouble>{{1, 0}, {1, 0}}), SingularGram);
}

TEST_CASE("LU with pivoting handles a zero leading entry") {
  CMatrix a(2, 2);
  a(0, 0) = {0, 0};
  a(0, 1) = {1, 0};
  a(1, 0) = {2, 0};
  a(1, 1) = {0, 0};
  const LuFactors f = lu_factor(a);
  CHECK_FALSE(f.singular);
  const CVector x = lu_solve(f, std::vector<cdouble>{{3, 0}, {4, 0}});
  CHECK(std::abs(x[0] - cdouble(2, 0)) < 1e-15);
  CHECK(std::abs(x[1] - cdouble(3, 0)) < 1e-15);
}
