#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "eamp/errors.hpp"
#include "eamp/linalg.hpp"
#include "test_util.hpp"

using namespace eamp;
using testutil::random_matrix;
using testutil::random_spd;

namespace {

// brute-force cofactor expansion, test-only oracle
double cofactor_determinant(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  double sign = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    DenseMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += sign * m(0, j) * cofactor_determinant(minor);
    sign = -sign;
  }
  return det;
}

DenseMatrix permute_symmetric(const DenseMatrix& s, const std::vector<std::size_t>& perm) {
  const std::size_t n = s.rows();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = s(perm[i], perm[j]);
  return out;
}

}  // namespace

TEST_CASE("power iteration: identity and diagonal") {
  CHECK(power_iteration_sigma_max(DenseMatrix::identity(2)).value == doctest::Approx(1.0));
  DenseMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(power_iteration_sigma_max(d).value == doctest::Approx(3.0));
}

TEST_CASE("power iteration matches Jacobi eigenvalues of the Gram matrix") {
  const DenseMatrix a = random_matrix(5, 7, 42);
  const double sigma = power_iteration_sigma_max(a, 1e-14).value;
  const std::vector<double> eig = jacobi_symmetric_eigenvalues(gram(a));
  CHECK(sigma == doctest::Approx(std::sqrt(eig.back())).epsilon(1e-8));
}

TEST_CASE("power iteration survives a start vector orthogonal to the dominant eigenvector") {
  // eigenvectors (1,-1) with eigenvalue 3 and (1,1) with eigenvalue 1;
  // the all-ones start has no component along the dominant one
  DenseMatrix s(2, 2);
  s(0, 0) = 2.0;
  s(0, 1) = -1.0;
  s(1, 0) = -1.0;
  s(1, 1) = 2.0;
  const SigmaMaxResult r = power_iteration_sigma_max(s, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("power iteration rejects non-finite input") {
  DenseMatrix a(2, 2);
  a(0, 0) = std::nan("");
  CHECK_THROWS_AS(power_iteration_sigma_max(a), NonFinite);
}

TEST_CASE("power iteration vs Jacobi on random sizes up to 50x50") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t rows = 10 * seed;
    const std::size_t cols = 50 - 5 * seed;
    const DenseMatrix a = random_matrix(rows, cols, 100 + seed);
    const double sigma = power_iteration_sigma_max(a, 1e-13).value;
    const std::vector<double> eig = jacobi_symmetric_eigenvalues(gram(a));
    CHECK(std::abs(sigma - std::sqrt(eig.back())) <= 1e-6 * std::sqrt(eig.back()));
  }
}

TEST_CASE("jacobi: diagonal and 2x2 closed form") {
  DenseMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 5.0;
  const std::vector<double> e1 = jacobi_symmetric_eigenvalues(d);
  CHECK(e1[0] == doctest::Approx(2.0));
  CHECK(e1[1] == doctest::Approx(5.0));

  DenseMatrix f(2, 2);
  f(0, 1) = f(1, 0) = 1.0;
  const std::vector<double> e2 = jacobi_symmetric_eigenvalues(f);
  CHECK(e2[0] == doctest::Approx(-1.0));
  CHECK(e2[1] == doctest::Approx(1.0));
}

TEST_CASE("jacobi eigenvalue product equals the LU determinant") {
  const DenseMatrix b = random_matrix(6, 6, 7);
  const DenseMatrix s = gram(b);
  const std::vector<double> eig = jacobi_symmetric_eigenvalues(s);
  double prod = 1.0;
  for (double v : eig) prod *= v;
  const double det = lu_determinant(s);
  CHECK(prod == doctest::Approx(det).epsilon(1e-8));
}

TEST_CASE("jacobi eigenvalue sum equals the trace") {
  const DenseMatrix s = random_spd(8, 19);
  const std::vector<double> eig = jacobi_symmetric_eigenvalues(s);
  double sum = 0.0, trace = 0.0;
  for (double v : eig) sum += v;
  for (std::size_t i = 0; i < 8; ++i) trace += s(i, i);
  CHECK(std::abs(sum - trace) <= 1e-10 * std::abs(trace));
}

TEST_CASE("jacobi eigenvalues invariant under symmetric permutation") {
  const DenseMatrix s = random_spd(6, 23);
  const std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  const std::vector<double> e1 = jacobi_symmetric_eigenvalues(s);
  const std::vector<double> e2 = jacobi_symmetric_eigenvalues(permute_symmetric(s, perm));
  for (std::size_t i = 0; i < e1.size(); ++i) CHECK(std::abs(e1[i] - e2[i]) <= 1e-8);
}

TEST_CASE("jacobi rejects asymmetric input") {
  DenseMatrix s(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 2.0;
  CHECK_THROWS_AS(jacobi_symmetric_eigenvalues(s), NotSymmetric);
}

TEST_CASE("cholesky: identity and hand-checked 2x2") {
  const DenseMatrix l0 = cholesky_lower(DenseMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(l0(i, j) == (i == j ? 1.0 : 0.0));

  DenseMatrix s(2, 2);
  s(0, 0) = 4.0;
  s(0, 1) = s(1, 0) = 2.0;
  s(1, 1) = 5.0;
  const DenseMatrix l = cholesky_lower(s);
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("cholesky reconstruction on random SPD") {
  const DenseMatrix s = random_spd(5, 11);
  const DenseMatrix l = cholesky_lower(s);
  const DenseMatrix rec = matmul(l, transpose(l));
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      err += (rec(i, j) - s(i, j)) * (rec(i, j) - s(i, j));
      scale += s(i, j) * s(i, j);
    }
  CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(scale));
}

TEST_CASE("cholesky rejects indefinite input") {
  DenseMatrix s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = s(1, 0) = 2.0;
  s(1, 1) = 1.0;
  CHECK_THROWS_AS(cholesky_lower(s), NotPositiveDefinite);
}

TEST_CASE("lu determinant: identity, permutation, cofactor oracle") {
  CHECK(lu_determinant(DenseMatrix::identity(3)) == doctest::Approx(1.0));
  DenseMatrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  CHECK(lu_determinant(swap) == doctest::Approx(-1.0));

  const DenseMatrix m = random_matrix(4, 4, 31);
  const double oracle = cofactor_determinant(m);
  CHECK(lu_determinant(m) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("lu determinant of singular matrix is zero") {
  DenseMatrix m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    m(0, j) = static_cast<double>(j + 1);
    m(1, j) = 2.0 * static_cast<double>(j + 1);  // row 1 = 2 * row 0
    m(2, j) = static_cast<double>(j * j);
  }
  CHECK(lu_determinant(m) == 0.0);
}

TEST_CASE("determinant is multiplicative on random 6x6 pairs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DenseMatrix m1 = random_matrix(6, 6, 200 + 2 * seed);
    const DenseMatrix m2 = random_matrix(6, 6, 201 + 2 * seed);
    const double lhs = lu_determinant(matmul(m1, m2));
    const double rhs = lu_determinant(m1) * lu_determinant(m2);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(std::abs(rhs), 1e-12));
  }
}

TEST_CASE("gelfand estimate: diagonal and scaled rotation") {
  DenseMatrix d(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 0.2;
  CHECK(std::abs(gelfand_spectral_radius(d, 256) - 0.5) <= 1e-3);

  DenseMatrix rot(2, 2);  // 90-degree rotation scaled by 0.9: eigenvalues +-0.9i
  rot(0, 1) = -0.9;
  rot(1, 0) = 0.9;
  CHECK(std::abs(gelfand_spectral_radius(rot, 128) - 0.9) <= 1e-2);
}

TEST_CASE("gelfand estimate scales linearly in the matrix scale") {
  const DenseMatrix m = random_matrix(6, 6, 55, -0.4, 0.4);
  DenseMatrix m2 = m;
  for (double& v : m2.data()) v *= 2.0;  // exact in floating point
  const double r1 = gelfand_spectral_radius(m, 96);
  const double r2 = gelfand_spectral_radius(m2, 96);
  CHECK(std::abs(r2 - 2.0 * r1) <= 1e-10 * std::max(r2, 1.0));
}

TEST_CASE("gelfand estimate signals overflow as infinity") {
  DenseMatrix big(2, 2);
  big(0, 0) = big(1, 1) = 1e200;
  CHECK(std::isinf(gelfand_spectral_radius(big, 64)));
}
