#include <cmath>
#include <limits>

#include <doctest.h>

#include "eamp/datagen.hpp"
#include "eamp/errors.hpp"
#include "eamp/problem.hpp"
#include "eamp/solvers.hpp"
#include "test_util.hpp"

using namespace eamp;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

// 1-D grid search over the prox objective |x| + (x-u)^2/(2 theta), test-only
double grid_prox(double u, double theta, double lo, double hi, std::size_t steps) {
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    const double f = std::abs(x) + (x - u) * (x - u) / (2.0 * theta);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }
  return best_x;
}

LassoProblem small_instance(std::uint64_t seed, std::size_t n = 40, std::size_t N = 80) {
  InstanceSpec spec;
  spec.n = n;
  spec.N = N;
  spec.seed = seed;
  return make_instance(spec).problem;
}

}  // namespace

TEST_CASE("soft threshold shrinks coordinate-wise") {
  const Vector out = soft_threshold({2.0, -0.5, 0.0}, 1.0);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 0.0);
}

TEST_CASE("soft threshold maps |u| = theta to exactly zero") {
  const Vector out = soft_threshold({1.3, -1.3}, 1.3);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.0);
}

TEST_CASE("soft threshold rejects non-positive threshold") {
  CHECK_THROWS_AS(soft_threshold({1.0}, 0.0), InvalidThreshold);
  CHECK_THROWS_AS(soft_threshold({1.0}, -1.0), InvalidThreshold);
}

TEST_CASE("soft threshold agrees with the 1-D grid-search prox oracle") {
  const double grid_step = 1e-4;
  CHECK(std::abs(soft_threshold({3.7}, 1.2)[0] - 2.5) < 1e-12);
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const double u = rng.uniform(-4.0, 4.0);
    const double theta = rng.uniform(0.1, 2.0);
    const double oracle = grid_prox(u, theta, -5.0, 5.0, 100000);
    CHECK(std::abs(soft_threshold_scalar(u, theta) - oracle) <= 2.0 * grid_step);
  }
}

TEST_CASE("soft threshold is non-expansive") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector u = random_vector(20, 1000 + trial, -3.0, 3.0);
    const Vector v = random_vector(20, 2000 + trial, -3.0, 3.0);
    const double theta = rng.uniform(0.05, 2.0);
    const Vector su = soft_threshold(u, theta);
    const Vector sv = soft_threshold(v, theta);
    double dn = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dn += (su[i] - sv[i]) * (su[i] - sv[i]);
      dd += (u[i] - v[i]) * (u[i] - v[i]);
    }
    CHECK(dn <= dd * (1.0 + 1e-12));
  }
}

TEST_CASE("objective at zero and on a scalar instance") {
  const LassoProblem p = small_instance(5);
  CHECK(objective(p, Vector(p.N(), 0.0)) == doctest::Approx(0.5 * dot(p.y, p.y)));

  DenseMatrix a(1, 1);
  a(0, 0) = 1.0;
  const LassoProblem scalar(a, {2.0}, 1.0);
  CHECK(objective(scalar, {1.0}) == doctest::Approx(1.5));
}

TEST_CASE("objective rejects wrong dimension") {
  const LassoProblem p = small_instance(6);
  CHECK_THROWS_AS(objective(p, Vector(p.N() + 1, 0.0)), DimensionMismatch);
}

TEST_CASE("kkt residual: zero is optimal when gamma dominates") {
  const DenseMatrix a = random_matrix(5, 8, 77);
  Vector y = random_vector(5, 78);
  const double gmax = norm_inf(matvec_transposed(a, y));
  const LassoProblem p(a, y, gmax * 1.01);
  CHECK(kkt_residual(p, Vector(8, 0.0)).residual == 0.0);
}

TEST_CASE("kkt residual: scalar prox solution") {
  DenseMatrix a(1, 1);
  a(0, 0) = 1.0;
  const LassoProblem p(a, {2.0}, 1.0);
  CHECK(kkt_residual(p, {1.0}).residual == doctest::Approx(0.0));
}

TEST_CASE("kkt residual of the reference solution is tiny") {
  const LassoProblem p = small_instance(9);
  const ReferenceResult ref = reference_solve(p, 1e-9);
  CHECK(ref.converged);
  CHECK(kkt_residual(p, ref.x).residual <= 1e-8);
}

TEST_CASE("reference solution is a minimizer against random probes") {
  const LassoProblem p = small_instance(10);
  const ReferenceResult ref = reference_solve(p, 1e-9);
  const double f_star = objective(p, ref.x);
  for (int trial = 0; trial < 100; ++trial) {
    Vector probe = ref.x;
    const Vector delta = random_vector(p.N(), 5000 + trial, -1e-3, 1e-3);
    for (std::size_t i = 0; i < probe.size(); ++i) probe[i] += delta[i];
    CHECK(objective(p, probe) + 1e-6 >= f_star);
  }
}

TEST_CASE("support is contained in the equicorrelation set near optimality") {
  const LassoProblem p = small_instance(11);
  const ReferenceResult ref = reference_solve(p, 1e-10);
  const KktReport rep = kkt_residual(p, ref.x);
  REQUIRE(rep.residual <= kEquicorrelationTol / 2.0);
  for (std::size_t i : rep.support) {
    bool found = false;
    for (std::size_t j : rep.equicorrelation) found = found || (i == j);
    CHECK(found);
  }
}

TEST_CASE("uniqueness: orthonormal columns") {
  const DenseMatrix a = DenseMatrix::identity(6);
  const LassoProblem p(a, random_vector(6, 13, -2.0, 2.0), 0.3);
  const ReferenceResult ref = reference_solve(p, 1e-10);
  CHECK(uniqueness_check(p, ref.x).unique);
}

TEST_CASE("uniqueness: duplicated equicorrelation column fails") {
  DenseMatrix a(2, 2);
  a(0, 0) = a(0, 1) = 1.0;
  a(1, 0) = a(1, 1) = 0.5;
  const LassoProblem p(a, {2.0, 1.0}, 0.4);
  const ReferenceResult ref = reference_solve(p, 1e-10);
  const UniquenessReport rep = uniqueness_check(p, ref.x);
  CHECK_FALSE(rep.unique);
}

TEST_CASE("uniqueness: continuous-distribution instance is unique") {
  const LassoProblem p = small_instance(14);
  const ReferenceResult ref = reference_solve(p, 1e-10);
  const UniquenessReport rep = uniqueness_check(p, ref.x);
  CHECK(rep.unique);
}

TEST_CASE("uniqueness: empty equicorrelation set is vacuously unique") {
  const DenseMatrix a = random_matrix(4, 6, 88);
  Vector y = random_vector(4, 89);
  const double gmax = norm_inf(matvec_transposed(a, y));
  const LassoProblem p(a, y, gmax * 2.0);
  const UniquenessReport rep = uniqueness_check(p, Vector(6, 0.0));
  CHECK(rep.unique);
  CHECK(rep.vacuous);
}
