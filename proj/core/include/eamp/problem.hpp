#pragma once

#include <cstddef>
#include <vector>

#include "eamp/linalg.hpp"

namespace eamp {

/// LASSO instance: minimize 0.5*||y - A x||^2 + gamma*||x||_1.
struct LassoProblem {
  DenseMatrix A;  // n x N
  Vector y;       // length n
  double gamma;
  double c;  // n / N

  LassoProblem(DenseMatrix a, Vector y_in, double gamma_in);

  std::size_t n() const { return A.rows(); }
  std::size_t N() const { return A.cols(); }
};

struct KktReport {
  double residual = 0.0;
  std::vector<std::size_t> support;          // {i : x_i != 0}
  std::vector<std::size_t> equicorrelation;  // {i : |g_i| >= gamma - eps}
};

struct UniquenessReport {
  bool unique = false;
  double smallest_eigenvalue = 0.0;  // of C_E(A)^T C_E(A)
  bool vacuous = false;              // empty equicorrelation set (x = 0 optimal)
};

constexpr double kEquicorrelationTol = 1e-6;

Vector soft_threshold(const Vector& u, double theta);
double soft_threshold_scalar(double u, double theta);

double objective(const LassoProblem& p, const Vector& x);

KktReport kkt_residual(const LassoProblem& p, const Vector& x,
                       double equi_tol = kEquicorrelationTol);

/// True iff the equicorrelation submatrix C_E(A) has full column rank
/// (smallest eigenvalue of its Gram matrix above tol * largest).
UniquenessReport uniqueness_check(const LassoProblem& p, const Vector& x,
                                  double tol = 1e-10);

}  // namespace eamp
