#pragma once

#include <cstddef>
#include <vector>

namespace eamp {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Basic arithmetic.
Vector matvec(const DenseMatrix& a, const Vector& x);            // A x
Vector matvec_transposed(const DenseMatrix& a, const Vector& x); // A^T x
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix gram(const DenseMatrix& a);                          // A^T A
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
bool all_finite(const Vector& a);

struct SigmaMaxResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value of A by power iteration on A^T A.
/// Deterministic: starts from the all-ones vector and, once the estimate
/// first settles, injects a fixed perturbation (coordinate 0 += 1) to escape
/// a start vector orthogonal to the dominant eigenvector.
SigmaMaxResult power_iteration_sigma_max(const DenseMatrix& a, double tol = 1e-12,
                                         std::size_t max_iter = 100000);

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi sweeps.
/// Thresholds (symmetry check and off-diagonal convergence) scale with
/// tol * max|S|.
std::vector<double> jacobi_symmetric_eigenvalues(const DenseMatrix& s, double tol = 1e-12);

/// Lower-triangular L with L L^T = S. Throws NotPositiveDefinite on pivot <= 0.
DenseMatrix cholesky_lower(const DenseMatrix& s);

/// Determinant via partially pivoted LU. Singular input returns 0.
double lu_determinant(const DenseMatrix& m);

/// Gelfand estimate (||M^k v||/||v||)^(1/k) of the spectral radius with a
/// fixed all-ones start vector; renormalizes every 8 products. Returns +inf
/// on overflow.
double gelfand_spectral_radius(const DenseMatrix& m, std::size_t powers);

}  // namespace eamp
