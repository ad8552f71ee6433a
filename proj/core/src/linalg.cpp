#include "eamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eamp/errors.hpp"

namespace eamp {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw DimensionMismatch("matvec: size mismatch");
  Vector out(a.rows(), 0.0);
  const double* row = a.data().data();
  for (std::size_t i = 0; i < a.rows(); ++i, row += a.cols()) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

Vector matvec_transposed(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.rows()) throw DimensionMismatch("matvec_transposed: size mismatch");
  Vector out(a.cols(), 0.0);
  const double* row = a.data().data();
  for (std::size_t i = 0; i < a.rows(); ++i, row += a.cols()) {
    const double xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += row[j] * xi;
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: size mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

DenseMatrix gram(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = a.data().data() + i * a.cols();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double rj = row[j];
      if (rj == 0.0) continue;
      for (std::size_t k = j; k < a.cols(); ++k) out(j, k) += rj * row[k];
    }
  }
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t k = 0; k < j; ++k) out(j, k) = out(k, j);
  return out;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

SigmaMaxResult power_iteration_sigma_max(const DenseMatrix& a, double tol,
                                         std::size_t max_iter) {
  if (!a.all_finite()) throw NonFinite("power_iteration_sigma_max: non-finite entries");
  if (tol <= 0.0) throw std::invalid_argument("power_iteration_sigma_max: tol must be > 0");

  Vector v(a.cols(), 1.0);
  const double nv0 = norm2(v);
  if (nv0 == 0.0) throw std::invalid_argument("power_iteration_sigma_max: empty matrix");
  for (double& x : v) x /= nv0;

  SigmaMaxResult res;
  double lambda = 0.0;
  bool perturbed = false;
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector w = matvec_transposed(a, matvec(a, v));  // A^T A v
    const double nw = norm2(w);
    if (nw == 0.0) {
      // v in the null space; restart from the fixed perturbed vector.
      if (!perturbed) {
        v.assign(a.cols(), 1.0);
        v[0] += 1.0;
        const double nv = norm2(v);
        for (double& x : v) x /= nv;
        perturbed = true;
        continue;
      }
      res.value = 0.0;
      res.iterations = it;
      res.converged = true;
      return res;
    }
    const double lambda_new = nw;  // Rayleigh-style estimate of lambda_max(A^T A)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = w[j] / nw;
    const bool settled = std::abs(lambda_new - lambda) <= tol * std::max(lambda_new, 1e-300);
    lambda = lambda_new;
    res.iterations = it + 1;
    if (settled) {
      if (!perturbed) {
        // Escape a start vector orthogonal to the dominant eigenvector.
        v[0] += 1.0;
        const double nv = norm2(v);
        for (double& x : v) x /= nv;
        perturbed = true;
        continue;
      }
      res.value = std::sqrt(lambda);
      res.converged = true;
      return res;
    }
  }
  res.value = std::sqrt(lambda);
  res.converged = false;
  return res;
}

std::vector<double> jacobi_symmetric_eigenvalues(const DenseMatrix& s, double tol) {
  if (s.rows() != s.cols()) throw DimensionMismatch("jacobi: matrix not square");
  const std::size_t n = s.rows();
  double max_abs = 0.0;
  for (double v : s.data()) max_abs = std::max(max_abs, std::abs(v));
  double max_asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      max_asym = std::max(max_asym, std::abs(s(i, j) - s(j, i)));
  if (max_asym > tol * std::max(max_abs, 1.0) && max_asym > tol)
    throw NotSymmetric("jacobi: matrix not symmetric within tolerance");

  DenseMatrix m = s;
  // symmetrize exactly so sweeps stay consistent
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = m(j, i) = avg;
    }

  const double off_tol = tol * std::max(max_abs, 1e-300);
  const std::size_t max_sweeps = 100;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * m(i, j) * m(i, j);
    if (std::sqrt(off) < off_tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cos_r = 1.0 / std::sqrt(t * t + 1.0);
        const double sin_r = t * cos_r;
        const double tau = sin_r / (1.0 + cos_r);
        const double app = m(p, p);
        const double aqq = m(q, q);
        m(p, p) = app - t * apq;
        m(q, q) = aqq + t * apq;
        m(p, q) = m(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m(r, p);
          const double arq = m(r, q);
          m(r, p) = m(p, r) = arp - sin_r * (arq + tau * arp);
          m(r, q) = m(q, r) = arq + sin_r * (arp - tau * arq);
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

DenseMatrix cholesky_lower(const DenseMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionMismatch("cholesky: matrix not square");
  const std::size_t n = s.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = s(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (diag <= 0.0) throw NotPositiveDefinite("cholesky: non-positive pivot");
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

double lu_determinant(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("lu_determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  DenseMatrix a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

double gelfand_spectral_radius(const DenseMatrix& m, std::size_t powers) {
  if (m.rows() != m.cols()) throw DimensionMismatch("gelfand: matrix not square");
  const std::size_t n = m.rows();
  Vector v(n, 1.0);
  double log_growth = -std::log(norm2(v));
  for (std::size_t k = 0; k < powers; ++k) {
    v = matvec(m, v);
    if (!all_finite(v)) return std::numeric_limits<double>::infinity();
    if ((k + 1) % 8 == 0) {
      const double nv = norm2(v);
      if (nv == 0.0) return 0.0;
      if (!std::isfinite(nv)) return std::numeric_limits<double>::infinity();
      log_growth += std::log(nv);
      for (double& x : v) x /= nv;
    }
  }
  const double nv = norm2(v);
  if (nv == 0.0) return 0.0;
  if (!std::isfinite(nv)) return std::numeric_limits<double>::infinity();
  log_growth += std::log(nv);
  return std::exp(log_growth / static_cast<double>(powers));
}

}  // namespace eamp
