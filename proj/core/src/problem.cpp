#include "eamp/problem.hpp"

#include <cmath>

#include "eamp/errors.hpp"

namespace eamp {

LassoProblem::LassoProblem(DenseMatrix a, Vector y_in, double gamma_in)
    : A(std::move(a)), y(std::move(y_in)), gamma(gamma_in) {
  if (A.rows() != y.size()) throw DimensionMismatch("LassoProblem: A rows != y length");
  if (A.rows() == 0 || A.cols() == 0) throw DimensionMismatch("LassoProblem: empty matrix");
  if (!(gamma > 0.0)) throw std::invalid_argument("LassoProblem: gamma must be > 0");
  if (!A.all_finite() || !all_finite(y)) throw NonFinite("LassoProblem: non-finite input");
  c = static_cast<double>(A.rows()) / static_cast<double>(A.cols());
}

double soft_threshold_scalar(double u, double theta) {
  if (u > theta) return u - theta;
  if (u < -theta) return u + theta;
  return 0.0;
}

Vector soft_threshold(const Vector& u, double theta) {
  if (!(theta > 0.0)) throw InvalidThreshold("soft_threshold: theta must be > 0");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = soft_threshold_scalar(u[i], theta);
  return out;
}

double objective(const LassoProblem& p, const Vector& x) {
  if (x.size() != p.N()) throw DimensionMismatch("objective: x size != N");
  Vector r = matvec(p.A, x);
  double quad = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = p.y[i] - r[i];
    quad += d * d;
  }
  double l1 = 0.0;
  for (double v : x) l1 += std::abs(v);
  return 0.5 * quad + p.gamma * l1;
}

KktReport kkt_residual(const LassoProblem& p, const Vector& x, double equi_tol) {
  if (x.size() != p.N()) throw DimensionMismatch("kkt_residual: x size != N");
  Vector r(p.n());
  Vector ax = matvec(p.A, x);
  for (std::size_t i = 0; i < p.n(); ++i) r[i] = p.y[i] - ax[i];
  Vector g = matvec_transposed(p.A, r);  // A^T (y - A x)

  KktReport report;
  for (std::size_t i = 0; i < p.N(); ++i) {
    double viol;
    if (x[i] != 0.0) {
      const double sign = x[i] > 0.0 ? 1.0 : -1.0;
      viol = std::abs(g[i] - p.gamma * sign);
      report.support.push_back(i);
    } else {
      viol = std::max(std::abs(g[i]) - p.gamma, 0.0);
    }
    report.residual = std::max(report.residual, viol);
    if (std::abs(g[i]) >= p.gamma - equi_tol) report.equicorrelation.push_back(i);
  }
  return report;
}

UniquenessReport uniqueness_check(const LassoProblem& p, const Vector& x, double tol) {
  const KktReport kkt = kkt_residual(p, x);
  UniquenessReport rep;
  if (kkt.equicorrelation.empty()) {
    rep.unique = true;
    rep.vacuous = true;
    return rep;
  }
  if (kkt.equicorrelation.size() > p.n()) return rep;  // rank deficient for sure

  const std::size_t k = kkt.equicorrelation.size();
  DenseMatrix sub(p.n(), k);
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t j = 0; j < k; ++j) sub(i, j) = p.A(i, kkt.equicorrelation[j]);
  const std::vector<double> eig = jacobi_symmetric_eigenvalues(gram(sub));
  rep.smallest_eigenvalue = eig.front();
  rep.unique = eig.front() > tol * std::max(eig.back(), 0.0);
  return rep;
}

}  // namespace eamp
