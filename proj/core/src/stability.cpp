#include "eamp/stability.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "eamp/datagen.hpp"
#include "eamp/errors.hpp"
#include "eamp/rng.hpp"

namespace eamp {

bool EquilibriumPoint::schedule_consistent(double c, double tol) const {
  return std::abs(1.0 / tau_x_hat - (1.0 - d_hat / c)) <= tol;
}

EquilibriumPoint equilibrium_from_state(const LassoProblem& p, const EampState& state,
                                        double tol) {
  EquilibriumPoint eq;
  eq.x_hat = state.x;
  eq.s_hat = state.s;
  eq.tau_x_hat = state.tau_x;
  for (std::size_t i = 0; i < eq.x_hat.size(); ++i)
    if (eq.x_hat[i] != 0.0) eq.K.push_back(i);
  eq.d_hat = static_cast<double>(eq.K.size()) / static_cast<double>(p.N());
  if (!eq.schedule_consistent(p.c, tol))
    throw std::invalid_argument(
        "equilibrium_from_state: 1/tau_x != 1 - d/c; state is not at a fixed point");
  return eq;
}

DenseMatrix build_jacobian(const LassoProblem& p, const EquilibriumPoint& eq, double e) {
  const std::size_t n = p.n();
  const std::size_t N = p.N();
  if (eq.x_hat.size() != N || eq.s_hat.size() != n)
    throw DimensionMismatch("build_jacobian: equilibrium/problem size mismatch");

  std::vector<bool> in_support(N, false);
  for (std::size_t i : eq.K) in_support[i] = true;

  const double tau = eq.tau_x_hat;
  const double ratio = e / tau;
  const DenseMatrix gram_a = gram(p.A);
  const Vector ats = matvec_transposed(p.A, eq.s_hat);

  DenseMatrix j(n + N + 1, n + N + 1);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = 1.0 - ratio;
    for (std::size_t k = 0; k < N; ++k) j(i, n + k) = ratio * p.A(i, k);
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (!in_support[i]) continue;  // zero rows off the support
    const std::size_t row = n + i;
    for (std::size_t k = 0; k < n; ++k) j(row, k) = (e - tau) * p.A(k, i);
    for (std::size_t k = 0; k < N; ++k) j(row, n + k) = -e * gram_a(i, k);
    j(row, n + i) += 1.0;
    j(row, n + N) = -ats[i];
  }
  j(n + N, n + N) = eq.d_hat / p.c;
  return j;
}

double e_tight_bound(double M, double d_hat_over_c) {
  return std::min(1.0, 4.0 / (M + 2.0 * (1.0 - d_hat_over_c)));
}

double e_global_bound(const LassoProblem& p) {
  const double sigma = power_iteration_sigma_max(p.A).value;
  return std::min(1.0, 4.0 / (sigma * sigma + 2.0));
}

StabilityReport analytic_spectrum(const LassoProblem& p, const EquilibriumPoint& eq,
                                  double e) {
  const std::size_t n = p.n();
  const std::size_t N = p.N();
  const std::size_t k = eq.K.size();
  if (!(e > 0.0) || e >= eq.tau_x_hat)
    throw std::invalid_argument("analytic_spectrum: need 0 < e < tau_x_hat");
  if (k > n)
    throw SingularSubmatrix("analytic_spectrum: |K| > n, uniqueness cannot hold");

  StabilityReport rep;
  const double alpha = 1.0 - e / eq.tau_x_hat;
  rep.alpha = alpha;
  rep.e_global = e_global_bound(p);

  // boundary check: soft-threshold argument vs its kink at the equilibrium
  {
    const Vector ax = matvec(p.A, eq.x_hat);
    Vector combo(n);
    for (std::size_t i = 0; i < n; ++i)
      combo[i] = e * (ax[i] - p.y[i]) + (eq.tau_x_hat - e) * eq.s_hat[i];
    const Vector at_combo = matvec_transposed(p.A, combo);
    for (std::size_t i = 0; i < N; ++i) {
      const double arg = eq.x_hat[i] - at_combo[i];
      if (std::abs(std::abs(arg) - p.gamma * eq.tau_x_hat) < 1e-8) {
        rep.boundary_flag = true;
        break;
      }
    }
  }

  rep.eigenvalues.push_back({eq.d_hat / p.c, 0.0, 1});
  if (N > k) rep.eigenvalues.push_back({0.0, 0.0, N - k});
  if (n > k) rep.eigenvalues.push_back({alpha, 0.0, n - k});

  if (k > 0) {
    DenseMatrix sub(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = p.A(i, eq.K[j]);
    const std::vector<double> h_eigs = jacobi_symmetric_eigenvalues(gram(sub));
    rep.m = h_eigs.front();
    rep.M = h_eigs.back();
    if (rep.m <= 1e-10 * std::max(rep.M, 0.0))
      throw SingularSubmatrix("analytic_spectrum: [A^T A]_K numerically singular");

    for (double u : h_eigs) {
      const double b = e * u - alpha - 1.0;
      const double disc = b * b - 4.0 * alpha;
      if (disc < 0.0) {
        const double im = 0.5 * std::sqrt(-disc);
        rep.eigenvalues.push_back({-0.5 * b, im, 1});
        rep.eigenvalues.push_back({-0.5 * b, -im, 1});
      } else {
        const double root = std::sqrt(disc);
        rep.eigenvalues.push_back({0.5 * (-b + root), 0.0, 1});
        rep.eigenvalues.push_back({0.5 * (-b - root), 0.0, 1});
      }
    }
  }

  double rho = 0.0;
  for (const EigenvalueEntry& ev : rep.eigenvalues)
    rho = std::max(rho, std::hypot(ev.re, ev.im));
  rep.spectral_radius = rho;
  rep.stable = rho < 1.0;
  rep.e_tight = e_tight_bound(k > 0 ? rep.M : 0.0, eq.d_hat / p.c);
  return rep;
}

AsymptoteCheck iid_asymptote_check(std::size_t n, std::size_t N, double d_hat,
                                   std::uint64_t seed) {
  if (!(d_hat >= 0.0) || static_cast<double>(N) * d_hat >= static_cast<double>(n))
    throw InvalidFraction("iid_asymptote_check: need 0 <= N*d_hat < n");

  const double c = static_cast<double>(n) / static_cast<double>(N);
  AsymptoteCheck check;
  check.predicted = 1.0 + std::sqrt(d_hat / c);

  const std::size_t k = static_cast<std::size_t>(std::llround(static_cast<double>(N) * d_hat));
  if (k == 0) {
    check.empirical = 0.0;
    check.degenerate = true;
    return check;
  }

  const DenseMatrix a = gen_iid_gaussian(n, N, seed);

  // uniformly random support of size k: Fisher-Yates prefix
  std::vector<std::size_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  SplitMix64 rng(seed + 0x51ab5);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_u64() % (N - i);
    std::swap(idx[i], idx[j]);
  }

  DenseMatrix sub(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(i, idx[j]);
  check.empirical = power_iteration_sigma_max(sub).value;
  return check;
}

std::string stability_report_to_json(const StabilityReport& report) {
  nlohmann::json eigs = nlohmann::json::array();
  for (const EigenvalueEntry& ev : report.eigenvalues)
    eigs.push_back({{"re", ev.re}, {"im", ev.im}, {"mult", ev.mult}});
  const nlohmann::json j{{"alpha", report.alpha},
                         {"m", report.m},
                         {"M", report.M},
                         {"e_tight", report.e_tight},
                         {"e_global", report.e_global},
                         {"spectral_radius", report.spectral_radius},
                         {"stable", report.stable},
                         {"boundary_flag", report.boundary_flag},
                         {"eigenvalues", eigs}};
  return j.dump(2);
}

}  // namespace eamp
