#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eamp/problem.hpp"
#include "eamp/solvers.hpp"

namespace eamp {

/// Converged iterate triple used as input to the local-stability analyzer.
struct EquilibriumPoint {
  Vector x_hat;                   // length N
  Vector s_hat;                   // length n
  double tau_x_hat = 1.0;         // > 1 when the support is nonempty
  double d_hat = 0.0;             // ||x_hat||_0 / N
  std::vector<std::size_t> K;     // support of x_hat

  /// |1/tau_x_hat - (1 - d_hat/c)| <= tol, the fixed-point schedule relation.
  bool schedule_consistent(double c, double tol = 1e-8) const;
};

/// Build an equilibrium point from a converged solver state; throws if the
/// fixed-point schedule relation does not hold within tol.
EquilibriumPoint equilibrium_from_state(const LassoProblem& p, const EampState& state,
                                        double tol = 1e-8);

struct EigenvalueEntry {
  double re = 0.0;
  double im = 0.0;
  std::size_t mult = 1;
};

struct StabilityReport {
  double alpha = 0.0;  // 1 - e/tau_x_hat
  double m = 0.0;      // extreme eigenvalues of H = [A^T A]_K
  double M = 0.0;
  double e_tight = 0.0;
  double e_global = 0.0;
  double spectral_radius = 0.0;
  bool stable = false;
  bool boundary_flag = false;  // soft-threshold argument within 1e-8 of a kink
  std::vector<EigenvalueEntry> eigenvalues;
};

/// Jacobian of the iteration map at the equilibrium, blocks ordered (s, x, tau_x).
DenseMatrix build_jacobian(const LassoProblem& p, const EquilibriumPoint& eq, double e);

/// Closed-form spectrum of the Jacobian: {d_hat/c}, zeros, alpha copies, and
/// quadratic-root pairs lambda^2 + (e u - alpha - 1) lambda + alpha = 0, one
/// pair per eigenvalue u of H. Requires e < tau_x_hat and m > 0.
StabilityReport analytic_spectrum(const LassoProblem& p, const EquilibriumPoint& eq, double e);

/// min{1, 4/(M + 2(1 - d_hat/c))}
double e_tight_bound(double M, double d_hat_over_c);

/// min{1, 4/(L + 2)} with L = sigma_max(A)^2
double e_global_bound(const LassoProblem& p);

struct AsymptoteCheck {
  double empirical = 0.0;
  double predicted = 0.0;
  bool degenerate = false;  // empty support column selection
};

/// Samples an n x N matrix of i.i.d. N(0, 1/n) entries, keeps a random support
/// of size round(N*d_hat), and compares sigma_max of the submatrix against the
/// asymptotic value 1 + sqrt(d_hat/c).
AsymptoteCheck iid_asymptote_check(std::size_t n, std::size_t N, double d_hat,
                                   std::uint64_t seed);

std::string stability_report_to_json(const StabilityReport& report);

}  // namespace eamp
