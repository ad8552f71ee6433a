#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eamp/problem.hpp"

namespace eamp {

/// Iterate triple of the adaptive primal-dual iteration.
struct EampState {
  Vector s;            // dual, length n
  Vector x;            // primal, length N
  double tau_x = 1.0;  // primal stepsize, >= 1
  std::size_t t = 0;

  bool finite() const { return all_finite(s) && all_finite(x) && std::isfinite(tau_x); }
};

EampState zero_init(const LassoProblem& p, double tau_x0 = 1.0);

enum class SolveStatus { Converged, MaxIter, Diverged };

std::string to_string(SolveStatus s);

struct SolveConfig {
  double e = 1.0;  // in (0, 1]; ignored by fista/pdhg
  std::size_t max_iter = 100000;
  double kkt_tol = 1e-8;
  double step_tol = 1e-10;
  double divergence_cap = 0.0;  // absolute objective cap; 0 = 1e10 * F(x0)
  bool record_trace = true;
};

struct TraceRow {
  std::size_t t = 0;
  double objective = 0.0;
  double kkt = 0.0;
  double support_frac = 0.0;
  double tau_x = 0.0;
  std::optional<double> dist_to_ref;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  SolveStatus status = SolveStatus::MaxIter;
};

struct SolveResult {
  Vector x;
  EampState final_state;  // meaningful for eamp; s empty for fista/pdhg
  SolveTrace trace;
  double kkt = 0.0;
  std::size_t iterations = 0;
};

/// One step of the adaptive iteration (Algorithm form; never forms tau_s):
///   s <- (e/tau)(A x - y) + (1 - e/tau) s
///   x <- eta(x - tau A^T s; gamma tau)
///   tau <- 1 + (d/c) tau,  d = nnz(x_new)/N
EampState eamp_step(const EampState& state, const LassoProblem& p, double e);

SolveResult eamp_run(const LassoProblem& p, const SolveConfig& cfg, const EampState& init,
                     const Vector* reference = nullptr);

/// FISTA with step 1/L, L = sigma_max(A)^2.
SolveResult fista_run(const LassoProblem& p, const SolveConfig& cfg,
                      const Vector* reference = nullptr);

/// Fixed-step primal-dual baseline: tau = 0.99 / sigma_max(A) for both updates.
SolveResult pdhg_fixed_run(const LassoProblem& p, const SolveConfig& cfg,
                           const Vector* reference = nullptr);

struct ReferenceResult {
  Vector x;
  double kkt = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

/// High-accuracy solution via FISTA with monotone restarts; hard cap 1e6
/// iterations. objective_trace, when given, receives F(x^t) per iteration.
ReferenceResult reference_solve(const LassoProblem& p, double tol = 1e-10,
                                std::vector<double>* objective_trace = nullptr);

/// Default eAMP parameter: min{1, 4/(L+2)} with L = sigma_max(A)^2.
double default_e(const LassoProblem& p);

void write_trace_csv(const std::filesystem::path& path, const SolveTrace& trace);

}  // namespace eamp
