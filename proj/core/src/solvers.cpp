#include "eamp/solvers.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "eamp/errors.hpp"

namespace eamp {

namespace {

constexpr double kTauCap = 1e12;

double count_nonzero(const Vector& x) {
  std::size_t nnz = 0;
  for (double v : x)
    if (v != 0.0) ++nnz;
  return static_cast<double>(nnz);
}

double dist_to(const Vector& x, const Vector& ref) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref[i];
    acc += d * d;
  }
  return std::sqrt(acc) / std::max(1.0, norm2(ref));
}

double divergence_cap_for(const SolveConfig& cfg, double initial_objective) {
  if (cfg.divergence_cap > 0.0) return cfg.divergence_cap;
  return 1e10 * std::max(initial_objective, 1.0);
}

void record(SolveTrace& trace, bool enabled, std::size_t t, double obj, double kkt,
            double support_frac, double tau, const Vector* x, const Vector* ref) {
  if (!enabled) return;
  TraceRow row{t, obj, kkt, support_frac, tau, std::nullopt};
  if (ref && x) row.dist_to_ref = dist_to(*x, *ref);
  trace.rows.push_back(row);
}

double rel_step(const Vector& x_new, const Vector& x_old) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x_new.size(); ++i) {
    const double d = x_new[i] - x_old[i];
    acc += d * d;
  }
  return std::sqrt(acc) / std::max(1.0, norm2(x_old));
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

EampState zero_init(const LassoProblem& p, double tau_x0) {
  EampState st;
  st.s.assign(p.n(), 0.0);
  st.x.assign(p.N(), 0.0);
  st.tau_x = tau_x0;
  st.t = 0;
  return st;
}

EampState eamp_step(const EampState& state, const LassoProblem& p, double e) {
  if (!(e > 0.0) || e > 1.0) throw std::invalid_argument("eamp_step: e must be in (0, 1]");
  const double ratio = e / state.tau_x;
  const Vector ax = matvec(p.A, state.x);

  EampState next;
  next.s.resize(p.n());
  for (std::size_t i = 0; i < p.n(); ++i)
    next.s[i] = ratio * (ax[i] - p.y[i]) + (1.0 - ratio) * state.s[i];

  const Vector grad = matvec_transposed(p.A, next.s);
  Vector u(p.N());
  for (std::size_t i = 0; i < p.N(); ++i) u[i] = state.x[i] - state.tau_x * grad[i];
  next.x = soft_threshold(u, p.gamma * state.tau_x);

  const double d = count_nonzero(next.x) / static_cast<double>(p.N());
  next.tau_x = 1.0 + (d / p.c) * state.tau_x;
  next.t = state.t + 1;
  return next;
}

SolveResult eamp_run(const LassoProblem& p, const SolveConfig& cfg, const EampState& init,
                     const Vector* reference) {
  SolveResult res;
  EampState state = init;
  const double cap = divergence_cap_for(cfg, objective(p, state.x));

  double obj = objective(p, state.x);
  KktReport kkt = kkt_residual(p, state.x);
  record(res.trace, cfg.record_trace, state.t, obj, kkt.residual,
         count_nonzero(state.x) / static_cast<double>(p.N()), state.tau_x, &state.x, reference);

  res.trace.status = SolveStatus::MaxIter;
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    EampState next = eamp_step(state, p, cfg.e);
    ++res.iterations;

    if (!next.finite() || next.tau_x > kTauCap) {
      res.trace.status = SolveStatus::Diverged;
      record(res.trace, cfg.record_trace, next.t, std::nan(""), std::nan(""),
             count_nonzero(next.x) / static_cast<double>(p.N()), next.tau_x, nullptr, nullptr);
      state = std::move(next);
      break;
    }
    obj = objective(p, next.x);
    kkt = kkt_residual(p, next.x);
    const double step = rel_step(next.x, state.x);
    record(res.trace, cfg.record_trace, next.t, obj, kkt.residual,
           count_nonzero(next.x) / static_cast<double>(p.N()), next.tau_x, &next.x, reference);

    if (!std::isfinite(obj) || obj > cap) {
      res.trace.status = SolveStatus::Diverged;
      state = std::move(next);
      break;
    }
    state = std::move(next);
    if (kkt.residual <= cfg.kkt_tol && step <= cfg.step_tol) {
      res.trace.status = SolveStatus::Converged;
      break;
    }
  }
  res.x = state.x;
  res.kkt = all_finite(res.x) ? kkt_residual(p, res.x).residual
                              : std::numeric_limits<double>::infinity();
  res.final_state = std::move(state);
  return res;
}

SolveResult fista_run(const LassoProblem& p, const SolveConfig& cfg, const Vector* reference) {
  SolveResult res;
  const double sigma = power_iteration_sigma_max(p.A).value;
  const double lip = sigma * sigma;
  const double step = 1.0 / lip;
  const double cap = divergence_cap_for(cfg, objective(p, Vector(p.N(), 0.0)));

  Vector x(p.N(), 0.0);
  Vector yv = x;
  double t_mom = 1.0;

  KktReport kkt = kkt_residual(p, x);
  record(res.trace, cfg.record_trace, 0, objective(p, x), kkt.residual, 0.0, step, &x, reference);

  res.trace.status = SolveStatus::MaxIter;
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    const Vector ay = matvec(p.A, yv);
    Vector r(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) r[i] = ay[i] - p.y[i];
    const Vector grad = matvec_transposed(p.A, r);
    Vector u(p.N());
    for (std::size_t i = 0; i < p.N(); ++i) u[i] = yv[i] - step * grad[i];
    Vector x_new = soft_threshold(u, p.gamma * step);

    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
    for (std::size_t i = 0; i < p.N(); ++i)
      yv[i] = x_new[i] + ((t_mom - 1.0) / t_new) * (x_new[i] - x[i]);
    t_mom = t_new;

    ++res.iterations;
    const double obj = objective(p, x_new);
    kkt = kkt_residual(p, x_new);
    const double st = rel_step(x_new, x);
    x = std::move(x_new);
    record(res.trace, cfg.record_trace, res.iterations, obj, kkt.residual,
           count_nonzero(x) / static_cast<double>(p.N()), step, &x, reference);

    if (!std::isfinite(obj) || obj > cap || !all_finite(x)) {
      res.trace.status = SolveStatus::Diverged;
      break;
    }
    if (kkt.residual <= cfg.kkt_tol && st <= cfg.step_tol) {
      res.trace.status = SolveStatus::Converged;
      break;
    }
  }
  res.x = x;
  res.kkt = kkt_residual(p, res.x).residual;
  res.final_state.x = res.x;
  return res;
}

SolveResult pdhg_fixed_run(const LassoProblem& p, const SolveConfig& cfg,
                           const Vector* reference) {
  SolveResult res;
  const double sigma = power_iteration_sigma_max(p.A).value;
  const double tau = 0.99 / sigma;  // tau_s * tau_x * sigma^2 < 1
  const double cap = divergence_cap_for(cfg, objective(p, Vector(p.N(), 0.0)));

  Vector s(p.n(), 0.0);
  Vector x(p.N(), 0.0);

  KktReport kkt = kkt_residual(p, x);
  record(res.trace, cfg.record_trace, 0, objective(p, x), kkt.residual, 0.0, tau, &x, reference);

  res.trace.status = SolveStatus::MaxIter;
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    const Vector ax = matvec(p.A, x);
    // prox of g*(s) = <y,s> + 0.5||s||^2 has the closed form below
    for (std::size_t i = 0; i < p.n(); ++i)
      s[i] = (s[i] + tau * (ax[i] - p.y[i])) / (1.0 + tau);
    const Vector grad = matvec_transposed(p.A, s);
    Vector u(p.N());
    for (std::size_t i = 0; i < p.N(); ++i) u[i] = x[i] - tau * grad[i];
    Vector x_new = soft_threshold(u, p.gamma * tau);

    ++res.iterations;
    const double obj = objective(p, x_new);
    kkt = kkt_residual(p, x_new);
    const double st = rel_step(x_new, x);
    x = std::move(x_new);
    record(res.trace, cfg.record_trace, res.iterations, obj, kkt.residual,
           count_nonzero(x) / static_cast<double>(p.N()), tau, &x, reference);

    if (!std::isfinite(obj) || obj > cap || !all_finite(x)) {
      res.trace.status = SolveStatus::Diverged;
      break;
    }
    if (kkt.residual <= cfg.kkt_tol && st <= cfg.step_tol) {
      res.trace.status = SolveStatus::Converged;
      break;
    }
  }
  res.x = x;
  res.kkt = kkt_residual(p, res.x).residual;
  res.final_state.x = res.x;
  res.final_state.s = std::move(s);
  return res;
}

ReferenceResult reference_solve(const LassoProblem& p, double tol,
                                std::vector<double>* objective_trace) {
  if (!(tol > 0.0)) throw std::invalid_argument("reference_solve: tol must be > 0");
  const std::size_t hard_cap = 1000000;
  const double sigma = power_iteration_sigma_max(p.A).value;
  const double step = 1.0 / (sigma * sigma);

  Vector x(p.N(), 0.0);
  Vector yv = x;
  double t_mom = 1.0;
  double f_cur = objective(p, x);

  auto prox_grad = [&](const Vector& v) {
    const Vector av = matvec(p.A, v);
    Vector r(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) r[i] = av[i] - p.y[i];
    const Vector grad = matvec_transposed(p.A, r);
    Vector u(p.N());
    for (std::size_t i = 0; i < p.N(); ++i) u[i] = v[i] - step * grad[i];
    return soft_threshold(u, p.gamma * step);
  };

  ReferenceResult res;
  for (std::size_t it = 0; it < hard_cap; ++it) {
    Vector x_new = prox_grad(yv);
    double f_new = objective(p, x_new);
    if (f_new > f_cur) {
      // monotone restart: plain proximal-gradient step from x cannot increase F
      yv = x;
      t_mom = 1.0;
      x_new = prox_grad(yv);
      f_new = objective(p, x_new);
    }
    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
    for (std::size_t i = 0; i < p.N(); ++i)
      yv[i] = x_new[i] + ((t_mom - 1.0) / t_new) * (x_new[i] - x[i]);
    t_mom = t_new;
    x = std::move(x_new);
    f_cur = f_new;
    if (objective_trace) objective_trace->push_back(f_cur);
    res.iterations = it + 1;

    const double kkt = kkt_residual(p, x).residual;
    if (kkt <= tol) {
      res.x = std::move(x);
      res.kkt = kkt;
      res.converged = true;
      return res;
    }
  }
  res.x = std::move(x);
  res.kkt = kkt_residual(p, res.x).residual;
  res.converged = false;
  return res;
}

double default_e(const LassoProblem& p) {
  const double sigma = power_iteration_sigma_max(p.A).value;
  return std::min(1.0, 4.0 / (sigma * sigma + 2.0));
}

void write_trace_csv(const std::filesystem::path& path, const SolveTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.precision(17);
  out << "t,objective,kkt,support_frac,tau_x,dist_to_ref\n";
  for (const TraceRow& r : trace.rows) {
    out << r.t << ',' << r.objective << ',' << r.kkt << ',' << r.support_frac << ','
        << r.tau_x << ',';
    if (r.dist_to_ref) out << *r.dist_to_ref;
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace eamp
