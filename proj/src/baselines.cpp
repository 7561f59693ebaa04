// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/baselines.hpp"

#include <cmath>
#include <string>

#include "pdscale/errors.hpp"
#include "run_loop.hpp"

namespace pdscale {

namespace {

void check_state(const ProblemSpec& p, const IterateState& s,
                 const char* where) {
  require_input(s.k >= 1, std::string(where) + ": k must be >= 1");
  require_input(s.x.size() == p.n(),
                std::string(where) + ": primal state dimension mismatch");
  require_input(s.lam.size() == p.m(),
                std::string(where) + ": dual state dimension mismatch");
}

void ensure_workspace(const ProblemSpec& p, SolverWorkspace* ws,
                      bool want_gram) {
  if (!ws) return;
  if (ws->a_norm_sq < 0.0) {
    const double s = spectral_norm(p.constraint.A);
    ws->a_norm_sq = s * s;
  }
  if (want_gram && !ws->has_gram) {
    ws->gram = p.constraint.A.transpose() * p.constraint.A;
    ws->has_gram = true;
  }
}

// Shared tail: multiplier ascent at penalty sigma and trace assembly.
StepOutcome finish_step(const ProblemSpec& p, const IterateState& s,
                        double sigma,
                        const std::optional<SaddleCertificate>& cert,
                        Vector x_next, int inner_iters, double eps_bound) {
  const Vector res_next = p.constraint.residual(x_next);
  const Vector dual_incr = sigma * res_next;
  require_numeric(all_finite(x_next),
                  "alm step: non-finite update at k = " + std::to_string(s.k));

  StepOutcome out;
  out.next.k = s.k + 1;
  out.next.x = x_next;
  out.next.x_prev = s.x;
  out.next.lam = s.lam + dual_incr;
  out.next.beta = sigma;

  out.record.k = s.k + 1;
  out.record.objective = p.objective_value(x_next);
  out.record.feasibility = res_next.norm();
  out.record.lagrangian_gap = detail::gap_or_nan(p, x_next, cert);
  out.record.step_norm = (x_next - s.x).norm();
  out.record.dual_step = dual_incr.norm();
  out.record.beta = sigma;
  out.record.inner_iters = inner_iters;
  out.record.eps_bound = eps_bound;
  return out;
}

}  // namespace

void AlmConfig::validate(const ProblemSpec&) const {
  require_input(std::isfinite(sigma) && sigma > 0.0,
                "AlmConfig: sigma must be finite and > 0");
  require_input(max_outer >= 1, "AlmConfig: max_outer must be >= 1");
  require_input(stop_res >= 0.0, "AlmConfig: stop_res must be >= 0");
  require_input(inner.tol0 >= 0.0 && inner.max_iter >= 1 && inner.decay >= 0.0,
                "AlmConfig: invalid inner schedule");
}

StepOutcome alm_step(const ProblemSpec& p, const IterateState& s,
                     const AlmConfig& cfg, SolverWorkspace* ws) {
  check_state(p, s, "alm_step");
  require_input(std::isfinite(cfg.sigma) && cfg.sigma > 0.0,
                "alm_step: sigma must be finite and > 0");

  CompositeSubproblem sub;
  sub.prox_part = &p.objective.f1;
  sub.smooth = p.objective.composite() ? &*p.objective.f2 : nullptr;
  sub.penalty_weight = cfg.sigma;
  sub.A = &p.constraint.A;
  sub.target = p.constraint.b;
  sub.linear = p.constraint.A.transpose() * s.lam;

  const bool exact = cfg.quadratic_exact_step && sub.exactly_solvable();
  ensure_workspace(p, ws, exact);
  if (ws) {
    sub.a_norm_sq = ws->a_norm_sq;
    if (ws->has_gram) sub.gram = &ws->gram;
  }

  Vector x_next;
  int inner_iters = 0;
  double eps_bound = 0.0;
  if (exact) {
    x_next = sub.solve_exact();
  } else {
    const InnerReport rep = fista(sub, s.x, cfg.inner.at(s.k));
    x_next = rep.x;
    inner_iters = rep.iterations;
    eps_bound = rep.eps_bound;
  }
  return finish_step(p, s, cfg.sigma, cfg.certificate, std::move(x_next),
                     inner_iters, eps_bound);
}

RunResult alm_run(const ProblemSpec& p, const AlmConfig& cfg, const Vector& x0,
                  const Vector& lam0) {
  cfg.validate(p);
  require_input(x0.size() == p.n() && all_finite(x0),
                "alm_run: x0 invalid (dimension or non-finite)");
  require_input(lam0.size() == p.m() && all_finite(lam0),
                "alm_run: lam0 invalid (dimension or non-finite)");
  IterateState init;
  init.k = 1;
  init.x = x0;
  init.x_prev = x0;
  init.lam = lam0;
  init.beta = cfg.sigma;
  SolverWorkspace ws;
  return detail::run_outer_loop(
      p, cfg.max_outer, cfg.stop_res, cfg.certificate, std::move(init),
      [&](const IterateState& s) { return alm_step(p, s, cfg, &ws); });
}

void LinAlmConfig::validate(const ProblemSpec& p) const {
  require_input(p.objective.composite(),
                "LinAlmConfig: this solver requires a composite objective");
  require_input(std::isfinite(sigma) && sigma > 0.0,
                "LinAlmConfig: sigma must be finite and > 0");
  require_input(max_outer >= 1, "LinAlmConfig: max_outer must be >= 1");
  require_input(stop_res >= 0.0, "LinAlmConfig: stop_res must be >= 0");
  require_input(inner.tol0 >= 0.0 && inner.max_iter >= 1 && inner.decay >= 0.0,
                "LinAlmConfig: invalid inner schedule");
  p_metric.check_dim(p.n(), "LinAlmConfig");
  require_input(p_metric.lambda_min() >= 0.0,
                "LinAlmConfig: P must be PSD (zero allowed)");
}

StepOutcome lin_alm_step(const ProblemSpec& p, const IterateState& s,
                         const LinAlmConfig& cfg, SolverWorkspace* ws) {
  check_state(p, s, "lin_alm_step");
  require_input(p.objective.composite(),
                "lin_alm_step: requires a composite objective");

  CompositeSubproblem sub;
  sub.prox_part = &p.objective.f1;
  sub.metric = cfg.p_metric;
  sub.prox_weight = 1.0;
  sub.center = s.x;
  sub.penalty_weight = cfg.sigma;
  sub.A = &p.constraint.A;
  sub.target = p.constraint.b;
  // f2 is linearized at x_k: only its gradient enters, sub.smooth stays null.
  sub.linear = p.constraint.A.transpose() * s.lam +
               p.objective.f2->gradient(s.x);

  const bool exact = cfg.quadratic_exact_step && sub.exactly_solvable();
  ensure_workspace(p, ws, exact);
  if (ws) {
    sub.a_norm_sq = ws->a_norm_sq;
    if (ws->has_gram) sub.gram = &ws->gram;
  }

  Vector x_next;
  int inner_iters = 0;
  double eps_bound = 0.0;
  if (exact) {
    x_next = sub.solve_exact();
  } else {
    const InnerReport rep = fista(sub, s.x, cfg.inner.at(s.k));
    x_next = rep.x;
    inner_iters = rep.iterations;
    eps_bound = rep.eps_bound;
  }
  return finish_step(p, s, cfg.sigma, cfg.certificate, std::move(x_next),
                     inner_iters, eps_bound);
}

RunResult lin_alm_run(const ProblemSpec& p, const LinAlmConfig& cfg,
                      const Vector& x0, const Vector& lam0) {
  cfg.validate(p);
  require_input(x0.size() == p.n() && all_finite(x0),
                "lin_alm_run: x0 invalid (dimension or non-finite)");
  require_input(lam0.size() == p.m() && all_finite(lam0),
                "lin_alm_run: lam0 invalid (dimension or non-finite)");
  IterateState init;
  init.k = 1;
  init.x = x0;
  init.x_prev = x0;
  init.lam = lam0;
  init.beta = cfg.sigma;
  SolverWorkspace ws;
  return detail::run_outer_loop(
      p, cfg.max_outer, cfg.stop_res, cfg.certificate, std::move(init),
      [&](const IterateState& s) { return lin_alm_step(p, s, cfg, &ws); });
}

}  // namespace pdscale
