// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/ilpd.hpp"

#include <cmath>
#include <string>

#include "pdscale/errors.hpp"
#include "run_loop.hpp"

namespace pdscale {

namespace {

void check_state(const ProblemSpec& p, const IterateState& s,
                 const char* where) {
  require_input(s.k >= 1, std::string(where) + ": k must be >= 1");
  require_input(s.x.size() == p.n() && s.x_prev.size() == p.n(),
                std::string(where) + ": primal state dimension mismatch");
  require_input(s.lam.size() == p.m(),
                std::string(where) + ": dual state dimension mismatch");
  require_input(std::isfinite(s.beta) && s.beta > 0.0,
                std::string(where) + ": beta must be finite and > 0");
}

bool f1_exactly_solvable(const ProblemSpec& p, bool exact_enabled) {
  if (!exact_enabled) return false;
  const ProxOracle& f1 = p.objective.f1;
  return f1.is_zero || f1.quadratic.has_value();
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

}  // namespace

void IlpdConfig::validate(const ProblemSpec& p) const {
  require_input(p.objective.composite(),
                "IlpdConfig: this solver requires a composite objective "
                "(smooth second term present)");
  require_input(std::isfinite(alpha) && alpha > 0.0,
                "IlpdConfig: alpha must be finite and > 0");
  require_input(std::isfinite(delta) && delta > 0.0,
                "IlpdConfig: delta must be finite and > 0");
  require_input(std::isfinite(beta) && beta > 0.0,
                "IlpdConfig: beta must be finite and > 0");
  require_input(max_outer >= 1, "IlpdConfig: max_outer must be >= 1");
  require_input(stop_res >= 0.0, "IlpdConfig: stop_res must be >= 0");
  require_input(inner.tol0 >= 0.0 && inner.max_iter >= 1 && inner.decay >= 0.0,
                "IlpdConfig: invalid inner schedule");
  metric.check_dim(p.n(), "IlpdConfig");
  const double lam_min = metric.lambda_min();
  require_input(lam_min >= 0.0, "IlpdConfig: metric must be PSD");
  if (!f1_exactly_solvable(p, quadratic_exact_step) && inner.tol0 > 0.0)
    require_input(lam_min > 0.0,
                  "IlpdConfig: metric must be positive definite when "
                  "subproblems are solved inexactly (inner tolerance > 0)");
  if (strict_metric_check) {
    const double needed = beta * p.objective.f2->lipschitz;
    require_input(
        lam_min >= needed * (1.0 - 1e-9) - 1e-12,
        "IlpdConfig: metric condition M >= beta*L*Id violated (lambda_min(M) "
        "= " +
            fmt_double(lam_min) + ", beta*L = " + fmt_double(needed) + ")");
  }
  if (certificate)
    require_input(certificate->x_star.size() == p.n() &&
                      certificate->lambda_star.size() == p.m(),
                  "IlpdConfig: certificate dimensions do not match problem");
}

std::vector<std::string> IlpdConfig::hypothesis_notes() const {
  std::vector<std::string> notes;
  const double inv_delta = 1.0 / delta;
  if (!(2.0 <= inv_delta))
    notes.push_back(
        "accelerated-rate hypothesis 2 <= 1/delta violated (1/delta = " +
        fmt_double(inv_delta) + ")");
  if (!(inv_delta <= alpha - 1.0))
    notes.push_back("accelerated-rate hypothesis 1/delta <= alpha-1 violated "
                    "(1/delta = " +
                    fmt_double(inv_delta) + ", alpha-1 = " +
                    fmt_double(alpha - 1.0) + ")");
  return notes;
}

ExtrapolatedPair ilpd_extrapolate(const IterateState& s,
                                  const IlpdConfig& cfg) {
  require_input(s.x.size() == s.x_prev.size(),
                "ilpd_extrapolate: x and x_prev dimensions differ");
  const double k = static_cast<double>(s.k);
  const double bar_denom = k + cfg.alpha - 2.0;
  const double hat_denom = k + 1.0 / cfg.delta - 1.0;
  require_input(bar_denom != 0.0 && hat_denom != 0.0,
                "ilpd_extrapolate: zero extrapolation denominator at k = " +
                    std::to_string(s.k));
  const double num = std::max(k - 2.0, 0.0);  // clamp for k <= 2
  const Vector d = s.x - s.x_prev;
  ExtrapolatedPair pair;
  pair.x_bar = s.x + (num / bar_denom) * d;
  pair.x_hat = s.x + (num / hat_denom) * d;
  return pair;
}

StepCoeffs ilpd_step_coeffs(const IterateState& s, const IlpdConfig& cfg,
                            const LinearConstraint& con) {
  const double k = static_cast<double>(s.k);
  const double scale = cfg.delta * k - cfg.delta + 1.0;
  require_input(scale > 0.0,
                "ilpd_step_coeffs: delta*k - delta + 1 must be > 0");
  const double prox_denom = k + cfg.alpha - 2.0;
  require_input(prox_denom > 0.0,
                "ilpd_step_coeffs: k+alpha-2 must be > 0 at k = " +
                    std::to_string(s.k));
  StepCoeffs co;
  co.penalty_weight = cfg.beta * k * scale;
  co.penalty_target = (cfg.delta * (k - 1.0) * (con.A * s.x) + con.b) / scale;
  co.prox_weight = prox_denom / (cfg.beta * k);
  return co;
}

StepOutcome ilpd_step(const ProblemSpec& p, const IterateState& s,
                      const IlpdConfig& cfg, SolverWorkspace* ws) {
  check_state(p, s, "ilpd_step");
  require_input(p.objective.composite(),
                "ilpd_step: requires a composite objective");
  const double k = static_cast<double>(s.k);

  const ExtrapolatedPair pair = ilpd_extrapolate(s, cfg);
  const StepCoeffs co = ilpd_step_coeffs(s, cfg, p.constraint);

  CompositeSubproblem sub;
  sub.prox_part = &p.objective.f1;
  sub.smooth = nullptr;  // f2 is linearized at x_hat, not carried
  sub.metric = cfg.metric;
  sub.prox_weight = co.prox_weight;
  sub.center = pair.x_bar;
  sub.penalty_weight = co.penalty_weight;
  sub.A = &p.constraint.A;
  sub.target = co.penalty_target;
  sub.linear = p.constraint.A.transpose() * s.lam +
               p.objective.f2->gradient(pair.x_hat);

  const bool exact = f1_exactly_solvable(p, cfg.quadratic_exact_step);
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

  const Vector res_next = p.constraint.residual(x_next);
  const Vector dual_incr =
      cfg.beta * k *
      (res_next +
       cfg.delta * (k - 1.0) * (p.constraint.A * (x_next - s.x)));
  require_numeric(all_finite(x_next) && all_finite(dual_incr),
                  "ilpd_step: non-finite update at k = " + std::to_string(s.k));

  StepOutcome out;
  out.next.k = s.k + 1;
  out.next.x = x_next;
  out.next.x_prev = s.x;
  out.next.lam = s.lam + dual_incr;
  out.next.beta = cfg.beta;

  out.record.k = s.k + 1;
  out.record.objective = p.objective_value(x_next);
  out.record.feasibility = res_next.norm();
  out.record.lagrangian_gap = detail::gap_or_nan(p, x_next, cfg.certificate);
  out.record.step_norm = (x_next - s.x).norm();
  out.record.dual_step = dual_incr.norm();
  out.record.beta = cfg.beta;
  out.record.inner_iters = inner_iters;
  out.record.eps_bound = eps_bound;
  return out;
}

RunResult ilpd_run(const ProblemSpec& p, const IlpdConfig& cfg,
                   const Vector& x0, const Vector& lam0) {
  cfg.validate(p);
  require_input(x0.size() == p.n() && all_finite(x0),
                "ilpd_run: x0 invalid (dimension or non-finite)");
  require_input(lam0.size() == p.m() && all_finite(lam0),
                "ilpd_run: lam0 invalid (dimension or non-finite)");
  IterateState init;
  init.k = 1;
  init.x = x0;
  init.x_prev = x0;
  init.lam = lam0;
  init.beta = cfg.beta;
  SolverWorkspace ws;
  return detail::run_outer_loop(
      p, cfg.max_outer, cfg.stop_res, cfg.certificate, std::move(init),
      [&](const IterateState& s) { return ilpd_step(p, s, cfg, &ws); });
}

double ilpd_energy(const ProblemSpec& p, const IterateState& s,
                   const IlpdConfig& cfg, const SaddleCertificate& cert) {
  check_state(p, s, "ilpd_energy");
  require_input(cert.x_star.size() == p.n() &&
                    cert.lambda_star.size() == p.m(),
                "ilpd_energy: certificate dimensions do not match problem");
  const double k = static_cast<double>(s.k);
  const double gap = lagrangian(p, s.x, cert.lambda_star) -
                     lagrangian(p, cert.x_star, cert.lambda_star);
  const Vector dx = s.x - cert.x_star;
  const Vector u = (1.0 / cfg.delta) * dx + (k - 2.0) * (s.x - s.x_prev);
  const double drift_coeff =
      (cfg.alpha * cfg.delta - cfg.delta - 1.0) / (2.0 * cfg.delta * cfg.delta);
  return cfg.beta * k * (k - 1.0) * gap + 0.5 * cfg.metric.quad(u) +
         drift_coeff * cfg.metric.quad(dx) +
         (s.lam - cert.lambda_star).squaredNorm() / (2.0 * cfg.delta);
}

}  // namespace pdscale
