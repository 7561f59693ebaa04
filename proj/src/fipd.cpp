// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/fipd.hpp"

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
                std::string(where) + ": beta must be finite and > 0, got " +
                    fmt_double(s.beta));
}

bool uses_exact_path(const ProblemSpec& p, bool exact_enabled) {
  if (!exact_enabled) return false;
  const ProxOracle& f1 = p.objective.f1;
  const bool f1_quad = f1.is_zero || f1.quadratic.has_value();
  const bool f2_quad =
      !p.objective.composite() || p.objective.f2->quadratic.has_value();
  return f1_quad && f2_quad;
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

void FipdConfig::validate(const ProblemSpec& p) const {
  require_input(std::isfinite(alpha) && alpha > 0.0,
                "FipdConfig: alpha must be finite and > 0");
  require_input(std::isfinite(delta) && delta > 0.0,
                "FipdConfig: delta must be finite and > 0");
  require_input(std::isfinite(theta), "FipdConfig: theta must be finite");
  require_input(std::isfinite(beta0) && beta0 > 0.0,
                "FipdConfig: beta0 must be finite and > 0");
  require_input(max_outer >= 1, "FipdConfig: max_outer must be >= 1");
  require_input(stop_res >= 0.0, "FipdConfig: stop_res must be >= 0");
  require_input(inner.tol0 >= 0.0 && inner.max_iter >= 1 && inner.decay >= 0.0,
                "FipdConfig: invalid inner schedule");

  if (schedule.mode == BetaSchedule::Mode::Recurrence)
    require_input(theta >= 2.0,
                  "FipdConfig: the Recurrence beta schedule requires theta >= "
                  "2, got theta = " +
                      fmt_double(theta));
  if (schedule.mode == BetaSchedule::Mode::Checked) {
    require_input(!schedule.values.empty(),
                  "FipdConfig: Checked beta schedule needs values");
    const int k1 = schedule.k1;
    require_input(
        k1 >= std::max(static_cast<int>(std::ceil(theta)) - 1, 1),
        "FipdConfig: Checked schedule k1 must be >= max(theta-1, 1)");
    for (std::size_t j = 0; j < schedule.values.size(); ++j)
      require_input(std::isfinite(schedule.values[j]) &&
                        schedule.values[j] > 0.0,
                    "FipdConfig: Checked beta values must be finite and > 0");
    for (std::size_t j = 0; j + 1 < schedule.values.size(); ++j) {
      const int k = static_cast<int>(j) + 1;  // values[j] = beta_k
      if (k < k1) continue;
      const double bk = schedule.values[j];
      const double bk1 = schedule.values[j + 1];
      const double bound =
          k * (k + 1 - theta + 1.0 / delta) / ((k + 1) * (k + 2 - theta)) * bk;
      require_input(
          bk1 <= bound * (1.0 + 1e-12),
          "FipdConfig: Checked beta schedule violates the admissible growth "
          "inequality at k = " +
              std::to_string(k) + " (beta_{k+1} = " + fmt_double(bk1) +
              " > " + fmt_double(bound) + ")");
    }
  }

  metric.check_dim(p.n(), "FipdConfig");
  const double lam_min = metric.lambda_min();
  require_input(lam_min >= 0.0, "FipdConfig: metric must be PSD");
  // Inexact solves transfer their error through the metric term; demand a
  // strictly positive-definite metric whenever the inexact path can run with
  // a nonzero tolerance.
  if (!uses_exact_path(p, quadratic_exact_step) && inner.tol0 > 0.0)
    require_input(lam_min > 0.0,
                  "FipdConfig: metric must be positive definite when "
                  "subproblems are solved inexactly (inner tolerance > 0)");

  if (certificate) {
    require_input(certificate->x_star.size() == p.n() &&
                      certificate->lambda_star.size() == p.m(),
                  "FipdConfig: certificate dimensions do not match problem");
  }
}

std::vector<std::string> FipdConfig::hypothesis_notes() const {
  std::vector<std::string> notes;
  const double inv_delta = 1.0 / delta;
  if (!(theta <= inv_delta))
    notes.push_back("accelerated-rate hypothesis theta <= 1/delta violated "
                    "(theta = " +
                    fmt_double(theta) + ", 1/delta = " + fmt_double(inv_delta) +
                    ")");
  if (!(inv_delta <= alpha - 1.0))
    notes.push_back("accelerated-rate hypothesis 1/delta <= alpha-1 violated "
                    "(1/delta = " +
                    fmt_double(inv_delta) + ", alpha-1 = " +
                    fmt_double(alpha - 1.0) + ")");
  return notes;
}

Vector fipd_extrapolate(const IterateState& s, const FipdConfig& cfg) {
  require_input(s.x.size() == s.x_prev.size(),
                "fipd_extrapolate: x and x_prev dimensions differ");
  const double denom = s.k + cfg.alpha - cfg.theta;
  require_input(denom != 0.0,
                "fipd_extrapolate: zero denominator k+alpha-theta at k = " +
                    std::to_string(s.k));
  // Clamp to 0 while k < theta; the raw coefficient would be negative there.
  const double c = s.k < cfg.theta ? 0.0 : (s.k - cfg.theta) / denom;
  return s.x + c * (s.x - s.x_prev);
}

StepCoeffs fipd_step_coeffs(const IterateState& s, const FipdConfig& cfg,
                            const LinearConstraint& con) {
  const double k = static_cast<double>(s.k);
  require_input(std::isfinite(s.beta) && s.beta > 0.0,
                "fipd_step_coeffs: beta must be finite and > 0");
  const double lead = cfg.delta * (k + 1.0 - cfg.theta);
  const double scale = 1.0 + lead;
  require_input(scale > 0.0,
                "fipd_step_coeffs: 1 + delta*(k+1-theta) must be > 0, got " +
                    fmt_double(scale) + " at k = " + std::to_string(s.k));
  const double prox_denom = k + cfg.alpha - cfg.theta;
  require_input(prox_denom > 0.0,
                "fipd_step_coeffs: k+alpha-theta must be > 0 at k = " +
                    std::to_string(s.k));
  StepCoeffs co;
  co.penalty_weight = k * s.beta * scale;
  co.penalty_target = (lead * (con.A * s.x) + con.b) / scale;
  co.prox_weight = prox_denom / (k * s.beta);
  return co;
}

double fipd_update_beta(int k, double beta, const FipdConfig& cfg) {
  require_input(k >= 1, "fipd_update_beta: k must be >= 1");
  require_input(std::isfinite(beta) && beta > 0.0,
                "fipd_update_beta: beta must be finite and > 0");
  switch (cfg.schedule.mode) {
    case BetaSchedule::Mode::Constant:
      return beta;
    case BetaSchedule::Mode::Recurrence:
      if (k <= cfg.theta - 2.0) return beta;
      return beta * static_cast<double>(k) / (k + 2.0 - cfg.theta);
    case BetaSchedule::Mode::Checked: {
      const std::size_t idx = static_cast<std::size_t>(k);  // values[k] = beta_{k+1}
      require_input(idx < cfg.schedule.values.size(),
                    "fipd_update_beta: Checked beta schedule exhausted at k = " +
                        std::to_string(k));
      return cfg.schedule.values[idx];
    }
  }
  return beta;
}

StepOutcome fipd_step(const ProblemSpec& p, const IterateState& s,
                      const FipdConfig& cfg, SolverWorkspace* ws) {
  check_state(p, s, "fipd_step");
  const double k = static_cast<double>(s.k);

  const Vector x_bar = fipd_extrapolate(s, cfg);
  const StepCoeffs co = fipd_step_coeffs(s, cfg, p.constraint);

  CompositeSubproblem sub;
  sub.prox_part = &p.objective.f1;
  // The full objective enters the subproblem: a smooth second term is kept
  // as-is (this solver does not linearize it).
  sub.smooth = p.objective.composite() ? &*p.objective.f2 : nullptr;
  sub.metric = cfg.metric;
  sub.prox_weight = co.prox_weight;
  sub.center = x_bar;
  sub.penalty_weight = co.penalty_weight;
  sub.A = &p.constraint.A;
  sub.target = co.penalty_target;
  sub.linear = p.constraint.A.transpose() * s.lam;

  const bool exact = uses_exact_path(p, cfg.quadratic_exact_step);
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
      k * s.beta *
      (res_next + cfg.delta * (k + 1.0 - cfg.theta) *
                      (p.constraint.A * (x_next - s.x)));
  require_numeric(all_finite(x_next) && all_finite(dual_incr),
                  "fipd_step: non-finite update at k = " + std::to_string(s.k));

  StepOutcome out;
  out.next.k = s.k + 1;
  out.next.x = x_next;
  out.next.x_prev = s.x;
  out.next.lam = s.lam + dual_incr;
  out.next.beta = fipd_update_beta(s.k, s.beta, cfg);

  out.record.k = s.k + 1;
  out.record.objective = p.objective_value(x_next);
  out.record.feasibility = res_next.norm();
  out.record.lagrangian_gap = detail::gap_or_nan(p, x_next, cfg.certificate);
  out.record.step_norm = (x_next - s.x).norm();
  out.record.dual_step = dual_incr.norm();
  out.record.beta = s.beta;  // coefficient used to produce this iterate
  out.record.inner_iters = inner_iters;
  out.record.eps_bound = eps_bound;
  return out;
}

RunResult fipd_run(const ProblemSpec& p, const FipdConfig& cfg,
                   const Vector& x0, const Vector& lam0) {
  cfg.validate(p);
  require_input(x0.size() == p.n() && all_finite(x0),
                "fipd_run: x0 invalid (dimension or non-finite)");
  require_input(lam0.size() == p.m() && all_finite(lam0),
                "fipd_run: lam0 invalid (dimension or non-finite)");
  IterateState init;
  init.k = 1;
  init.x = x0;
  init.x_prev = x0;
  init.lam = lam0;
  init.beta = cfg.beta0;
  SolverWorkspace ws;
  return detail::run_outer_loop(
      p, cfg.max_outer, cfg.stop_res, cfg.certificate, std::move(init),
      [&](const IterateState& s) { return fipd_step(p, s, cfg, &ws); });
}

double fipd_energy(const ProblemSpec& p, const IterateState& s,
                   const FipdConfig& cfg, const SaddleCertificate& cert) {
  check_state(p, s, "fipd_energy");
  const double k_min = std::max(cfg.theta - 1.0, 1.0);
  require_input(static_cast<double>(s.k) >= k_min,
                "fipd_energy: defined for k >= max(theta-1, 1) = " +
                    fmt_double(k_min) + ", got k = " + std::to_string(s.k));
  require_input(cert.x_star.size() == p.n() &&
                    cert.lambda_star.size() == p.m(),
                "fipd_energy: certificate dimensions do not match problem");
  const double k = static_cast<double>(s.k);
  const double gap = lagrangian(p, s.x, cert.lambda_star) -
                     lagrangian(p, cert.x_star, cert.lambda_star);
  const Vector dx = s.x - cert.x_star;
  const Vector u = (1.0 / cfg.delta) * dx + (k - cfg.theta) * (s.x - s.x_prev);
  const double drift_coeff =
      (cfg.alpha * cfg.delta - cfg.delta - 1.0) / (2.0 * cfg.delta * cfg.delta);
  return k * (k + 1.0 - cfg.theta) * s.beta * gap + 0.5 * cfg.metric.quad(u) +
         drift_coeff * cfg.metric.quad(dx) +
         (s.lam - cert.lambda_star).squaredNorm() / (2.0 * cfg.delta);
}

Vector fipd_discretization_residual(const ProblemSpec& p,
                                    const IterateState& before,
                                    const IterateState& after,
                                    const FipdConfig& cfg) {
  const SmoothOracle* f = p.smooth_full();
  require_input(f != nullptr,
                "fipd_discretization_residual: requires a smooth objective");
  require_input(after.k == before.k + 1,
                "fipd_discretization_residual: after must be the state "
                "produced from before");
  const double k = static_cast<double>(before.k);
  const Vector d1 = after.x - before.x;        // x_{k+1} - x_k
  const Vector d0 = before.x - before.x_prev;  // x_k - x_{k-1}
  return d1 - d0 + ((cfg.alpha - cfg.theta) / k) * d1 + (cfg.theta / k) * d0 +
         before.beta *
             (f->gradient(after.x) + p.constraint.A.transpose() * after.lam);
}

}  // namespace pdscale
