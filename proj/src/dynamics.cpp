// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "pdscale/errors.hpp"

namespace pdscale {

namespace {

const SmoothOracle* smooth_or_throw(const ProblemSpec& p) {
  const SmoothOracle* f = p.smooth_full();
  require_input(f != nullptr,
                "dynamics: the objective must be differentiable (use a zero "
                "nonsmooth part plus a smooth term)");
  return f;
}

DynamicState shifted(const DynamicState& s, const DynamicDerivative& d,
                     double h) {
  DynamicState out;
  out.t = s.t + h;
  out.x = s.x + h * d.dx;
  out.v = s.v + h * d.dv;
  out.lam = s.lam + h * d.dlam;
  return out;
}

// Classical fourth-order step of size h.
DynamicState rk4_step(const ProblemSpec& p, const DynamicConfig& cfg,
                      const DynamicState& s, double h) {
  const DynamicDerivative k1 = dynamics_rhs(p, s, cfg);
  const DynamicDerivative k2 = dynamics_rhs(p, shifted(s, k1, 0.5 * h), cfg);
  const DynamicDerivative k3 = dynamics_rhs(p, shifted(s, k2, 0.5 * h), cfg);
  const DynamicDerivative k4 = dynamics_rhs(p, shifted(s, k3, h), cfg);
  DynamicState out;
  out.t = s.t + h;
  out.x = s.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.v = s.v + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  out.lam =
      s.lam + (h / 6.0) * (k1.dlam + 2.0 * k2.dlam + 2.0 * k3.dlam + k4.dlam);
  return out;
}

double state_inf_norm(const DynamicState& s) {
  double m = 0.0;
  if (s.x.size() > 0) m = std::max(m, s.x.cwiseAbs().maxCoeff());
  if (s.v.size() > 0) m = std::max(m, s.v.cwiseAbs().maxCoeff());
  if (s.lam.size() > 0) m = std::max(m, s.lam.cwiseAbs().maxCoeff());
  return m;
}

double state_diff_inf_norm(const DynamicState& a, const DynamicState& b) {
  double m = (a.x - b.x).cwiseAbs().maxCoeff();
  m = std::max(m, (a.v - b.v).cwiseAbs().maxCoeff());
  if (a.lam.size() > 0)
    m = std::max(m, (a.lam - b.lam).cwiseAbs().maxCoeff());
  return m;
}

void check_alive(const DynamicState& s, double guard, double last_t) {
  if (state_inf_norm(s) > guard || !all_finite(s.x) || !all_finite(s.v) ||
      !all_finite(s.lam))
    throw NumericalError(
        "dynamics: trajectory blow-up detected (norm > " + fmt_double(guard) +
        "); last valid time t = " + fmt_double(last_t));
}

SamplePoint make_sample(const ProblemSpec& p, const DynamicConfig& cfg,
                        const DynamicState& s) {
  SamplePoint pt;
  pt.t = s.t;
  pt.objective = p.objective_value(s.x);
  pt.feasibility = p.constraint.residual(s.x).norm();
  if (cfg.certificate) {
    pt.lagrangian_gap =
        lagrangian(p, s.x, cfg.certificate->lambda_star) -
        lagrangian(p, cfg.certificate->x_star, cfg.certificate->lambda_star);
    pt.energy = dynamic_energy(p, s, cfg, *cfg.certificate);
  } else {
    pt.lagrangian_gap = std::nan("");
    pt.energy = std::nan("");
  }
  pt.t_xdot_norm = s.t * s.v.norm();
  pt.beta = cfg.beta(s.t);
  return pt;
}

}  // namespace

double DynamicConfig::beta(double t) const {
  if (beta_fn) return beta_fn(t);
  return power_law.mu * std::pow(t, power_law.exponent);
}

double DynamicConfig::beta_dot(double t) const {
  if (beta_fn) return beta_dot_fn(t);
  if (power_law.exponent == 0.0) return 0.0;
  return power_law.mu * power_law.exponent *
         std::pow(t, power_law.exponent - 1.0);
}

double DynamicConfig::step_size() const {
  if (dt > 0.0) return dt;
  return std::min(1e-3, t0 / 100.0);
}

void DynamicConfig::validate(const ProblemSpec& p) const {
  require_input(std::isfinite(alpha) && alpha > 0.0,
                "DynamicConfig: alpha must be finite and > 0");
  require_input(std::isfinite(delta) && delta > 0.0,
                "DynamicConfig: delta must be finite and > 0");
  require_input(std::isfinite(t0) && t0 > 0.0,
                "DynamicConfig: t0 must be finite and > 0");
  require_input(std::isfinite(t_end) && t_end > t0,
                "DynamicConfig: t_end must be finite and > t0");
  require_input(std::isfinite(dt) && dt >= 0.0,
                "DynamicConfig: dt must be finite and >= 0 (0 = default)");
  if (adaptive)
    require_input(std::isfinite(adaptive_tol) && adaptive_tol > 0.0,
                  "DynamicConfig: adaptive_tol must be finite and > 0");
  require_input(samples >= 2, "DynamicConfig: samples must be >= 2");
  require_input(std::isfinite(blowup_guard) && blowup_guard > 0.0,
                "DynamicConfig: blowup_guard must be finite and > 0");
  require_input(static_cast<bool>(beta_fn) == static_cast<bool>(beta_dot_fn),
                "DynamicConfig: custom scaling needs both beta_fn and "
                "beta_dot_fn");
  if (!beta_fn)
    require_input(std::isfinite(power_law.mu) && power_law.mu > 0.0 &&
                      std::isfinite(power_law.exponent) &&
                      power_law.exponent >= 0.0,
                  "DynamicConfig: power law needs mu > 0 and exponent >= 0");
  for (const double t : {t0, t_end}) {
    const double b = beta(t);
    require_input(std::isfinite(b) && b > 0.0,
                  "DynamicConfig: beta(t) must be finite and > 0 on [t0, "
                  "t_end], got " +
                      fmt_double(b) + " at t = " + fmt_double(t));
  }
  smooth_or_throw(p);
  if (certificate)
    require_input(certificate->x_star.size() == p.n() &&
                      certificate->lambda_star.size() == p.m(),
                  "DynamicConfig: certificate dimensions do not match problem");
}

std::vector<std::string> DynamicConfig::hypothesis_notes() const {
  std::vector<std::string> notes;
  const double slack = 1.0 / delta - 2.0;
  // Scaling-growth condition t beta'(t) <= (1/delta - 2) beta(t), probed on
  // the geometric output grid.
  const double ratio = std::pow(t_end / t0, 1.0 / (samples - 1));
  double worst = -1.0, worst_t = t0;
  double t = t0;
  for (int j = 0; j < samples; ++j, t *= ratio) {
    const double excess = t * beta_dot(t) - slack * beta(t);
    if (excess > worst) {
      worst = excess;
      worst_t = t;
    }
  }
  if (worst > 1e-12)
    notes.push_back(
        "scaling-growth hypothesis t*beta'(t) <= (1/delta-2)*beta(t) violated "
        "(worst excess " +
        fmt_double(worst) + " at t = " + fmt_double(worst_t) + ")");
  if (!beta_fn) {
    const double eta = power_law.exponent;
    if (!(eta <= slack && slack <= alpha - 3.0))
      notes.push_back(
          "power-law rate hypothesis exponent <= 1/delta-2 <= alpha-3 "
          "violated (exponent = " +
          fmt_double(eta) + ", 1/delta-2 = " + fmt_double(slack) +
          ", alpha-3 = " + fmt_double(alpha - 3.0) + ")");
  }
  return notes;
}

DynamicDerivative dynamics_rhs(const ProblemSpec& p, const DynamicState& s,
                               const DynamicConfig& cfg) {
  require_input(s.t > 0.0, "dynamics_rhs: t must be > 0");
  require_input(s.x.size() == p.n() && s.v.size() == p.n() &&
                    s.lam.size() == p.m(),
                "dynamics_rhs: state dimensions do not match problem");
  const SmoothOracle* f = smooth_or_throw(p);
  const double b = cfg.beta(s.t);
  DynamicDerivative d;
  d.dx = s.v;
  d.dv = -(cfg.alpha / s.t) * s.v -
         b * (f->gradient(s.x) + p.constraint.A.transpose() * s.lam);
  if (cfg.eps_fn) {
    const Vector eps = cfg.eps_fn(s.t);
    require_input(eps.size() == p.n() && all_finite(eps),
                  "dynamics_rhs: perturbation has wrong dimension or "
                  "non-finite entries");
    d.dv += eps;
  }
  d.dlam = s.t * b *
           (p.constraint.A * (s.x + (cfg.delta * s.t) * s.v) - p.constraint.b);
  return d;
}

Trajectory integrate(const ProblemSpec& p, const DynamicConfig& cfg,
                     const DynamicState& init) {
  cfg.validate(p);
  require_input(init.t == cfg.t0, "integrate: init.t must equal t0");
  require_input(init.x.size() == p.n() && init.v.size() == p.n() &&
                    init.lam.size() == p.m(),
                "integrate: initial state dimensions do not match problem");
  require_input(all_finite(init.x) && all_finite(init.v) &&
                    all_finite(init.lam),
                "integrate: initial state has non-finite entries");

  const double ratio = std::pow(cfg.t_end / cfg.t0, 1.0 / (cfg.samples - 1));
  Trajectory traj;
  traj.reserve(static_cast<std::size_t>(cfg.samples));

  DynamicState s = init;
  traj.push_back({s, make_sample(p, cfg, s)});

  double h = cfg.step_size();  // adaptive proposal; fixed cap otherwise
  for (int j = 1; j < cfg.samples; ++j) {
    const double target =
        j + 1 == cfg.samples ? cfg.t_end : cfg.t0 * std::pow(ratio, j);
    while (s.t < target * (1.0 - 1e-14)) {
      const double span = target - s.t;
      if (!cfg.adaptive) {
        const double step = std::min(cfg.step_size(), span);
        DynamicState next = rk4_step(p, cfg, s, step);
        check_alive(next, cfg.blowup_guard, s.t);
        s = std::move(next);
        continue;
      }
      // Step doubling: compare one h-step against two h/2-steps and control
      // the gap (an estimate of the local error, order h^5).
      double step = std::min(h, span);
      for (;;) {
        require_numeric(step > 1e-14 * std::max(s.t, 1.0),
                        "integrate: step size underflow at t = " +
                            fmt_double(s.t) + " (stiff segment)");
        const DynamicState big = rk4_step(p, cfg, s, step);
        DynamicState fine = rk4_step(p, cfg, s, 0.5 * step);
        fine = rk4_step(p, cfg, fine, 0.5 * step);
        const double scale = std::max(1.0, state_inf_norm(fine));
        const double err = state_diff_inf_norm(fine, big);
        const double tol = cfg.adaptive_tol * scale;
        const double factor =
            err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        if (err <= tol) {
          check_alive(fine, cfg.blowup_guard, s.t);
          s = std::move(fine);
          h = step * std::clamp(factor, 0.2, 5.0);
          break;
        }
        step *= std::clamp(factor, 0.2, 0.9);
      }
    }
    s.t = target;  // land exactly on the sample time
    traj.push_back({s, make_sample(p, cfg, s)});
  }
  return traj;
}

double dynamic_energy(const ProblemSpec& p, const DynamicState& s,
                      const DynamicConfig& cfg, const SaddleCertificate& cert) {
  require_input(s.t > 0.0, "dynamic_energy: t must be > 0");
  require_input(cert.x_star.size() == p.n() &&
                    cert.lambda_star.size() == p.m(),
                "dynamic_energy: certificate dimensions do not match problem");
  const double gap = lagrangian(p, s.x, cert.lambda_star) -
                     lagrangian(p, cert.x_star, cert.lambda_star);
  const Vector dx = s.x - cert.x_star;
  const Vector u = (1.0 / cfg.delta) * dx + s.t * s.v;
  const double drift_coeff = (cfg.alpha * cfg.delta - cfg.delta - 1.0) /
                             (2.0 * cfg.delta * cfg.delta);
  return s.t * s.t * cfg.beta(s.t) * gap + 0.5 * u.squaredNorm() +
         drift_coeff * dx.squaredNorm() +
         (s.lam - cert.lambda_star).squaredNorm() / (2.0 * cfg.delta);
}

std::function<Vector(double)> decay_perturbation(const Vector& direction,
                                                 double power) {
  require_input(direction.size() > 0 && all_finite(direction),
                "decay_perturbation: invalid direction");
  require_input(std::isfinite(power) && power > 2.0,
                "decay_perturbation: power must be > 2 so that t*||eps(t)|| "
                "is integrable");
  return [d = Vector(direction), power](double t) -> Vector {
    require_input(t > 0.0, "decay_perturbation: t must be > 0");
    return d / std::pow(t, power);
  };
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  require_input(out.good(), "write_trajectory_csv: cannot open '" + path + "'");
  out << "t,objective,feasibility,gap,t_xdot_norm,energy,beta\n";
  for (const TrajectoryPoint& pt : traj) {
    const SamplePoint& r = pt.sample;
    out << fmt_double(r.t) << ',' << fmt_double(r.objective) << ','
        << fmt_double(r.feasibility) << ',' << fmt_double(r.lagrangian_gap)
        << ',' << fmt_double(r.t_xdot_norm) << ',' << fmt_double(r.energy)
        << ',' << fmt_double(r.beta) << '\n';
  }
  require_input(out.good(),
                "write_trajectory_csv: write failed for '" + path + "'");
}

}  // namespace pdscale
