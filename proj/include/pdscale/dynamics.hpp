// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
//
// Simulator for the inertial primal-dual dynamic that the discrete solvers
// sample:
//
//   x''(t) + (alpha/t) x'(t) = -beta(t) (grad f(x(t)) + A' lam(t)) + eps(t)
//   lam'(t)                  = t beta(t) (A (x(t) + delta t x'(t)) - b)
//
// with scaling beta(t) > 0 and an optional integrable perturbation eps(t).
// The objective must be differentiable; nonsmooth terms are rejected.
#ifndef PDSCALE_DYNAMICS_HPP
#define PDSCALE_DYNAMICS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdscale/common.hpp"
#include "pdscale/problem.hpp"

namespace pdscale {

// beta(t) = mu * t^exponent. The derivative needed by the hypothesis check is
// then t beta'(t) = exponent * beta(t).
struct PowerLawScale {
  double mu = 1.0;
  double exponent = 0.0;
};

struct DynamicState {
  double t = 0.0;
  Vector x;
  Vector v;  // x'(t)
  Vector lam;
};

struct DynamicConfig {
  double alpha = 3.0;
  double delta = 0.5;

  // Scaling: the power law is used unless a custom pair (beta, beta') is set.
  PowerLawScale power_law{};
  std::function<double(double)> beta_fn;      // t -> beta(t)
  std::function<double(double)> beta_dot_fn;  // t -> beta'(t); required with beta_fn

  // Perturbation; empty means eps identically zero.
  std::function<Vector(double)> eps_fn;

  double t0 = 1.0;
  double t_end = 100.0;

  // Fixed step size; 0 selects the default min(1e-3, t0/100).
  double dt = 0.0;
  // Step-doubling adaptivity around the same one-step method.
  bool adaptive = false;
  double adaptive_tol = 1e-8;

  // Number of geometrically spaced sample times in [t0, t_end].
  int samples = 200;
  double blowup_guard = 1e12;

  std::optional<SaddleCertificate> certificate;

  double beta(double t) const;
  double beta_dot(double t) const;
  double step_size() const;

  void validate(const ProblemSpec& p) const;
  // Non-fatal flags: the scaling-growth hypothesis t beta'(t) <= (1/delta - 2)
  // beta(t) sampled on the output grid, and for power laws the window
  // 0 <= exponent <= 1/delta - 2 <= alpha - 3 behind the t^-(exponent+2) rates.
  std::vector<std::string> hypothesis_notes() const;
};

struct DynamicDerivative {
  Vector dx;
  Vector dv;
  Vector dlam;
};

// First-order form of the dynamic at state s.
DynamicDerivative dynamics_rhs(const ProblemSpec& p, const DynamicState& s,
                               const DynamicConfig& cfg);

// One diagnostics row per sample time (the trajectory CSV schema).
struct SamplePoint {
  double t = 0.0;
  double objective = 0.0;
  double feasibility = 0.0;
  double lagrangian_gap = 0.0;  // NaN without a certificate
  double t_xdot_norm = 0.0;
  double energy = 0.0;  // NaN without a certificate
  double beta = 0.0;
};

struct TrajectoryPoint {
  DynamicState state;
  SamplePoint sample;
};

using Trajectory = std::vector<TrajectoryPoint>;

// Integrates the dynamic from init.t = t0 to t_end with the classical
// fourth-order one-step method, landing exactly on the geometric sample grid.
// Throws NumericalError when any state norm exceeds blowup_guard, naming the
// last valid time.
Trajectory integrate(const ProblemSpec& p, const DynamicConfig& cfg,
                     const DynamicState& init);

// Lyapunov function certifying the continuous-time rates:
//   E(t) = t^2 beta(t) (L(x, lam*) - L(x*, lam*))
//        + 1/2 || (1/delta)(x - x*) + t x' ||^2
//        + (alpha delta - delta - 1)/(2 delta^2) ||x - x*||^2
//        + 1/(2 delta) ||lam - lam*||^2
double dynamic_energy(const ProblemSpec& p, const DynamicState& s,
                      const DynamicConfig& cfg, const SaddleCertificate& cert);

// Preset perturbation eps(t) = direction / t^power with power > 2, which keeps
// the integral of t ||eps(t)|| finite as the perturbed-energy argument needs.
std::function<Vector(double)> decay_perturbation(const Vector& direction,
                                                 double power);

// Columns: t,objective,feasibility,gap,t_xdot_norm,energy,beta
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace pdscale

#endif  // PDSCALE_DYNAMICS_HPP
