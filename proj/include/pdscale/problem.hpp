// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "pdscale/common.hpp"

namespace pdscale {

// f(x) = 0.5 x'Qx + q'x + c0 with Q symmetric PSD.  Carried alongside an
// oracle when the function is a known quadratic, which lets solvers replace
// inner iterations by one dense factorization.
struct QuadraticForm {
  Matrix Q;
  Vector q;
  double c0 = 0.0;

  Index dim() const { return q.size(); }
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

// Tag describing a separable prox-friendly function, used to build oracles
// and to serialize problem instances.
//   Zero       : f = 0
//   L1         : f = ||x||_1
//   ElasticNet : f = ||x||_1 + 0.5*tau*||x||^2
//   Nonneg     : f = indicator of the nonnegative orthant
struct SeparableSpec {
  enum class Kind { Zero, L1, ElasticNet, Nonneg };
  Kind kind = Kind::Zero;
  double tau = 0.0;
};

// Possibly nonsmooth convex term accessed through its value and its proximal
// map prox(x, gamma) = argmin_u f(u) + ||u - x||^2 / (2*gamma).  Values may
// be +infinity (indicator functions).
struct ProxOracle {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;
  bool is_zero = false;                       // f == 0, prox = identity
  std::optional<SeparableSpec> separable;     // set by the factory kinds
  std::optional<QuadraticForm> quadratic;     // set when f is a known quadratic
};

// Smooth convex term with Lipschitz gradient.
struct SmoothOracle {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz = 0.0;
  std::optional<QuadraticForm> quadratic;
};

// Makes a SmoothOracle backed by a quadratic form (validates symmetry and
// caches the spectral norm as the Lipschitz constant when asked).
SmoothOracle make_quadratic_smooth(QuadraticForm form);
SmoothOracle make_zero_smooth();

// The affine constraint A x = b.
struct LinearConstraint {
  Matrix A;
  Vector b;

  LinearConstraint(Matrix a, Vector rhs);

  Index m() const { return A.rows(); }
  Index n() const { return A.cols(); }
  Vector residual(const Vector& x) const;  // A x - b
};

// Objective: either a plain f with a prox oracle (f2 absent), or a composite
// f1 + f2 with f1 prox-friendly and f2 smooth.
struct Objective {
  ProxOracle f1;
  std::optional<SmoothOracle> f2;

  bool composite() const { return f2.has_value(); }
  double value(const Vector& x) const;
};

struct ProblemSpec {
  LinearConstraint constraint;
  Objective objective;

  static ProblemSpec prox_problem(LinearConstraint c, ProxOracle f);
  static ProblemSpec composite_problem(LinearConstraint c, ProxOracle f1,
                                       SmoothOracle f2);

  Index m() const { return constraint.m(); }
  Index n() const { return constraint.n(); }
  double objective_value(const Vector& x) const { return objective.value(x); }

  // Non-null iff the whole objective is smooth (f1 == 0 with f2 present);
  // required by the continuous-time simulator.
  const SmoothOracle* smooth_full() const;
};

// Claimed saddle point used by energy diagnostics and gap columns.
struct SaddleCertificate {
  Vector x_star;
  Vector lambda_star;
};

// f(x) + <lam, A x - b>.  +infinity propagates from indicator objectives.
double lagrangian(const ProblemSpec& p, const Vector& x, const Vector& lam);

struct KktResidual {
  double primal = 0.0;  // ||A x - b||
  double dual = 0.0;    // prox gradient-mapping residual at probe step gamma
};

// Stationarity measured through the prox oracle:
//   dual = ||x - prox_{f1}(x - gamma*(grad_f2(x) + A'lam), gamma)|| / gamma
// (grad_f2 absent for plain prox objectives).
KktResidual kkt_residual(const ProblemSpec& p, const Vector& x,
                         const Vector& lam, double gamma_probe = 1.0);

// True when both KKT residuals of the certificate are <= tol.
bool check_certificate(const ProblemSpec& p, const SaddleCertificate& cert,
                       double tol, double gamma_probe = 1.0);

// Text (de)serialization.  Only factory-built objectives round-trip: prox
// objectives tagged with a SeparableSpec, and composite objectives whose f1
// is tagged and whose f2 is a known quadratic.  Field order is documented in
// README.md.
void save_problem(const ProblemSpec& p, const std::string& path);
ProblemSpec load_problem(const std::string& path);

// Optional saddle-point certificate files for diagnostics runs.
void save_certificate(const SaddleCertificate& cert, const std::string& path);
SaddleCertificate load_certificate(const std::string& path);

}  // namespace pdscale
