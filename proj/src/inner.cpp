// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/inner.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pdscale/errors.hpp"

namespace pdscale {

double spectral_norm(const Matrix& A, double tol) {
  require_input(A.size() > 0, "spectral_norm: empty matrix");
  require_input(all_finite(A), "spectral_norm: non-finite entries");
  require_input(std::isfinite(tol) && tol > 0.0,
                "spectral_norm: tol must be finite and > 0");
  if (A.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // Iterate on the smaller Gram matrix.
  const bool tall = A.rows() >= A.cols();
  const Index n = tall ? A.cols() : A.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double sigma = 0.0, prev = -1.0;
  for (int it = 0; it < 100000; ++it) {
    Vector w = tall ? Vector(A.transpose() * (A * v))
                    : Vector(A * (A.transpose() * v));
    const double nw = w.norm();
    if (nw <= 1e-300) {
      // Start vector (numerically) in the kernel; restart from a basis vector.
      v = Vector::Unit(n, it % n);
      prev = -1.0;
      continue;
    }
    sigma = std::sqrt(v.dot(w));  // ||A v|| for unit v
    v = w / nw;
    if (it >= 2 && std::abs(sigma - prev) <= tol * std::max(sigma, 1e-30))
      return sigma;
    prev = sigma;
  }
  return sigma;
}

double CompositeSubproblem::smooth_value(const Vector& x) const {
  double v = 0.0;
  if (prox_weight > 0.0) v += 0.5 * prox_weight * metric.quad(x - center);
  if (penalty_weight > 0.0)
    v += 0.5 * penalty_weight * (*A * x - target).squaredNorm();
  if (linear.size() > 0) v += linear.dot(x);
  if (smooth) v += smooth->value(x);
  return v;
}

Vector CompositeSubproblem::smooth_gradient(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  if (prox_weight > 0.0) g += prox_weight * metric.apply(x - center);
  if (penalty_weight > 0.0)
    g += penalty_weight * (A->transpose() * (*A * x - target));
  if (linear.size() > 0) g += linear;
  if (smooth) g += smooth->gradient(x);
  return g;
}

double CompositeSubproblem::value(const Vector& x) const {
  const double fv = prox_part->value(x);
  if (!std::isfinite(fv)) return fv;
  return fv + smooth_value(x);
}

double CompositeSubproblem::lipschitz() const {
  double l = 0.0;
  if (prox_weight > 0.0) l += prox_weight * metric.lambda_max();
  if (penalty_weight > 0.0) {
    require_input(A != nullptr,
                  "CompositeSubproblem: A required when penalty_weight > 0");
    const double ans = a_norm_sq >= 0.0
                           ? a_norm_sq
                           : [this] {
                               const double s = spectral_norm(*A);
                               return s * s;
                             }();
    l += penalty_weight * ans;
  }
  if (smooth) l += smooth->lipschitz;
  return l;
}

bool CompositeSubproblem::exactly_solvable() const {
  if (!prox_part) return false;
  const bool f1_quad = prox_part->is_zero || prox_part->quadratic.has_value();
  const bool f2_quad = !smooth || smooth->quadratic.has_value();
  return f1_quad && f2_quad;
}

Vector CompositeSubproblem::solve_exact() const {
  require_input(exactly_solvable(),
                "CompositeSubproblem::solve_exact: subproblem is not a "
                "quadratic program");
  const Index n = center.size() > 0
                      ? center.size()
                      : (linear.size() > 0 ? linear.size() : A->cols());
  Matrix h = Matrix::Zero(n, n);
  Vector rhs = Vector::Zero(n);
  if (prox_weight > 0.0) {
    switch (metric.kind()) {
      case Metric::Kind::Identity:
        h.diagonal().array() += prox_weight;
        break;
      case Metric::Kind::ScaledIdentity:
        h.diagonal().array() += prox_weight * metric.scale_value();
        break;
      case Metric::Kind::Diagonal:
        h.diagonal() += prox_weight * metric.diagonal_values();
        break;
      case Metric::Kind::Dense:
        h += prox_weight * metric.dense_matrix();
        break;
    }
    rhs += prox_weight * metric.apply(center);
  }
  if (penalty_weight > 0.0) {
    if (gram)
      h += penalty_weight * (*gram);
    else
      h += penalty_weight * (A->transpose() * (*A));
    rhs += penalty_weight * (A->transpose() * target);
  }
  if (linear.size() > 0) rhs -= linear;
  auto add_form = [&](const QuadraticForm& f) {
    if (f.Q.size() > 0) {
      require_input(f.Q.rows() == n,
                    "CompositeSubproblem::solve_exact: quadratic form "
                    "dimension mismatch");
      h += f.Q;
      rhs -= f.q;
    }
  };
  if (!prox_part->is_zero && prox_part->quadratic) add_form(*prox_part->quadratic);
  if (smooth && smooth->quadratic) add_form(*smooth->quadratic);
  Eigen::LDLT<Matrix> ldlt(h);
  require_numeric(ldlt.info() == Eigen::Success,
                  "CompositeSubproblem::solve_exact: factorization failed");
  Vector x = ldlt.solve(rhs);
  require_numeric(all_finite(x),
                  "CompositeSubproblem::solve_exact: non-finite solution");
  return x;
}

InnerStop InnerSchedule::at(int k) const {
  require_input(k >= 1, "InnerSchedule::at: k must be >= 1");
  InnerStop s;
  s.tol = decay == 0.0 ? tol0 : tol0 / std::pow(static_cast<double>(k), decay);
  s.max_iter = max_iter;
  s.eps_target = eps_target;
  return s;
}

InnerReport fista(const CompositeSubproblem& sub, const Vector& x0,
                  const InnerStop& stop) {
  require_input(sub.prox_part != nullptr, "fista: prox_part is required");
  require_input(stop.max_iter >= 1, "fista: max_iter must be >= 1");
  require_input(std::isfinite(stop.tol) && stop.tol >= 0.0,
                "fista: tol must be finite and >= 0");
  require_input(all_finite(x0), "fista: x0 has non-finite entries");

  const double lip = sub.lipschitz();
  require_input(std::isfinite(lip) && lip > 0.0,
                "fista: smooth part has no positive curvature bound (L = " +
                    fmt_double(lip) + ")");
  const double step = 1.0 / lip;

  Vector x = x0;
  Vector y = x0;
  double t = 1.0;

  Vector best_x = x0;
  double best_val = sub.value(x0);
  Vector best_y = x0;  // extrapolation point that produced best_x
  bool best_from_step = false;

  require_numeric(!std::isnan(best_val),
                  "fista: objective is NaN at the starting point");

  InnerReport rep;
  rep.x = x0;

  int j = 0;
  double rel = std::numeric_limits<double>::infinity();
  bool have_certificate = false;
  Vector cert_x;
  double cert_bound = 0.0;
  for (j = 1; j <= stop.max_iter; ++j) {
    const Vector grad_y = sub.smooth_gradient(y);
    Vector x_new = sub.prox_part->prox(y - step * grad_y, step);
    require_numeric(all_finite(x_new),
                    "fista: non-finite iterate at inner iteration " +
                        std::to_string(j));
    const double fval = sub.value(x_new);
    require_numeric(!std::isnan(fval),
                    "fista: NaN objective at inner iteration " +
                        std::to_string(j));
    rel = (x_new - x).squaredNorm() / std::max(x.norm(), 1.0);
    if (fval < best_val) {
      best_val = fval;
      best_x = x_new;
      best_y = y;
      best_from_step = true;
    }
    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const Vector y_new = x_new + ((t - 1.0) / t_new) * (x_new - x);
    const bool step_converged = rel <= stop.tol;
    bool done = step_converged;
    if (step_converged && stop.eps_target > 0.0) {
      // Certified mode: also require a small subgradient residual at the
      // freshly produced iterate.  The report must return this iterate, not
      // the best-objective one, so the returned (x, eps_bound) pair really
      // satisfies the certificate.
      const Vector e = lip * (y - x_new) + sub.smooth_gradient(x_new) - grad_y;
      done = e.norm() <= stop.eps_target;
      if (done) {
        have_certificate = true;
        cert_x = x_new;
        cert_bound = e.norm();
      }
    }
    x = x_new;
    y = y_new;
    t = t_new;
    if (done) break;
  }
  rep.iterations = std::min(j, stop.max_iter);
  rep.rel_change = rel;
  if (have_certificate) {
    rep.x = cert_x;
    rep.eps_bound = cert_bound;
    return rep;
  }
  rep.x = best_x;
  if (best_from_step) {
    const Vector e = lip * (best_y - best_x) + sub.smooth_gradient(best_x) -
                     sub.smooth_gradient(best_y);
    rep.eps_bound = e.norm();
  } else {
    // x0 was never improved: it is (numerically) a fixed point of the prox
    // gradient map; report the residual of the first step as its
    // stationarity measure.
    const Vector grad0 = sub.smooth_gradient(x0);
    const Vector x1 = sub.prox_part->prox(x0 - step * grad0, step);
    const Vector e = lip * (x0 - x1) + sub.smooth_gradient(x1) - grad0;
    rep.eps_bound = e.norm();
  }
  return rep;
}

}  // namespace pdscale
