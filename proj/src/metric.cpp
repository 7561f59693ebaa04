// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/metric.hpp"

#include <cmath>
#include <string>

#include "pdscale/errors.hpp"

namespace pdscale {

namespace {

// Power iteration on a symmetric PSD matrix, deterministic all-ones start.
// Returns the largest eigenvalue estimate.
double power_iteration(const Matrix& m, double tol) {
  const Index n = m.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double prev = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Vector w = m * v;
    const double lam = v.dot(w);
    const double nw = w.norm();
    if (nw <= 1e-300) {
      // Start vector in (near) the kernel: restart from a basis vector.
      v = Vector::Unit(n, it % n);
      continue;
    }
    v = w / nw;
    if (it >= 2 && std::abs(lam - prev) <= tol * std::max(std::abs(lam), 1e-30))
      return lam;
    prev = lam;
  }
  return prev;
}

}  // namespace

Metric Metric::identity() { return Metric(); }

Metric Metric::scaled_identity(double s) {
  require_input(std::isfinite(s) && s >= 0.0,
                "Metric::scaled_identity: scale must be finite and >= 0, got " +
                    fmt_double(s));
  Metric m;
  m.kind_ = Kind::ScaledIdentity;
  m.scale_ = s;
  return m;
}

Metric Metric::diagonal(Vector d) {
  require_input(d.size() > 0, "Metric::diagonal: empty diagonal");
  require_input(all_finite(d) && d.minCoeff() >= 0.0,
                "Metric::diagonal: entries must be finite and >= 0");
  Metric m;
  m.kind_ = Kind::Diagonal;
  m.diag_ = std::move(d);
  return m;
}

Metric Metric::dense(Matrix mat) {
  require_input(mat.rows() == mat.cols() && mat.rows() > 0,
                "Metric::dense: matrix must be square and nonempty");
  require_input(all_finite(mat), "Metric::dense: non-finite entries");
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  require_input((mat - mat.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
                "Metric::dense: matrix is not symmetric");
  Metric m;
  m.kind_ = Kind::Dense;
  m.mat_ = std::move(mat);
  return m;
}

Vector Metric::apply(const Vector& v) const {
  switch (kind_) {
    case Kind::Identity:
      return v;
    case Kind::ScaledIdentity:
      return scale_ * v;
    case Kind::Diagonal:
      check_dim(v.size(), "Metric::apply");
      return diag_.cwiseProduct(v);
    case Kind::Dense:
      check_dim(v.size(), "Metric::apply");
      return mat_ * v;
  }
  return v;
}

double Metric::quad(const Vector& v) const {
  switch (kind_) {
    case Kind::Identity:
      return v.squaredNorm();
    case Kind::ScaledIdentity:
      return scale_ * v.squaredNorm();
    case Kind::Diagonal:
      check_dim(v.size(), "Metric::quad");
      return v.dot(diag_.cwiseProduct(v));
    case Kind::Dense:
      check_dim(v.size(), "Metric::quad");
      return v.dot(mat_ * v);
  }
  return 0.0;
}

double Metric::lambda_max(double tol) const {
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::ScaledIdentity:
      return scale_;
    case Kind::Diagonal:
      return diag_.maxCoeff();
    case Kind::Dense:
      return power_iteration(mat_, tol);
  }
  return 1.0;
}

double Metric::lambda_min(double tol) const {
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::ScaledIdentity:
      return scale_;
    case Kind::Diagonal:
      return diag_.minCoeff();
    case Kind::Dense: {
      // Inverse power iteration via Cholesky; a failed factorization means
      // the matrix is not positive definite, reported as 0.
      Eigen::LLT<Matrix> llt(mat_);
      if (llt.info() != Eigen::Success) return 0.0;
      const Index n = mat_.rows();
      Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
      double lam = 0.0, prev = -1.0;
      for (int it = 0; it < 100000; ++it) {
        Vector w = llt.solve(v);
        const double nw = w.norm();
        if (nw <= 1e-300) break;
        v = w / nw;
        lam = v.dot(mat_ * v);
        if (it >= 2 &&
            std::abs(lam - prev) <= tol * std::max(std::abs(lam), 1e-30))
          return lam;
        prev = lam;
      }
      return lam;
    }
  }
  return 1.0;
}

void Metric::check_dim(Index n, const char* where) const {
  if (kind_ == Kind::Diagonal)
    require_input(diag_.size() == n,
                  std::string(where) + ": diagonal metric has dimension " +
                      std::to_string(diag_.size()) + ", operand has " +
                      std::to_string(n));
  if (kind_ == Kind::Dense)
    require_input(mat_.rows() == n,
                  std::string(where) + ": dense metric has dimension " +
                      std::to_string(mat_.rows()) + ", operand has " +
                      std::to_string(n));
}

}  // namespace pdscale
