// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include "pdscale/common.hpp"

namespace pdscale {

// Positive semidefinite metric M used in the proximity terms 0.5*||x-y||_M^2.
// Identity and ScaledIdentity are dimension-free; Diagonal and Dense are tied
// to a fixed dimension.  Extreme eigenvalues are read directly for the
// structured kinds; for Dense they are estimated by (inverse) power iteration
// with a deterministic all-ones start.
class Metric {
 public:
  enum class Kind { Identity, ScaledIdentity, Diagonal, Dense };

  Metric() = default;  // identity

  static Metric identity();
  static Metric scaled_identity(double s);  // s >= 0
  static Metric diagonal(Vector d);         // entries >= 0
  static Metric dense(Matrix m);            // symmetric required

  Kind kind() const { return kind_; }
  double scale_value() const { return scale_; }
  const Vector& diagonal_values() const { return diag_; }
  const Matrix& dense_matrix() const { return mat_; }

  // M v
  Vector apply(const Vector& v) const;
  // v' M v
  double quad(const Vector& v) const;

  double lambda_max(double tol = 1e-10) const;
  double lambda_min(double tol = 1e-10) const;

  // Throws InvalidInputError when a fixed-dimension metric does not match n.
  void check_dim(Index n, const char* where) const;

  bool is_plain_identity() const { return kind_ == Kind::Identity; }

 private:
  Kind kind_ = Kind::Identity;
  double scale_ = 1.0;
  Vector diag_;
  Matrix mat_;
};

}  // namespace pdscale
