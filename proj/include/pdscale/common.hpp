// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <Eigen/Dense>

#include <cstdio>
#include <string>

namespace pdscale {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

// Shortest round-trippable decimal form of a double; used for CSV output and
// error messages so that reruns produce byte-identical files.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pdscale
