// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pdscale {

// Bad dimensions, invalid parameter values, malformed input files.  Error
// messages name the offending operand or file location.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values, blow-up, or failed factorizations encountered mid-solve.
// Messages carry the iteration index or time at which the failure occurred.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InvalidInputError(msg);
}

inline void require_numeric(bool ok, const std::string& msg) {
  if (!ok) throw NumericalError(msg);
}

}  // namespace pdscale
