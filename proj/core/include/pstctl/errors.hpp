// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pstctl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error with source position (1-based line/column).
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Ill-formed model detected after parsing (validation errors, invariant
// violations during construction).
struct ModelError : Error {
  using Error::Error;
};

// A configurable cap was exceeded (state space, enumeration, oracle size).
struct ResourceError : Error {
  using Error::Error;
};

// Iterative numeric solver failed to converge; carries the last residual.
struct NumericError : Error {
  NumericError(const std::string& msg, double residual)
      : Error(msg + " (residual " + std::to_string(residual) + ")"), residual(residual) {}
  double residual;
};

// A caller broke an API contract (e.g. strategy missing a needed block).
struct ContractError : Error {
  using Error::Error;
};

struct TimeoutError : Error {
  using Error::Error;
};

}  // namespace pstctl
