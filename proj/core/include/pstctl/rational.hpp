// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>

namespace pstctl {

// Exact rational arithmetic for all model data (branch probabilities,
// thresholds, strategy weights). Floating point is confined to the numeric
// value-iteration engine.
using Rational = mpq_class;

// Parses "3", "3/4" or a decimal literal like "0.25" into an exact rational.
// Throws std::invalid_argument on malformed input.
Rational rational_from_string(const std::string& text);

// Canonical form: "p/q" in lowest terms, or just "p" when q == 1.
std::string rational_to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace pstctl
