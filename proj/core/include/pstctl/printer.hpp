// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <pstctl/formula.hpp>
#include <pstctl/model.hpp>

namespace pstctl {

// Canonical text for a network; parse(print(parse(t))) == parse(t).
std::string print_model(const Network& network);

// Canonical text for a formula (surface or core).
std::string print_formula(const FormulaPtr& f);

std::string print_interval(const TimeInterval& i);
std::string print_bound(const ProbBound& b);

}  // namespace pstctl
