// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scalable train-gate-controller benchmark. A controller grants tunnel
// access to n trains; the i-th train needs n+1-i time units. The controller's
// locations carry no information about which trains have passed, so its
// strategy is genuinely imperfect-information. The target formula asks for a
// strategy pushing both of the first two trains through within a deadline.

#pragma once

#include <cstdint>
#include <string>

#include <pstctl/model.hpp>

namespace pstctl {

struct TgcConfig {
  std::uint32_t trains = 2;    // n >= 1; the formula needs n >= 2
  std::uint32_t deadline = 30; // time bound T of the benchmark formula
};

struct TgcOutput {
  std::string model_text;
  std::string formula_text;
};

// Deterministic model text for n trains; with_formula additionally yields the
// benchmark formula and requires n >= 2 (ContractError otherwise).
TgcOutput gen_tgc(const TgcConfig& config, bool with_formula = true);

// Convenience: the parsed network.
Network gen_tgc_network(std::uint32_t trains);

}  // namespace pstctl
