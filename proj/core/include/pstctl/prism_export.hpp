// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <pstctl/model.hpp>
#include <pstctl/strategy.hpp>

namespace pstctl {

// Renders the network as a PRISM-language MDP under the digital-clocks
// encoding (integer clock variables advanced by a synchronized [tick]
// command, guarded by the location invariants). Coalition agents select
// actions through an auxiliary probabilistic step weighted by one unknown
// `const double p_<agent>_<location>_<action>` per available action, for
// cross-validation with an external parametric engine. Passing `specialize`
// replaces the unknown constants by the strategy's literal weights.
std::string export_prism(const Network& network, const std::vector<std::string>& coalition,
                         const std::optional<JointStrategyIrP>& specialize = std::nullopt);

}  // namespace pstctl
