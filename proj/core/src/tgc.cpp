// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/tgc.hpp>

#include <sstream>

#include <pstctl/errors.hpp>
#include <pstctl/parser.hpp>

namespace pstctl {

// The controller's idle location is urgent (clock z with invariant z <= 0,
// reset on re-entry): a grant is issued the instant the controller is free.
// Without urgency the adversarial scheduler could stall the whole system by
// ticking forever, and no strategy at all would meet a deadline.
//
// Trains latch `passed_i` in a dedicated location and stay grantable from
// there, so grants are always re-enabled when the controller is idle.
TgcOutput gen_tgc(const TgcConfig& config, bool with_formula) {
  if (config.trains < 1) throw ContractError("the benchmark needs at least one train");
  if (with_formula && config.trains < 2)
    throw ContractError("the benchmark formula requires n >= 2 trains");

  const std::uint32_t n = config.trains;
  std::ostringstream os;
  os << "// train-gate-controller, " << n << " train" << (n > 1 ? "s" : "") << "\n";
  os << "agent C {\n";
  os << "  clocks z;\n";
  os << "  init idle;\n";
  os << "  loc idle [z <= 0] {\n";
  os << "    protocol ";
  for (std::uint32_t i = 1; i <= n; ++i) os << (i > 1 ? ", " : "") << "grant_" << i;
  os << ";\n";
  for (std::uint32_t i = 1; i <= n; ++i)
    os << "    on grant_" << i << " goto { 1: -> busy; }\n";
  os << "  }\n";
  os << "  loc busy {\n";
  os << "    protocol ";
  for (std::uint32_t i = 1; i <= n; ++i) os << (i > 1 ? ", " : "") << "done_" << i;
  os << ";\n";
  for (std::uint32_t i = 1; i <= n; ++i)
    os << "    on done_" << i << " goto { 1: reset {z} -> idle; }\n";
  os << "  }\n";
  os << "}\n";

  for (std::uint32_t i = 1; i <= n; ++i) {
    const std::uint32_t duration = n + 1 - i;  // i-th train's tunnel transit time
    os << "agent train_" << i << " {\n";
    os << "  clocks x_" << i << ";\n";
    os << "  init wait;\n";
    os << "  loc wait {\n";
    os << "    protocol grant_" << i << ";\n";
    os << "    on grant_" << i << " goto { 1: reset {x_" << i << "} -> tunnel; }\n";
    os << "  }\n";
    os << "  loc tunnel [x_" << i << " <= " << duration << "] {\n";
    os << "    protocol done_" << i << ";\n";
    os << "    on done_" << i << " when x_" << i << " = " << duration
       << " goto { 1: -> passed; }\n";
    os << "  }\n";
    os << "  loc passed {\n";
    os << "    labels passed_" << i << ";\n";
    os << "    protocol grant_" << i << ";\n";
    os << "    on grant_" << i << " goto { 1: reset {x_" << i << "} -> tunnel; }\n";
    os << "  }\n";
    os << "}\n";
  }

  TgcOutput out;
  out.model_text = os.str();
  if (with_formula) {
    std::ostringstream fs;
    fs << "<<C>> P>=0.8 F[0," << config.deadline << "] (passed_1 & passed_2)";
    out.formula_text = fs.str();
  }
  return out;
}

Network gen_tgc_network(std::uint32_t trains) {
  return parse_model(gen_tgc({trains, 0}, /*with_formula=*/false).model_text);
}

}  // namespace pstctl
