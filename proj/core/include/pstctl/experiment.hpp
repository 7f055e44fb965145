// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <pstctl/checker.hpp>

namespace pstctl {

struct ExperimentConfig {
  std::vector<std::uint32_t> train_counts;
  std::vector<std::uint32_t> deadlines;  // formula time bounds T
  CheckConfig check;                     // mode, grid, caps
  std::chrono::seconds cell_timeout{600};
  unsigned jobs = 1;
};

struct ExperimentRow {
  std::uint32_t trains = 0;
  std::uint32_t deadline = 0;
  SynthMode mode = SynthMode::IrP;
  std::string holds;  // "true", "false", "n/a", "timeout", "error"
  std::optional<double> p_min;
  std::string witness;  // single line, block entries joined by "; "
  std::uint64_t states = 0;
  std::uint64_t moves = 0;
  std::int64_t wall_ms = 0;
  std::string soundness;
};

// Runs the benchmark over the cartesian product of train counts and
// deadlines, rows in (n, T) lexicographic order. Cells exceeding the timeout
// report holds=timeout; n=1 cells report holds=n/a (the formula needs two
// trains). With jobs > 1, cells run in parallel; row order is unaffected.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// CSV with header n,T,mode,holds,p_min_at_witness,witness,states,moves,wall_ms,soundness
void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& os);

}  // namespace pstctl
