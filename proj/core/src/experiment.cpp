// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/experiment.hpp>

#include <atomic>
#include <ostream>
#include <sstream>
#include <thread>

#include <pstctl/errors.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/tgc.hpp>

namespace pstctl {

namespace {

std::string one_line_witness(const StrategySpace& space, const Network& net,
                             const JointStrategyIrP& theta) {
  std::string text = print_strategy(space, net, theta);
  std::string out;
  for (char c : text) {
    if (c == '\n') {
      if (!out.empty() && out.back() != ';') out += "; ";
    } else {
      out += c;
    }
  }
  while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
  return out;
}

ExperimentRow run_cell(std::uint32_t n, std::uint32_t T, const ExperimentConfig& config) {
  ExperimentRow row;
  row.trains = n;
  row.deadline = T;
  row.mode = config.check.mode;
  auto started = std::chrono::steady_clock::now();
  auto finish = [&] {
    row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  };

  if (n < 2) {
    row.holds = "n/a";
    finish();
    return row;
  }

  CheckConfig cfg = config.check;
  cfg.deadline = started + config.cell_timeout;
  try {
    TgcOutput tgc = gen_tgc({n, T});
    Network net = parse_model(tgc.model_text);
    DigitalMdp mdp = digitize(net, cfg.state_cap);
    MdpStats stats = reachable_stats(mdp);
    row.states = stats.states;
    row.moves = stats.moves;

    EvalResult result = eval(mdp, parse_formula(tgc.formula_text), cfg);
    const Verdict& v = result.verdicts.back().second;  // root coalition node
    row.holds = v.holds ? "true" : "false";
    row.p_min = v.p_min;
    row.soundness = to_string(v.soundness);
    if (v.witness) {
      StrategySpace space = strategy_space(net, {"C"});
      row.witness = one_line_witness(space, net, *v.witness);
    }
  } catch (const TimeoutError&) {
    row.holds = "timeout";
  } catch (const Error& e) {
    row.holds = "error";
    row.witness = e.what();
  }
  finish();
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.train_counts.empty() || config.deadlines.empty())
    throw ContractError("experiment needs at least one n and one T");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  for (auto n : config.train_counts)
    for (auto t : config.deadlines) cells.emplace_back(n, t);

  std::vector<ExperimentRow> rows(cells.size());
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      rows[i] = run_cell(cells[i].first, cells[i].second, config);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          rows[i] = run_cell(cells[i].first, cells[i].second, config);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& os) {
  os << "n,T,mode,holds,p_min_at_witness,witness,states,moves,wall_ms,soundness\n";
  for (const auto& r : rows) {
    os << r.trains << "," << r.deadline << "," << to_string(r.mode) << "," << r.holds << ",";
    if (r.p_min) os << *r.p_min;
    os << ",\"" << r.witness << "\"," << r.states << "," << r.moves << "," << r.wall_ms << ","
       << r.soundness << "\n";
  }
}

}  // namespace pstctl
