// Copyright 2026 The SGIQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sgiq/linear.hpp"
#include "sgiq/scenario.hpp"

namespace sgiq {

struct SimConfig {
  int num_rounds = 8;
  double swap_success_prob = 0.95;
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::Linear;
  double noise_threshold = 0.6;
  ScenarioKind scenario = ScenarioKind::Sufficient;

  void validate() const;
};

struct MessageOutcome {
  int request_index = -1;  // position in the schedule's request list
  bool success = false;
  double fidelity = 0.0;   // product of post-purification edge fidelities
  int swaps = 0;           // interior repeaters on the path
};

struct RoundOutcome {
  std::vector<MessageOutcome> messages;
};

// Executes one round of a feasible schedule: every scheduled copy succeeds
// iff all of its swaps succeed; its fidelity is the product of the path's
// edge fidelities after the scheduled per-copy purification. Throws
// InfeasibleScheduleError when the schedule overruns the graph's capacities.
RoundOutcome execute_round(const RoutingGraph& g, const Schedule& schedule,
                           RngStream& rng, double swap_success_prob);

struct RoundStats {
  int round = 0;
  int scheduled = 0;
  int executed = 0;
  int failed = 0;
  double avg_fidelity = 0.0;  // over this round's executed messages
  int residual_qubits = 0;    // after the round
};

struct MetricsReport {
  double throughput = 1.0;     // executed / requested (1.0 when nothing asked)
  double avg_fidelity = 0.0;   // over executed messages; meaningful iff has_executed
  double avg_latency = 0.0;    // rounds from arrival to success, arrival = round 1
  bool has_executed = false;
  long total_requested = 0;
  long total_executed = 0;
  long total_failed = 0;         // attempted at least once, never delivered
  long total_never_scheduled = 0;
  std::vector<RoundStats> rounds;
};

struct RunResult {
  SimConfig config;
  MetricsReport metrics;
  std::vector<Request> requests;
  std::string mapping_description;
  std::string latency_definition;
};

// Round loop: snapshot -> solve -> execute -> carry residual demand.
// Deterministic per (config, spec).
RunResult run(const SimConfig& config, const ScenarioSpec& spec);

struct SolverComparison {
  std::vector<RunResult> linear_runs;  // parallel to seeds
  std::vector<RunResult> greedy_runs;
  double linear_mean_throughput = 0.0;
  double greedy_mean_throughput = 0.0;
  double linear_throughput_variance = 0.0;
  double greedy_throughput_variance = 0.0;
};

// Runs both solvers on identical seeded scenarios.
SolverComparison compare_solvers(const SimConfig& base, const ScenarioSpec& spec,
                                 std::span<const std::uint64_t> seeds);

}  // namespace sgiq
