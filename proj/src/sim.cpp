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

#include "sgiq/sim.hpp"

#include <algorithm>
#include <cmath>

namespace sgiq {

void SimConfig::validate() const {
  if (num_rounds < 1) {
    throw ConfigError("num_rounds must be >= 1");
  }
  if (!(swap_success_prob >= 0.0 && swap_success_prob <= 1.0)) {
    throw ConfigError("swap_success_prob must lie in [0, 1]");
  }
  if (!(noise_threshold >= 0.0)) {
    throw ConfigError("noise_threshold must be non-negative");
  }
}

namespace {

double purified_fidelity(double gamma, int rounds) {
  double rho = gamma;
  for (int i = 0; i < rounds; ++i) {
    rho = physics::purify(Fidelity(rho), Fidelity(gamma)).value();
  }
  return rho;
}

}  // namespace

RoundOutcome execute_round(const RoutingGraph& g, const Schedule& schedule,
                           RngStream& rng, double swap_success_prob) {
  // Defensive feasibility: entanglement consumption (flow plus purification)
  // within each edge's supply, stored copies within each repeater's memory.
  std::vector<long> edge_used(g.edges.size(), 0);
  std::vector<long> node_used(g.num_node_ids, 0);
  for (const ScheduledPath& p : schedule.paths) {
    for (std::size_t h = 0; h < p.edges.size(); ++h) {
      edge_used[p.edges[h]] +=
          static_cast<long>(p.multiplicity) * (1 + p.purifications[h]);
    }
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (g.is_repeater(p.nodes[i])) {
        node_used[p.nodes[i]] += p.multiplicity;
      }
    }
  }
  for (const Edge& e : g.edges) {
    if (edge_used[e.id] > e.capacity) {
      throw InfeasibleScheduleError("schedule exceeds edge capacity");
    }
  }
  for (NodeId r : g.repeater_set()) {
    if (node_used[r] > g.memory_capacity(r)) {
      throw InfeasibleScheduleError("schedule exceeds repeater memory");
    }
  }

  RoundOutcome outcome;
  for (const ScheduledPath& p : schedule.paths) {
    int swaps = 0;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (g.is_repeater(p.nodes[i])) {
        ++swaps;
      }
    }
    double fidelity = 1.0;
    for (std::size_t h = 0; h < p.edges.size(); ++h) {
      fidelity *= purified_fidelity(g.edges[p.edges[h]].fidelity, p.purifications[h]);
    }
    for (int copy = 0; copy < p.multiplicity; ++copy) {
      MessageOutcome m;
      m.request_index = p.request_index;
      m.swaps = swaps;
      m.fidelity = fidelity;
      m.success = true;
      for (int s = 0; s < swaps; ++s) {
        // Draw every swap so stream consumption is outcome-independent.
        if (!rng.bernoulli(swap_success_prob)) {
          m.success = false;
        }
      }
      outcome.messages.push_back(m);
    }
  }
  return outcome;
}

RunResult run(const SimConfig& config, const ScenarioSpec& spec) {
  config.validate();
  const TrialSetup trial = build_trial(spec, config.scenario, config.seed);
  const int n_requests = static_cast<int>(trial.requests.size());

  RunResult result;
  result.config = config;
  result.requests = trial.requests;
  result.mapping_description =
      spec.mapping == "affine"
          ? AffineFidelityMapping(spec.fs_fidelity_min, spec.fs_fidelity_max,
                                  spec.affine_eta_max)
                .describe()
          : UniformFidelityMapping(0, spec.fs_fidelity_min, spec.fs_fidelity_max)
                .describe();
  result.latency_definition =
      "rounds from request arrival (round 1) to successful execution, inclusive";

  std::vector<int> residual(n_requests);
  long total_requested = 0;
  for (int k = 0; k < n_requests; ++k) {
    residual[k] = trial.requests[k].message_size;
    total_requested += residual[k];
  }
  // High-water mark of qubits ever scheduled, for the executed/failed/never
  // accounting.
  std::vector<long> touched(n_requests, 0);
  std::vector<long> executed(n_requests, 0);

  MetricsReport& metrics = result.metrics;
  metrics.total_requested = total_requested;
  double fidelity_sum = 0.0;
  long latency_sum = 0;

  RngStream exec_rng(config.seed, "execution");
  for (int round = 1; round <= config.num_rounds; ++round) {
    long outstanding = 0;
    for (int k = 0; k < n_requests; ++k) {
      outstanding += residual[k];
    }
    if (outstanding == 0) {
      break;
    }

    const RoutingGraph g = trial_snapshot(spec, trial, round);

    std::vector<Request> active;
    std::vector<int> active_to_request;
    for (int k = 0; k < n_requests; ++k) {
      if (residual[k] > 0) {
        Request r = trial.requests[k];
        r.message_size = residual[k];
        active_to_request.push_back(k);
        active.push_back(r);
      }
    }

    Schedule schedule;
    if (config.solver == SolverKind::Linear) {
      schedule = linear_route(g, active, config.noise_threshold);
    } else {
      schedule = greedy_route(g, active, config.noise_threshold, spec.greedy_sort);
    }

    RngStream round_rng = exec_rng.substream(static_cast<std::uint64_t>(round));
    const RoundOutcome outcome =
        execute_round(g, schedule, round_rng, config.swap_success_prob);

    RoundStats stats;
    stats.round = round;
    double round_fidelity = 0.0;
    std::vector<int> scheduled_now(n_requests, 0);
    const std::vector<long> executed_at_round_start = executed;
    for (const MessageOutcome& m : outcome.messages) {
      const int k = active_to_request[m.request_index];
      ++stats.scheduled;
      ++scheduled_now[k];
      if (m.success) {
        ++stats.executed;
        ++executed[k];
        --residual[k];
        fidelity_sum += m.fidelity;
        round_fidelity += m.fidelity;
        latency_sum += round;
      } else {
        ++stats.failed;
      }
    }
    // Distinct qubits ever attempted: retries reuse previously failed ones
    // before drawing fresh demand.
    for (int k = 0; k < n_requests; ++k) {
      touched[k] = std::max(touched[k], executed_at_round_start[k] + scheduled_now[k]);
    }
    stats.avg_fidelity = stats.executed > 0 ? round_fidelity / stats.executed : 0.0;
    stats.residual_qubits = 0;
    for (int k = 0; k < n_requests; ++k) {
      stats.residual_qubits += residual[k];
    }
    metrics.rounds.push_back(stats);
  }

  long total_executed = 0, total_touched = 0;
  for (int k = 0; k < n_requests; ++k) {
    total_executed += executed[k];
    total_touched += touched[k];
  }
  metrics.total_executed = total_executed;
  metrics.total_failed = total_touched - total_executed;
  metrics.total_never_scheduled = total_requested - total_touched;
  metrics.has_executed = total_executed > 0;
  metrics.throughput = total_requested == 0
                           ? 1.0
                           : static_cast<double>(total_executed) / total_requested;
  metrics.avg_fidelity = metrics.has_executed ? fidelity_sum / total_executed : 0.0;
  metrics.avg_latency =
      metrics.has_executed ? static_cast<double>(latency_sum) / total_executed : 0.0;
  return result;
}

SolverComparison compare_solvers(const SimConfig& base, const ScenarioSpec& spec,
                                 std::span<const std::uint64_t> seeds) {
  SolverComparison cmp;
  for (std::uint64_t seed : seeds) {
    SimConfig cfg = base;
    cfg.seed = seed;
    cfg.solver = SolverKind::Linear;
    cmp.linear_runs.push_back(run(cfg, spec));
    cfg.solver = SolverKind::Greedy;
    cmp.greedy_runs.push_back(run(cfg, spec));
  }
  auto mean_var = [](const std::vector<RunResult>& runs, double& mean, double& var) {
    if (runs.empty()) {
      mean = var = 0.0;
      return;
    }
    double s = 0.0;
    for (const RunResult& r : runs) {
      s += r.metrics.throughput;
    }
    mean = s / runs.size();
    double v = 0.0;
    for (const RunResult& r : runs) {
      v += (r.metrics.throughput - mean) * (r.metrics.throughput - mean);
    }
    var = v / runs.size();
  };
  mean_var(cmp.linear_runs, cmp.linear_mean_throughput, cmp.linear_throughput_variance);
  mean_var(cmp.greedy_runs, cmp.greedy_mean_throughput, cmp.greedy_throughput_variance);
  return cmp;
}

}  // namespace sgiq
