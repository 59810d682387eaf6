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

#include "sgiq/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgiq {

namespace {

constexpr double kFlowEps = 1e-7;
// Copies must clear the noise row by this margin so the exact grid check in
// check_solution cannot flip on term rounding.
constexpr double kNoiseMargin = 2e-8;

struct FracPath {
  int request_index = -1;
  std::vector<NodeId> nodes;
  std::vector<int> arcs;
  double weight = 0.0;
};

// First simple tail->goal path through arcs with positive residual flow,
// exploring arcs in index order.
bool find_flow_path(const IlpInstance& inst,
                    const std::vector<std::vector<int>>& arcs_out,
                    const std::vector<double>& flow, NodeId source, NodeId goal,
                    std::vector<int>& arcs_found) {
  std::vector<bool> visited(inst.num_node_ids, false);
  std::vector<int> arc_path;
  auto dfs = [&](auto&& self, NodeId node) -> bool {
    if (node == goal) {
      return true;
    }
    visited[node] = true;
    for (int a : arcs_out[node]) {
      if (flow[a] <= kFlowEps) {
        continue;
      }
      const NodeId next = inst.arc_head(a);
      if (visited[next]) {
        continue;
      }
      arc_path.push_back(a);
      if (self(self, next)) {
        return true;
      }
      arc_path.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, source)) {
    return false;
  }
  arcs_found = arc_path;
  return true;
}

// Decompose request k's fractional arc flow into simple source->destination
// paths. Residual flow that forms no such path (cycles, dangling half-flows)
// is discarded.
std::vector<FracPath> decompose_flow(const IlpInstance& inst, int k,
                                     const std::vector<double>& values) {
  std::vector<double> flow(inst.num_arcs(), 0.0);
  for (int a = 0; a < inst.num_arcs(); ++a) {
    flow[a] = values[inst.x_index(k, a)];
  }
  std::vector<std::vector<int>> arcs_out(inst.num_node_ids);
  for (int a = 0; a < inst.num_arcs(); ++a) {
    arcs_out[inst.arc_tail(a)].push_back(a);
  }

  std::vector<FracPath> paths;
  const NodeId s = inst.requests[k].source;
  const NodeId d = inst.requests[k].destination;
  std::vector<int> arcs;
  while (static_cast<int>(paths.size()) < inst.num_arcs() &&
         find_flow_path(inst, arcs_out, flow, s, d, arcs)) {
    double bottleneck = kInfinity;
    for (int a : arcs) {
      bottleneck = std::min(bottleneck, flow[a]);
    }
    FracPath p;
    p.request_index = k;
    p.arcs = arcs;
    p.weight = bottleneck;
    p.nodes.push_back(s);
    for (int a : arcs) {
      p.nodes.push_back(inst.arc_head(a));
    }
    for (int a : arcs) {
      flow[a] -= bottleneck;
      if (flow[a] < kFlowEps) {
        flow[a] = 0.0;
      }
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

struct RepairState {
  std::vector<int> edge_remaining;          // per edge
  std::vector<int> repeater_remaining;      // per repeater position
  std::vector<int> residual;                // per request
  std::vector<double> noise_sum;            // per request: sum mu*x + sigma*alpha
  std::vector<double> reduction_sum;        // per request: sum p_e * phi
  std::vector<int> y;                       // per request
  std::vector<std::vector<int>> x_on_edge;  // [k][e] copies crossing edge
  std::vector<std::vector<int>> phi_on_edge;
};

}  // namespace

LpSolution solve_lp(const IlpInstance& inst, const SimplexOptions& options) {
  LpProblem problem;
  problem.num_vars = inst.num_vars();
  problem.objective = inst.objective;
  problem.lower = inst.lower;
  problem.upper = inst.upper;
  problem.rows = inst.rows;
  LpResult res = solve_lp_problem(problem, options);
  if (res.status != LpStatus::Optimal) {
    // Zero flow is always feasible and the objective is bounded by sum(m_k),
    // so anything else indicates solver breakage.
    throw Error("LP relaxation did not reach an optimum");
  }
  LpSolution out;
  out.values = std::move(res.values);
  out.objective = res.objective;
  out.status = res.status;
  out.duals = std::move(res.duals);
  out.duality_gap = res.duality_gap;
  out.iterations = res.iterations;
  return out;
}

Schedule round_and_repair(const IlpInstance& inst, const LpSolution& frac,
                          RepairTrace* trace) {
  if (frac.status != LpStatus::Optimal) {
    throw Error("round_and_repair requires an optimal fractional solution");
  }
  if (static_cast<int>(frac.values.size()) != inst.num_vars()) {
    throw DimensionMismatchError("fractional solution does not match instance");
  }
  const int K = inst.num_requests();
  const int E = inst.num_edges();

  std::vector<FracPath> paths;
  for (int k = 0; k < K; ++k) {
    auto per_request = decompose_flow(inst, k, frac.values);
    paths.insert(paths.end(), per_request.begin(), per_request.end());
  }
  // Heaviest fractional paths first; lexicographic arc ids break ties.
  std::stable_sort(paths.begin(), paths.end(), [](const FracPath& a, const FracPath& b) {
    if (a.weight != b.weight) {
      return a.weight > b.weight;
    }
    if (a.arcs != b.arcs) {
      return a.arcs < b.arcs;
    }
    return a.request_index < b.request_index;
  });

  RepairState st;
  st.edge_remaining.resize(E);
  for (int e = 0; e < E; ++e) {
    st.edge_remaining[e] = inst.edges[e].capacity;
  }
  st.repeater_remaining = inst.repeater_capacity;
  st.residual.resize(K);
  for (int k = 0; k < K; ++k) {
    st.residual[k] = inst.requests[k].message_size;
  }
  st.noise_sum.assign(K, 0.0);
  st.reduction_sum.assign(K, 0.0);
  st.y.assign(K, 0);
  st.x_on_edge.assign(K, std::vector<int>(E, 0));
  st.phi_on_edge.assign(K, std::vector<int>(E, 0));

  auto log_line = [&](const std::string& line) {
    if (trace != nullptr) {
      trace->lines.push_back(line);
    }
  };

  Schedule schedule;
  schedule.scheduled.assign(K, 0);

  auto emit_copy = [&](ScheduledPath&& c) {
    for (ScheduledPath& existing : schedule.paths) {
      if (existing.request_index == c.request_index && existing.nodes == c.nodes &&
          existing.edges == c.edges && existing.purifications == c.purifications) {
        existing.multiplicity += 1;
        return;
      }
    }
    schedule.paths.push_back(std::move(c));
  };

  // Assigns as many copies of `p` as the remaining budgets allow; returns the
  // number placed.
  auto try_assign = [&](const FracPath& p) -> int {
    const int k = p.request_index;
    std::vector<EdgeId> path_edges;
    path_edges.reserve(p.arcs.size());
    for (int a : p.arcs) {
      path_edges.push_back(a / 2);
    }
    std::vector<int> interior_reps;
    double sigma_per_copy = 0.0;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      const int r = inst.repeater_position(p.nodes[i]);
      if (r >= 0) {
        interior_reps.push_back(r);
        sigma_per_copy += inst.repeater_sigma[r];
      }
    }
    double mu_per_copy = 0.0;
    for (EdgeId e : path_edges) {
      mu_per_copy += inst.edges[e].noise;
    }

    // Ground edges of the path, noisiest first, for purification placement.
    std::vector<EdgeId> pur_edges;
    for (EdgeId e : path_edges) {
      if (inst.edges[e].purification_effect > 0.0) {
        pur_edges.push_back(e);
      }
    }
    std::sort(pur_edges.begin(), pur_edges.end(), [&](EdgeId a, EdgeId b) {
      if (inst.edges[a].noise != inst.edges[b].noise) {
        return inst.edges[a].noise > inst.edges[b].noise;
      }
      return a < b;
    });

    int placed = 0;
    while (st.residual[k] > 0) {
      bool fits = true;
      for (EdgeId e : path_edges) {
        if (st.edge_remaining[e] < 1) {
          fits = false;
          break;
        }
      }
      if (fits) {
        for (int r : interior_reps) {
          if (st.repeater_remaining[r] < 1) {
            fits = false;
            break;
          }
        }
      }
      if (!fits) {
        break;
      }

      // Tentatively place the copy, then cover any noise-row deficit with
      // purification on the noisiest ground edges.
      for (EdgeId e : path_edges) {
        --st.edge_remaining[e];
        ++st.x_on_edge[k][e];
      }
      const double new_noise = st.noise_sum[k] + mu_per_copy + sigma_per_copy;
      const int new_y = st.y[k] + 1;
      double deficit =
          new_noise - st.reduction_sum[k] - inst.noise_threshold * new_y;
      std::vector<int> purchased(E, 0);
      double reduction_added = 0.0;
      for (EdgeId e : pur_edges) {
        if (deficit <= -kNoiseMargin) {
          break;
        }
        const Edge& edge = inst.edges[e];
        const int row_g_cap =
            edge.purification_count * st.x_on_edge[k][e] - st.phi_on_edge[k][e];
        int avail = std::min(st.edge_remaining[e], row_g_cap);
        while (avail > 0 && deficit > -kNoiseMargin) {
          --st.edge_remaining[e];
          ++st.phi_on_edge[k][e];
          ++purchased[e];
          --avail;
          deficit -= edge.purification_effect;
          reduction_added += edge.purification_effect;
        }
      }

      if (deficit > -kNoiseMargin) {
        // Purification cannot bring this copy under the noise budget: undo
        // the copy and drop the rest of the path for this sweep.
        for (EdgeId e : path_edges) {
          ++st.edge_remaining[e];
          --st.x_on_edge[k][e];
        }
        for (int e = 0; e < E; ++e) {
          if (purchased[e] > 0) {
            st.edge_remaining[e] += purchased[e];
            st.phi_on_edge[k][e] -= purchased[e];
          }
        }
        std::ostringstream os;
        os << "drop request=" << k << " path_weight=" << p.weight
           << " reason=noise_budget deficit=" << deficit;
        log_line(os.str());
        break;
      }

      for (int r : interior_reps) {
        --st.repeater_remaining[r];
      }
      st.noise_sum[k] = new_noise;
      st.reduction_sum[k] += reduction_added;
      st.y[k] = new_y;
      --st.residual[k];
      ++placed;

      ScheduledPath copy;
      copy.request_index = k;
      copy.nodes = p.nodes;
      copy.edges = path_edges;
      copy.multiplicity = 1;
      copy.purifications.resize(path_edges.size(), 0);
      double copy_reduction = 0.0;
      for (std::size_t h = 0; h < path_edges.size(); ++h) {
        copy.purifications[h] = purchased[path_edges[h]];
        copy_reduction +=
            purchased[path_edges[h]] * inst.edges[path_edges[h]].purification_effect;
      }
      copy.path_noise = mu_per_copy + sigma_per_copy - copy_reduction;
      emit_copy(std::move(copy));
    }
    if (placed > 0) {
      std::ostringstream os;
      os << "assign request=" << k << " copies=" << placed
         << " path_weight=" << p.weight;
      log_line(os.str());
    }
    return placed;
  };

  // A copy rejected on noise can become affordable once cheaper copies of
  // the same request raise its budget (the noise row is per-request, not
  // per-path), so sweep until a full pass places nothing new.
  for (bool progress = true; progress;) {
    progress = false;
    for (const FracPath& p : paths) {
      if (try_assign(p) > 0) {
        progress = true;
      }
    }
  }

  schedule.residual = st.residual;
  schedule.total_scheduled = 0;
  for (int k = 0; k < K; ++k) {
    schedule.scheduled[k] = inst.requests[k].message_size - st.residual[k];
    schedule.total_scheduled += schedule.scheduled[k];
  }

  const Solution aggregated = schedule_to_solution(inst, schedule);
  if (!aggregated.feasible) {
    throw Error("round_and_repair produced an infeasible schedule");
  }
  return schedule;
}

Schedule linear_route(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold, RepairTrace* trace) {
  const IlpInstance inst = build_ilp(g, requests, noise_threshold);
  const LpSolution frac = solve_lp(inst);
  return round_and_repair(inst, frac, trace);
}

}  // namespace sgiq
