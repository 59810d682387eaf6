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
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sgiq/netmodel.hpp"

namespace sgiq {

// A communication demand [(s_k, d_k), m_k] between two user stations.
struct Request {
  int id = 0;
  NodeId source = -1;
  NodeId destination = -1;
  int message_size = 1;  // m_k
};

enum class VarKind { Y, X, Phi, Alpha };

struct VariableIndex {
  VarKind kind = VarKind::Y;
  int request = -1;   // k
  int arc = -1;       // X/Phi: directed arc index
  int repeater = -1;  // Alpha: index into IlpInstance::repeaters
  int flat = -1;
};

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (flat variable, coefficient)
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string label;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// The routing integer program over a snapshot. Each undirected physical edge
// is expanded into two opposed arcs (arc 2e goes u->v, arc 2e+1 goes v->u);
// x and phi live on arcs while capacity is shared per edge. All variables are
// integral. Layout: the Y block first, then one contiguous (x, phi, alpha)
// block per request, which keeps every per-request row's support local.
// Carries enough of the snapshot (edges, repeaters, requests) for solution
// repair and reporting to work from the instance alone.
struct IlpInstance {
  std::vector<Request> requests;
  std::vector<Edge> edges;             // undirected, index == position
  std::vector<NodeId> repeaters;       // ascending node ids
  std::vector<double> repeater_sigma;  // parallel to repeaters
  std::vector<int> repeater_capacity;  // parallel to repeaters
  double noise_threshold = 0.0;
  int num_node_ids = 0;

  std::vector<double> objective;  // 1 on each Y_k
  std::vector<double> lower;      // all zero
  std::vector<double> upper;      // m_k on Y_k, +inf elsewhere
  std::vector<Row> rows;

  int num_requests() const { return static_cast<int>(requests.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_arcs() const { return 2 * num_edges(); }
  int num_repeaters() const { return static_cast<int>(repeaters.size()); }
  int num_vars() const {
    return num_requests() * (1 + 2 * num_arcs() + num_repeaters());
  }

  int request_block(int k) const {
    return num_requests() + k * (2 * num_arcs() + num_repeaters());
  }
  int y_index(int k) const { return k; }
  int x_index(int k, int arc) const { return request_block(k) + arc; }
  int phi_index(int k, int arc) const {
    return request_block(k) + num_arcs() + arc;
  }
  int alpha_index(int k, int r) const {
    return request_block(k) + 2 * num_arcs() + r;
  }
  VariableIndex decode(int flat) const;
  std::string variable_name(int flat) const;

  NodeId arc_tail(int arc) const {
    const Edge& e = edges[arc / 2];
    return arc % 2 == 0 ? e.u : e.v;
  }
  NodeId arc_head(int arc) const {
    const Edge& e = edges[arc / 2];
    return arc % 2 == 0 ? e.v : e.u;
  }
  int repeater_position(NodeId n) const;  // -1 when n is not a repeater
};

// Assembles the integer program for one round. Throws ConfigError when a
// request endpoint is missing from the graph or is not a user.
IlpInstance build_ilp(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold);

struct Solution {
  std::vector<double> values;
  double objective_value = 0.0;
  bool feasible = false;
  bool integral = false;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<double> slack;        // per row; negative = violated
  std::vector<int> violated_rows;   // row indices
};

// Evaluates every row. Integral solutions are checked in integer arithmetic
// on a 1e-9 grid; fractional ones with tolerance 1e-7.
FeasibilityReport check_solution(const IlpInstance& inst, const Solution& sol);

// Exhaustive search for the integral optimum, used as the test oracle for
// both solvers. Enumerates variables in flat order (hence lexicographic
// tie-breaking) with interval-arithmetic pruning that discards only
// infeasible or non-improving subtrees. `work_limit` bounds the number of
// assignments explored; beyond it the search aborts with TooLargeError.
Solution brute_force_optimum(const IlpInstance& inst,
                             std::int64_t work_limit = 10'000'000);

// LP-format export (objective, rows, bounds, integrality), 17 significant
// digits, for cross-validation with third-party solvers.
void write_lp_format(std::ostream& os, const IlpInstance& inst);

}  // namespace sgiq
