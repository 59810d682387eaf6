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

#include "sgiq/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace sgiq {

VariableIndex IlpInstance::decode(int flat) const {
  const int k_count = num_requests();
  const int a_count = num_arcs();
  const int block = 2 * a_count + num_repeaters();
  VariableIndex v;
  v.flat = flat;
  if (flat < k_count) {
    v.kind = VarKind::Y;
    v.request = flat;
    return v;
  }
  flat -= k_count;
  v.request = flat / block;
  const int offset = flat % block;
  if (offset < a_count) {
    v.kind = VarKind::X;
    v.arc = offset;
  } else if (offset < 2 * a_count) {
    v.kind = VarKind::Phi;
    v.arc = offset - a_count;
  } else {
    v.kind = VarKind::Alpha;
    v.repeater = offset - 2 * a_count;
  }
  return v;
}

std::string IlpInstance::variable_name(int flat) const {
  const VariableIndex v = decode(flat);
  std::ostringstream os;
  switch (v.kind) {
    case VarKind::Y:
      os << "Y_k" << v.request;
      break;
    case VarKind::X:
      os << "x_k" << v.request << "_e" << v.arc / 2 << "_d" << v.arc % 2;
      break;
    case VarKind::Phi:
      os << "phi_k" << v.request << "_e" << v.arc / 2 << "_d" << v.arc % 2;
      break;
    case VarKind::Alpha:
      os << "alpha_k" << v.request << "_r" << repeaters[v.repeater];
      break;
  }
  return os.str();
}

int IlpInstance::repeater_position(NodeId n) const {
  const auto it = std::lower_bound(repeaters.begin(), repeaters.end(), n);
  if (it == repeaters.end() || *it != n) {
    return -1;
  }
  return static_cast<int>(it - repeaters.begin());
}

IlpInstance build_ilp(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold) {
  if (!(noise_threshold >= 0.0)) {
    throw ConfigError("noise threshold must be non-negative");
  }
  IlpInstance inst;
  inst.requests.assign(requests.begin(), requests.end());
  inst.edges = g.edges;
  inst.repeaters = g.repeater_set();
  inst.noise_threshold = noise_threshold;
  inst.num_node_ids = g.num_node_ids;
  inst.repeater_sigma.reserve(inst.repeaters.size());
  inst.repeater_capacity.reserve(inst.repeaters.size());
  for (NodeId r : inst.repeaters) {
    inst.repeater_sigma.push_back(g.noise_amendment(r));
    inst.repeater_capacity.push_back(g.memory_capacity(r));
  }

  for (const Request& req : inst.requests) {
    if (req.source < 0 || req.source >= g.num_node_ids || req.destination < 0 ||
        req.destination >= g.num_node_ids) {
      throw ConfigError("request endpoint missing from the routing graph");
    }
    if (g.role(req.source) != NodeRole::User || g.role(req.destination) != NodeRole::User) {
      throw ConfigError("request endpoints must be user stations");
    }
    if (req.source == req.destination) {
      throw ConfigError("request source equals destination");
    }
    if (req.message_size < 1) {
      throw ConfigError("request message size must be >= 1");
    }
  }

  if (inst.requests.empty()) {
    return inst;  // no variables, no rows
  }

  const int K = inst.num_requests();
  const int A = inst.num_arcs();
  const int R = inst.num_repeaters();
  const int n_vars = inst.num_vars();

  inst.objective.assign(n_vars, 0.0);
  inst.lower.assign(n_vars, 0.0);
  inst.upper.assign(n_vars, kInfinity);
  for (int k = 0; k < K; ++k) {
    inst.objective[inst.y_index(k)] = 1.0;
    inst.upper[inst.y_index(k)] = inst.requests[k].message_size;
  }

  // Arcs around each node, split by direction.
  std::vector<std::vector<int>> arcs_in(g.num_node_ids), arcs_out(g.num_node_ids);
  for (int a = 0; a < A; ++a) {
    arcs_out[inst.arc_tail(a)].push_back(a);
    arcs_in[inst.arc_head(a)].push_back(a);
  }

  auto label = [](const char* fam, int i, int j = -1) {
    std::ostringstream os;
    os << fam << "(" << i;
    if (j >= 0) {
      os << "," << j;
    }
    os << ")";
    return os.str();
  };

  // Initialization / termination: no flow into a source, none out of a sink.
  for (int k = 0; k < K; ++k) {
    Row into_src{{}, Relation::Equal, 0.0, label("init", k)};
    for (int a : arcs_in[inst.requests[k].source]) {
      into_src.coeffs.emplace_back(inst.x_index(k, a), 1.0);
    }
    inst.rows.push_back(std::move(into_src));

    Row out_dst{{}, Relation::Equal, 0.0, label("term", k)};
    for (int a : arcs_out[inst.requests[k].destination]) {
      out_dst.coeffs.emplace_back(inst.x_index(k, a), 1.0);
    }
    inst.rows.push_back(std::move(out_dst));
  }

  // Source out-flow and sink in-flow both equal Y_k.
  for (int k = 0; k < K; ++k) {
    Row src{{}, Relation::Equal, 0.0, label("src", k)};
    for (int a : arcs_out[inst.requests[k].source]) {
      src.coeffs.emplace_back(inst.x_index(k, a), 1.0);
    }
    src.coeffs.emplace_back(inst.y_index(k), -1.0);
    inst.rows.push_back(std::move(src));

    Row dst{{}, Relation::Equal, 0.0, label("dst", k)};
    for (int a : arcs_in[inst.requests[k].destination]) {
      dst.coeffs.emplace_back(inst.x_index(k, a), 1.0);
    }
    dst.coeffs.emplace_back(inst.y_index(k), -1.0);
    inst.rows.push_back(std::move(dst));
  }

  // Conservation at repeaters: in-flow = out-flow = alpha.
  for (int k = 0; k < K; ++k) {
    for (int r = 0; r < R; ++r) {
      const NodeId node = inst.repeaters[r];
      Row in{{}, Relation::Equal, 0.0, label("cons_in", k, r)};
      for (int a : arcs_in[node]) {
        in.coeffs.emplace_back(inst.x_index(k, a), 1.0);
      }
      in.coeffs.emplace_back(inst.alpha_index(k, r), -1.0);
      inst.rows.push_back(std::move(in));

      Row out{{}, Relation::Equal, 0.0, label("cons_out", k, r)};
      for (int a : arcs_out[node]) {
        out.coeffs.emplace_back(inst.x_index(k, a), 1.0);
      }
      out.coeffs.emplace_back(inst.alpha_index(k, r), -1.0);
      inst.rows.push_back(std::move(out));
    }
  }

  // Users cannot swap, so flow may not pass through a user that is not the
  // request's own endpoint. Without these rows the program admits dangling
  // half-flows that terminate at bystander users and inflate Y.
  for (int k = 0; k < K; ++k) {
    for (const GroundStation& station : g.stations) {
      if (station.role != NodeRole::User || station.id == inst.requests[k].source ||
          station.id == inst.requests[k].destination) {
        continue;
      }
      Row block{{}, Relation::Equal, 0.0, label("no_relay", k, station.id)};
      for (int a : arcs_in[station.id]) {
        block.coeffs.emplace_back(inst.x_index(k, a), 1.0);
      }
      for (int a : arcs_out[station.id]) {
        block.coeffs.emplace_back(inst.x_index(k, a), 1.0);
      }
      inst.rows.push_back(std::move(block));
    }
  }

  // Edge capacity: both arcs of an edge share one prepared-entanglement pool.
  for (int e = 0; e < inst.num_edges(); ++e) {
    Row cap{{}, Relation::LessEqual, static_cast<double>(inst.edges[e].capacity),
            label("edge_cap", e)};
    for (int k = 0; k < K; ++k) {
      for (int a : {2 * e, 2 * e + 1}) {
        cap.coeffs.emplace_back(inst.x_index(k, a), 1.0);
        cap.coeffs.emplace_back(inst.phi_index(k, a), 1.0);
      }
    }
    inst.rows.push_back(std::move(cap));
  }

  // Purification cap: purification on an edge never outweighs the noise the
  // request accumulates there.
  for (int k = 0; k < K; ++k) {
    for (int e = 0; e < inst.num_edges(); ++e) {
      const Edge& edge = inst.edges[e];
      Row pur{{}, Relation::GreaterEqual, 0.0, label("pur_cap", k, e)};
      for (int a : {2 * e, 2 * e + 1}) {
        pur.coeffs.emplace_back(inst.x_index(k, a), edge.noise);
        pur.coeffs.emplace_back(inst.phi_index(k, a), -edge.purification_effect);
      }
      inst.rows.push_back(std::move(pur));
    }
  }

  // Repeater storage: in-flows only; purification inputs are consumed on the
  // spot and never stored.
  for (int r = 0; r < R; ++r) {
    Row cap{{}, Relation::LessEqual, static_cast<double>(inst.repeater_capacity[r]),
            label("rep_cap", r)};
    for (int k = 0; k < K; ++k) {
      for (int a : arcs_in[inst.repeaters[r]]) {
        cap.coeffs.emplace_back(inst.x_index(k, a), 1.0);
      }
    }
    inst.rows.push_back(std::move(cap));
  }

  // Noise budget per request, with N^th * Y_k moved to the left side.
  for (int k = 0; k < K; ++k) {
    Row noise{{}, Relation::LessEqual, 0.0, label("noise", k)};
    for (int e = 0; e < inst.num_edges(); ++e) {
      const Edge& edge = inst.edges[e];
      for (int a : {2 * e, 2 * e + 1}) {
        noise.coeffs.emplace_back(inst.x_index(k, a), edge.noise);
        noise.coeffs.emplace_back(inst.phi_index(k, a), -edge.purification_effect);
      }
    }
    for (int r = 0; r < R; ++r) {
      noise.coeffs.emplace_back(inst.alpha_index(k, r), inst.repeater_sigma[r]);
    }
    noise.coeffs.emplace_back(inst.y_index(k), -noise_threshold);
    inst.rows.push_back(std::move(noise));
  }

  return inst;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kFractionalTol = 1e-7;
constexpr double kGrid = 1e9;  // integral checks run on a 1e-9 lattice

bool is_integral_vector(const std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x - std::round(x)) > 1e-9) {
      return false;
    }
  }
  return true;
}

}  // namespace

FeasibilityReport check_solution(const IlpInstance& inst, const Solution& sol) {
  if (static_cast<int>(sol.values.size()) != inst.num_vars()) {
    throw DimensionMismatchError("solution length does not match instance");
  }
  FeasibilityReport report;
  report.slack.reserve(inst.rows.size());
  const bool exact = is_integral_vector(sol.values);

  for (std::size_t i = 0; i < inst.rows.size(); ++i) {
    const Row& row = inst.rows[i];
    double slack = 0.0;
    bool ok = true;
    if (exact) {
      long long lhs = 0;
      for (auto [var, coeff] : row.coeffs) {
        lhs += std::llround(coeff * std::round(sol.values[var]) * kGrid);
      }
      const long long rhs = std::llround(row.rhs * kGrid);
      long long s = 0;
      switch (row.relation) {
        case Relation::LessEqual:
          s = rhs - lhs;
          break;
        case Relation::GreaterEqual:
          s = lhs - rhs;
          break;
        case Relation::Equal:
          s = -std::abs(lhs - rhs);
          break;
      }
      slack = static_cast<double>(s) / kGrid;
      ok = s >= 0;
    } else {
      double lhs = 0.0;
      for (auto [var, coeff] : row.coeffs) {
        lhs += coeff * sol.values[var];
      }
      switch (row.relation) {
        case Relation::LessEqual:
          slack = row.rhs - lhs;
          break;
        case Relation::GreaterEqual:
          slack = lhs - row.rhs;
          break;
        case Relation::Equal:
          slack = -std::abs(lhs - row.rhs);
          break;
      }
      ok = slack >= -kFractionalTol;
    }
    report.slack.push_back(slack);
    if (!ok) {
      report.violated_rows.push_back(static_cast<int>(i));
    }
  }

  // Bounds participate in feasibility even though they are not rows.
  bool bounds_ok = true;
  for (int v = 0; v < inst.num_vars(); ++v) {
    const double tol = exact ? 1e-9 : kFractionalTol;
    if (sol.values[v] < inst.lower[v] - tol || sol.values[v] > inst.upper[v] + tol) {
      bounds_ok = false;
      break;
    }
  }
  report.feasible = bounds_ok && report.violated_rows.empty();
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct RowState {
  double assigned = 0.0;  // contribution of assigned variables
  double min_rem = 0.0;   // extremes over unassigned variables
  double max_rem = 0.0;
};

// Finite upper bounds for enumeration, tightened by interval propagation on
// the instance rows (capacity rows bound x and phi; conservation equalities
// bound alpha).
std::vector<double> enumeration_bounds(const IlpInstance& inst) {
  const int n = inst.num_vars();
  std::vector<double> ub = inst.upper;
  for (int pass = 0; pass < 4; ++pass) {
    for (const Row& row : inst.rows) {
      double min_sum = 0.0, max_sum = 0.0;
      bool max_inf = false;
      for (auto [var, coeff] : row.coeffs) {
        if (coeff > 0.0) {
          if (std::isinf(ub[var])) {
            max_inf = true;
          } else {
            max_sum += coeff * ub[var];
          }
        } else if (coeff < 0.0) {
          if (std::isinf(ub[var])) {
            min_sum = -kInfinity;
          } else {
            min_sum += coeff * ub[var];
          }
        }
      }
      for (auto [var, coeff] : row.coeffs) {
        if (coeff == 0.0) {
          continue;
        }
        // Σ_{w != var} over the remaining support.
        double mn = min_sum, mx = max_sum;
        bool mx_inf = max_inf;
        if (coeff > 0.0) {
          if (std::isinf(ub[var])) {
            mx_inf = false;  // cannot subtract inf; recompute below
            mx = 0.0;
            for (auto [w, c] : row.coeffs) {
              if (w == var || c <= 0.0) {
                continue;
              }
              if (std::isinf(ub[w])) {
                mx_inf = true;
                break;
              }
              mx += c * ub[w];
            }
          } else {
            mx -= coeff * ub[var];
          }
        } else {
          if (std::isinf(ub[var])) {
            mn = 0.0;
            for (auto [w, c] : row.coeffs) {
              if (w == var || c >= 0.0) {
                continue;
              }
              mn = std::isinf(ub[w]) ? -kInfinity : mn + c * ub[w];
              if (std::isinf(mn)) {
                break;
              }
            }
          } else {
            mn -= coeff * ub[var];
          }
        }
        double cap = kInfinity;
        if (row.relation == Relation::LessEqual && coeff > 0.0) {
          cap = (row.rhs - mn) / coeff;
        } else if (row.relation == Relation::Equal) {
          if (coeff > 0.0) {
            cap = (row.rhs - mn) / coeff;
          } else if (!mx_inf) {
            cap = (row.rhs - mx) / coeff;
          }
        } else if (row.relation == Relation::GreaterEqual && coeff < 0.0 && !mx_inf) {
          cap = (row.rhs - mx) / coeff;
        }
        if (cap < ub[var]) {
          ub[var] = std::floor(cap + 1e-9);
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (std::isinf(ub[v])) {
      throw TooLargeError("variable bound not finite; cannot enumerate");
    }
    ub[v] = std::max(ub[v], 0.0);
  }
  return ub;
}

}  // namespace

Solution brute_force_optimum(const IlpInstance& inst, std::int64_t work_limit) {
  const int n = inst.num_vars();
  Solution best;
  best.values.assign(n, 0.0);
  best.integral = true;

  if (n == 0) {
    best.feasible = true;
    best.objective_value = 0.0;
    return best;
  }

  const std::vector<double> ub = enumeration_bounds(inst);

  // Rows used for pruning: the instance rows plus implied surrogate rows
  // that let capacity exhaustion around a request endpoint cut the search
  // at the Y block. Every unit of Y_k occupies one entanglement on an edge
  // incident to s_k and one incident to d_k, so the endpoint load of a node
  // is bounded by its incident edge supply. Surrogates never change the
  // feasible set.
  std::vector<Row> rows = inst.rows;
  {
    std::vector<double> incident_capacity(inst.num_node_ids, 0.0);
    for (const Edge& e : inst.edges) {
      incident_capacity[e.u] += e.capacity;
      incident_capacity[e.v] += e.capacity;
    }
    std::vector<std::vector<std::pair<int, double>>> load(inst.num_node_ids);
    for (int k = 0; k < inst.num_requests(); ++k) {
      load[inst.requests[k].source].emplace_back(inst.y_index(k), 1.0);
      load[inst.requests[k].destination].emplace_back(inst.y_index(k), 1.0);
    }
    for (NodeId node = 0; node < inst.num_node_ids; ++node) {
      if (!load[node].empty()) {
        rows.push_back({load[node], Relation::LessEqual, incident_capacity[node],
                        "surrogate_endpoint_load"});
      }
    }
  }

  // Column view of the rows.
  std::vector<std::vector<std::pair<int, double>>> columns(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto [var, coeff] : rows[i].coeffs) {
      columns[var].emplace_back(static_cast<int>(i), coeff);
    }
  }

  std::vector<RowState> state(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto [var, coeff] : rows[i].coeffs) {
      (coeff >= 0.0 ? state[i].max_rem : state[i].min_rem) += coeff * ub[var];
    }
  }

  // Remaining objective potential after each prefix (objective is >= 0).
  std::vector<double> obj_tail(n + 1, 0.0);
  for (int v = n - 1; v >= 0; --v) {
    obj_tail[v] = obj_tail[v + 1] + inst.objective[v] * ub[v];
  }

  constexpr double kTol = 1e-9;
  std::vector<double> value(n, 0.0);
  std::int64_t work = 0;
  bool found = false;
  double best_obj = -1.0;
  double current_obj = 0.0;

  auto row_viable = [&](int row_id) {
    const RowState& s = state[row_id];
    const Row& row = rows[row_id];
    switch (row.relation) {
      case Relation::LessEqual:
        return s.assigned + s.min_rem <= row.rhs + kTol;
      case Relation::GreaterEqual:
        return s.assigned + s.max_rem >= row.rhs - kTol;
      case Relation::Equal:
        return s.assigned + s.min_rem <= row.rhs + kTol &&
               s.assigned + s.max_rem >= row.rhs - kTol;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int var) -> void {
    if (var == n) {
      if (current_obj > best_obj + kTol) {
        best_obj = current_obj;
        best.values = value;
        found = true;
      }
      return;
    }
    if (found && current_obj + obj_tail[var] <= best_obj + kTol) {
      return;  // cannot beat the incumbent
    }
    const int hi = static_cast<int>(ub[var]);
    for (int val = 0; val <= hi; ++val) {
      if (++work > work_limit) {
        throw TooLargeError("brute force enumeration exceeded its work budget");
      }
      value[var] = val;
      bool viable = true;
      for (auto [row_id, coeff] : columns[var]) {
        RowState& s = state[row_id];
        s.assigned += coeff * val;
        (coeff >= 0.0 ? s.max_rem : s.min_rem) -= coeff * ub[var];
      }
      for (auto [row_id, coeff] : columns[var]) {
        if (!row_viable(row_id)) {
          viable = false;
          break;
        }
      }
      if (viable) {
        current_obj += inst.objective[var] * val;
        self(self, var + 1);
        current_obj -= inst.objective[var] * val;
      }
      for (auto [row_id, coeff] : columns[var]) {
        RowState& s = state[row_id];
        s.assigned -= coeff * val;
        (coeff >= 0.0 ? s.max_rem : s.min_rem) += coeff * ub[var];
      }
    }
    value[var] = 0.0;
  };
  dfs(dfs, 0);

  if (!found) {
    // The all-zero point satisfies every row family build_ilp emits, so an
    // empty search means the instance rows are contradictory.
    best.feasible = false;
    best.objective_value = 0.0;
    return best;
  }
  best.objective_value = best_obj;
  best.feasible = true;
  return best;
}

// ---------------------------------------------------------------------------

namespace {

std::string coeff17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", std::abs(v));
  return buf;
}

void write_linear_terms(std::ostream& os, const IlpInstance& inst,
                        const std::vector<std::pair<int, double>>& terms) {
  for (auto [var, coeff] : terms) {
    if (coeff == 0.0) {
      continue;
    }
    os << (coeff < 0.0 ? " - " : " + ") << coeff17(coeff) << " "
       << inst.variable_name(var);
  }
}

}  // namespace

void write_lp_format(std::ostream& os, const IlpInstance& inst) {
  os << "Maximize\n obj:";
  std::vector<std::pair<int, double>> obj;
  for (int v = 0; v < inst.num_vars(); ++v) {
    if (inst.objective[v] != 0.0) {
      obj.emplace_back(v, inst.objective[v]);
    }
  }
  write_linear_terms(os, inst, obj);
  if (obj.empty()) {
    os << " 0 Y_none";
  }
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < inst.rows.size(); ++i) {
    const Row& row = inst.rows[i];
    os << " " << (row.label.empty() ? "r" + std::to_string(i) : row.label) << ":";
    write_linear_terms(os, inst, row.coeffs);
    if (row.coeffs.empty()) {
      os << " 0 Y_none";
    }
    switch (row.relation) {
      case Relation::LessEqual:
        os << " <= ";
        break;
      case Relation::Equal:
        os << " = ";
        break;
      case Relation::GreaterEqual:
        os << " >= ";
        break;
    }
    os << coeff17(std::abs(row.rhs)) << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < inst.num_vars(); ++v) {
    if (!std::isinf(inst.upper[v])) {
      os << " 0 <= " << inst.variable_name(v) << " <= " << coeff17(inst.upper[v]) << "\n";
    }
  }
  os << "Generals\n";
  for (int v = 0; v < inst.num_vars(); ++v) {
    os << " " << inst.variable_name(v);
    if ((v + 1) % 8 == 0) {
      os << "\n";
    }
  }
  os << "\nEnd\n";
}

}  // namespace sgiq
