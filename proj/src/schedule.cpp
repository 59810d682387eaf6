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

#include "sgiq/schedule.hpp"

#include <nlohmann/json.hpp>
#include <ostream>

namespace sgiq {

namespace {

// Arc index of hop (nodes[h] -> nodes[h+1]) over instance edge `e`.
int hop_arc(const IlpInstance& inst, EdgeId e, NodeId tail) {
  return inst.edges[e].u == tail ? 2 * e : 2 * e + 1;
}

}  // namespace

Solution schedule_to_solution(const IlpInstance& inst, const Schedule& schedule) {
  Solution sol;
  sol.values.assign(inst.num_vars(), 0.0);
  for (const ScheduledPath& p : schedule.paths) {
    if (p.multiplicity <= 0) {
      continue;
    }
    const int k = p.request_index;
    sol.values[inst.y_index(k)] += p.multiplicity;
    for (std::size_t h = 0; h < p.edges.size(); ++h) {
      const int arc = hop_arc(inst, p.edges[h], p.nodes[h]);
      sol.values[inst.x_index(k, arc)] += p.multiplicity;
      sol.values[inst.phi_index(k, arc)] +=
          static_cast<double>(p.multiplicity) * p.purifications[h];
    }
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      const int r = inst.repeater_position(p.nodes[i]);
      if (r >= 0) {
        sol.values[inst.alpha_index(k, r)] += p.multiplicity;
      }
    }
  }
  sol.objective_value = 0.0;
  for (int k = 0; k < inst.num_requests(); ++k) {
    sol.objective_value += sol.values[inst.y_index(k)];
  }
  sol.integral = true;
  sol.feasible = check_solution(inst, sol).feasible;
  return sol;
}

void write_schedule_json(std::ostream& os, const IlpInstance& inst,
                         const Schedule& schedule, const std::string& solver_name) {
  nlohmann::json j;
  j["solver"] = solver_name;
  j["noise_threshold"] = inst.noise_threshold;
  j["total_scheduled"] = schedule.total_scheduled;
  j["requests"] = nlohmann::json::array();
  for (int k = 0; k < inst.num_requests(); ++k) {
    const Request& req = inst.requests[k];
    nlohmann::json jr;
    jr["id"] = req.id;
    jr["source"] = req.source;
    jr["destination"] = req.destination;
    jr["message_size"] = req.message_size;
    jr["scheduled"] = schedule.scheduled[k];
    jr["residual"] = schedule.residual[k];
    jr["paths"] = nlohmann::json::array();
    for (const ScheduledPath& p : schedule.paths) {
      if (p.request_index != k || p.multiplicity <= 0) {
        continue;
      }
      nlohmann::json jp;
      jp["nodes"] = p.nodes;
      jp["edges"] = p.edges;
      jp["multiplicity"] = p.multiplicity;
      jp["purifications"] = p.purifications;
      jp["path_noise"] = p.path_noise;
      jr["paths"].push_back(std::move(jp));
    }
    j["requests"].push_back(std::move(jr));
  }
  os << j.dump(2) << "\n";
}

}  // namespace sgiq
