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

#include <iosfwd>
#include <vector>

#include "sgiq/formulation.hpp"

namespace sgiq {

// One routed path with an integer multiplicity. `purifications[h]` is the
// number of purification rounds applied on hop h for each individual copy.
struct ScheduledPath {
  int request_index = -1;
  std::vector<NodeId> nodes;       // source .. destination
  std::vector<EdgeId> edges;       // instance edge ids, one per hop
  int multiplicity = 0;
  std::vector<int> purifications;  // per hop, per copy
  double path_noise = 0.0;         // per copy, after purification (metadata)
};

// Solver-agnostic schedule consumed by the simulator. The greedy solver
// leaves all purification counts at zero.
struct Schedule {
  std::vector<ScheduledPath> paths;
  std::vector<int> scheduled;  // per request
  std::vector<int> residual;   // per request, m_k - scheduled
  int total_scheduled = 0;
};

// Re-aggregates a schedule into the instance's (Y, x, phi, alpha) variables
// so check_solution can validate it row by row.
Solution schedule_to_solution(const IlpInstance& inst, const Schedule& schedule);

// JSON export; the key layout is part of the stable CLI interface.
void write_schedule_json(std::ostream& os, const IlpInstance& inst,
                         const Schedule& schedule, const std::string& solver_name);

}  // namespace sgiq
