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

#include <span>
#include <string>
#include <vector>

#include "sgiq/schedule.hpp"
#include "sgiq/simplex.hpp"

namespace sgiq {

struct LpSolution {
  std::vector<double> values;  // structural variables, instance layout
  double objective = 0.0;
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> duals;
  double duality_gap = 0.0;
  long iterations = 0;
};

// Optimal solution of the LP relaxation (integrality dropped). Infeasible or
// unbounded outcomes cannot arise from build_ilp instances and surface as
// internal errors.
LpSolution solve_lp(const IlpInstance& inst, const SimplexOptions& options = {});

// One line per rounding decision, for debugging repair regressions.
struct RepairTrace {
  std::vector<std::string> lines;
};

// Deterministic rounding repair: flow-decomposes each request's fractional
// flow into simple paths, then assigns integer multiplicities in descending
// weight order under the remaining capacity, storage, demand, and noise
// budgets, adding purification on the noisiest ground edges first when the
// noise row needs it. The result always re-aggregates to an exactly feasible
// solution.
Schedule round_and_repair(const IlpInstance& inst, const LpSolution& frac,
                          RepairTrace* trace = nullptr);

// build_ilp -> solve_lp -> round_and_repair.
Schedule linear_route(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold, RepairTrace* trace = nullptr);

}  // namespace sgiq
