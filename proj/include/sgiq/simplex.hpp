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

#include <Eigen/Core>
#include <vector>

#include "sgiq/formulation.hpp"

namespace sgiq {

// max c'x subject to row relations and box bounds lo <= x <= up.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  double gap_tol = 1e-6;  // relative duality-gap verification at the optimum
  int refactor_interval = 128;
  long max_iterations = 200'000;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // structural variables only
  double objective = 0.0;
  std::vector<double> duals;   // one multiplier per row
  double duality_gap = 0.0;
  long iterations = 0;
};

// Bounded-variable revised simplex (dense basis inverse, sparse columns).
// Pricing is most-negative reduced cost with lowest-index tie-breaks,
// falling back to Bland's rule after a degenerate stall, so runs are
// deterministic and cycling-free. Requires the all-slack basis to be
// feasible (every equality row has rhs 0 and every inequality rhs >= 0 once
// normalized), which holds for instances produced by build_ilp.
LpResult solve_lp_problem(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace sgiq
