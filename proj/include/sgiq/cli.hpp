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
#include <string>
#include <vector>

#include "sgiq/sim.hpp"

namespace sgiq::cli {

inline constexpr char kVersion[] = "0.1.0";

struct GenerateOptions {
  std::string config_path;  // empty: defaults
  std::uint64_t seed = 1;
  ScenarioKind scenario = ScenarioKind::Sufficient;
  std::string out_dir;
};

// Writes scenario files: manifest.json, scenario.txt, ground.graph,
// snapshot_t0.graph, requests.txt. Byte-identical for identical inputs.
void cmd_generate(const GenerateOptions& opt);

struct RouteOptions {
  std::string scenario_dir;   // reads snapshot_t0.graph + requests.txt
  std::string graph_path;     // alternative: explicit files
  std::string requests_path;
  SolverKind solver = SolverKind::Linear;
  double noise_threshold = 0.6;
  GreedySortKey greedy_sort = GreedySortKey::Cost;
  std::string out_dir;
};

// Routes one round over a dumped snapshot; writes schedule.json and
// feasibility.txt (check_solution verdict and any violated rows).
void cmd_route(const RouteOptions& opt);

struct ExperimentOptions {
  std::string config_path;
  std::string out_dir;
  int rounds_override = 0;  // 0: take [sim] rounds from the config
};

// Runs the scenarios x solvers x seeds x thresholds grid from the config.
// Returns 0 when every cell completed; otherwise writes failures.json and
// returns nonzero.
int cmd_experiment(const ExperimentOptions& opt);

// Full command-line entry point (used by tools/sgiq.cpp).
int run_main(int argc, char** argv);

// FNV-1a over the canonical spec text plus run parameters.
std::string config_hash_hex(const std::string& canonical_text);

}  // namespace sgiq::cli
