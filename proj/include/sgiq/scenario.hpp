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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sgiq/greedy.hpp"
#include "sgiq/netmodel.hpp"

namespace sgiq {

enum class SolverKind { Linear, Greedy };
enum class ScenarioKind { Abundant, Sufficient, Insufficient };

const char* to_string(SolverKind k);
const char* to_string(ScenarioKind k);
SolverKind solver_from_string(const std::string& s);
ScenarioKind scenario_from_string(const std::string& s);

// Capacity regimes for the three evaluation scenarios.
struct CapacityRanges {
  int edge_min = 4;
  int edge_max = 8;
  int repeater_min = 8;
  int repeater_max = 16;
};

CapacityRanges capacity_ranges(ScenarioKind kind);

// Everything needed to build one experiment network, minus the per-scenario
// capacity ranges and the per-run seed.
struct ScenarioSpec {
  int num_stations = 50;
  int attachment_degree = 2;
  int num_switches = 10;
  double ground_fidelity_min = 0.75;
  double ground_fidelity_max = 1.0;
  double latitude_min_deg = -90.0;
  double latitude_max_deg = 90.0;
  double longitude_min_deg = -180.0;
  double longitude_max_deg = 180.0;

  orbit::ConstellationConfig constellation{53.0, 12, 3, 1, 550'000.0, 20.0};
  double repeater_noise = 0.05;  // sigma for switches and satellites
  OpticsConfig optics;

  std::string mapping = "uniform";  // or "affine"
  double fs_fidelity_min = 0.9;
  double fs_fidelity_max = 1.0;
  double affine_eta_max = 0.04;

  int num_requests = 8;
  int message_min = 1;
  int message_max = 3;

  double round_duration_s = 0.0;  // 0: orbital period / 32
  bool keep_sentinel_edges = false;
  GreedySortKey greedy_sort = GreedySortKey::Cost;

  double effective_round_duration_s() const;
};

// Reproducible per-trial network state. All randomness under one root seed,
// split into named streams.
struct TrialSetup {
  GroundTopology ground;
  std::vector<Satellite> satellites;
  std::vector<Request> requests;
  std::uint64_t fs_capacity_seed = 0;
  std::uint64_t fs_fidelity_seed = 0;
  CapacityRanges ranges;
};

TrialSetup build_trial(const ScenarioSpec& spec, ScenarioKind kind, std::uint64_t seed);

// Snapshot for a given round (rounds are 1-based; round 1 is t = 0).
RoutingGraph trial_snapshot(const ScenarioSpec& spec, const TrialSetup& trial, int round);

// ---------------------------------------------------------------------------
// Key/value configuration file with [section] headers.

class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse(std::istream& is, const std::string& origin = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key)
      const;  // whitespace- or comma-separated

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
};

ScenarioSpec scenario_spec_from_ini(const IniFile& ini);

// Default configuration with inline documentation for every key.
std::string default_config_text();

// Canonical serialization of a spec; the run manifest hashes this.
std::string canonical_spec_text(const ScenarioSpec& spec);

// Request list files: one `request <id> <source> <destination> <qubits>` per line.
void write_requests(std::ostream& os, std::span<const Request> requests);
std::vector<Request> read_requests(std::istream& is);

}  // namespace sgiq
