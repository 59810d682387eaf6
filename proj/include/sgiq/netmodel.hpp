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
#include <optional>
#include <string>
#include <vector>

#include "sgiq/orbit.hpp"
#include "sgiq/physics.hpp"
#include "sgiq/rng.hpp"

namespace sgiq {

using NodeId = int;
using EdgeId = int;

enum class NodeRole { User, Switch, Satellite };

// Fidelity assigned to a free-space link that is below the elevation
// threshold. Only present in graphs built with keep_sentinel_edges.
inline constexpr double kSentinelFidelity = 0.001;

struct GroundStation {
  NodeId id = -1;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  NodeRole role = NodeRole::User;  // User or Switch
  int memory_capacity = 0;         // C_r
  double noise_amendment = 0.0;    // sigma_r; zero for users

  Eigen::Vector3d position(double radius_m = orbit::kEarthRadiusM) const {
    return orbit::ground_position(latitude_deg, longitude_deg, radius_m);
  }
};

struct Satellite {
  NodeId id = -1;
  int plane_index = 0;
  int slot_index = 0;
  int memory_capacity = 0;
  double noise_amendment = 0.0;
};

enum class EdgeKind { Ground, FreeSpace };

struct Edge {
  EdgeId id = -1;
  NodeId u = -1;
  NodeId v = -1;
  EdgeKind kind = EdgeKind::Ground;
  int capacity = 0;                 // C_e, prepared entanglements this round
  double fidelity = 1.0;            // gamma_e
  double noise = 0.0;               // mu_e = ln(1/gamma_e), exactly
  double purification_effect = 0.0; // p_e
  int purification_count = 0;       // kappa_e

  NodeId other(NodeId n) const { return n == u ? v : u; }
};

// Fills noise/p_e/kappa_e from the edge's fidelity. Free-space edges get
// p_e = 0; ground edges whose fidelity cannot be pumped to the target keep
// kappa_e = 0 and p_e = 0.
void refresh_edge_noise(Edge& e, double target_fidelity = 0.99);

// Time-stamped snapshot of the whole network.
struct RoutingGraph {
  double timestamp_s = 0.0;
  std::vector<GroundStation> stations;  // id == index
  std::vector<Satellite> satellites;    // satellites visible in this snapshot
  std::vector<Edge> edges;              // id == index
  int num_node_ids = 0;                 // stations + all constellation slots
  std::optional<orbit::ConstellationConfig> constellation;

  bool is_station(NodeId n) const { return n >= 0 && n < static_cast<int>(stations.size()); }
  NodeRole role(NodeId n) const;
  double noise_amendment(NodeId n) const;
  int memory_capacity(NodeId n) const;
  bool is_repeater(NodeId n) const { return role(n) != NodeRole::User; }
  const Satellite* find_satellite(NodeId n) const;

  // Switches and satellites present in the snapshot, ascending by id.
  std::vector<NodeId> repeater_set() const;

  // adjacency()[n] lists (neighbor, edge id) pairs.
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adjacency() const;

  bool connected_over_usable_edges() const;
};

bool operator==(const GroundStation& a, const GroundStation& b);
bool operator==(const Satellite& a, const Satellite& b);
bool operator==(const Edge& a, const Edge& b);
bool operator==(const RoutingGraph& a, const RoutingGraph& b);

// ---------------------------------------------------------------------------
// Ground topology

struct GroundNetConfig {
  int num_stations = 50;
  int attachment_degree = 2;
  int num_switches = 10;
  double fidelity_min = 0.75;  // ground-link fidelity range
  double fidelity_max = 1.0;
  int edge_capacity_min = 4;
  int edge_capacity_max = 8;
  int memory_capacity_min = 8;
  int memory_capacity_max = 16;
  double switch_noise_amendment = 0.05;
  // Station placement box; defaults cover the full sphere (area-uniform).
  double latitude_min_deg = -90.0;
  double latitude_max_deg = 90.0;
  double longitude_min_deg = -180.0;
  double longitude_max_deg = 180.0;
};

struct GroundTopology {
  std::vector<GroundStation> stations;
  std::vector<Edge> edges;  // Ground edges, id == index
};

// Barabasi-Albert preferential attachment over `num_stations` nodes; the
// `num_switches` highest-degree nodes become switches. Deterministic in
// `seed`.
GroundTopology generate_ground_topology(const GroundNetConfig& cfg, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Free-space link model

// Maps a channel transmissivity to an entanglement fidelity. The paper keeps
// this relation external, so it is a seam: the default draws uniformly from a
// configured range per (satellite, station) pair, the affine variant is a
// deterministic function of eta.
class FidelityMapping {
 public:
  virtual ~FidelityMapping() = default;
  virtual double fidelity(double eta, NodeId satellite, NodeId station) const = 0;
  virtual std::string describe() const = 0;
};

class UniformFidelityMapping final : public FidelityMapping {
 public:
  UniformFidelityMapping(std::uint64_t seed, double lo = 0.9, double hi = 1.0)
      : seed_(seed), lo_(lo), hi_(hi) {}
  double fidelity(double eta, NodeId satellite, NodeId station) const override;
  std::string describe() const override;

 private:
  std::uint64_t seed_;
  double lo_, hi_;
};

class AffineFidelityMapping final : public FidelityMapping {
 public:
  AffineFidelityMapping(double lo, double hi, double eta_max)
      : lo_(lo), hi_(hi), eta_max_(eta_max) {}
  double fidelity(double eta, NodeId satellite, NodeId station) const override;
  std::string describe() const override;

 private:
  double lo_, hi_, eta_max_;
};

struct OpticsConfig {
  double transmitter_diameter_m = 0.1;
  double receiver_diameter_m = 1.0;
  double wavelength_m = 810e-9;
  double extinction_coeff_per_m = 5e-5;
  double atmosphere_height_m = 10'000.0;
};

struct FreeSpaceLinkModel {
  const FidelityMapping* mapping = nullptr;
  OpticsConfig optics;
  int capacity_min = 4;  // per-round prepared entanglements per visible pair
  int capacity_max = 8;
  std::uint64_t capacity_seed = 0;  // per-pair capacity stream
  bool keep_sentinel_edges = false;
};

// Builds the routing graph at time t: the static ground subgraph plus one
// free-space edge per (satellite, station) pair above the elevation
// threshold. Invisible pairs are dropped (or kept at the sentinel fidelity
// when keep_sentinel_edges is set), and satellites with no usable link are
// left out of the snapshot.
RoutingGraph snapshot(const orbit::ConstellationConfig& cfg,
                      const std::vector<Satellite>& satellites,
                      const GroundTopology& ground, double t_s,
                      const FreeSpaceLinkModel& link_model);

// ---------------------------------------------------------------------------
// Plain-text graph dump (one node or edge per line, 17 significant digits).

void write_graph(std::ostream& os, const RoutingGraph& g);
RoutingGraph read_graph(std::istream& is);

}  // namespace sgiq
