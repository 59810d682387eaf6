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

#include "sgiq/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace sgiq {

void refresh_edge_noise(Edge& e, double target_fidelity) {
  const Fidelity gamma(e.fidelity);
  e.noise = physics::noise_of(gamma).value();
  if (e.kind == EdgeKind::FreeSpace) {
    e.purification_count = 0;
    e.purification_effect = 0.0;
    return;
  }
  try {
    e.purification_count = physics::purification_count(gamma, Fidelity(target_fidelity));
  } catch (const UnreachableError&) {
    e.purification_count = 0;  // edge cannot be pumped to the target
  }
  e.purification_effect =
      e.purification_count >= 1
          ? physics::purification_effect(Noise(e.noise), e.purification_count).value()
          : 0.0;
}

NodeRole RoutingGraph::role(NodeId n) const {
  if (is_station(n)) {
    return stations[n].role;
  }
  return NodeRole::Satellite;
}

double RoutingGraph::noise_amendment(NodeId n) const {
  if (is_station(n)) {
    return stations[n].noise_amendment;
  }
  const Satellite* sat = find_satellite(n);
  return sat ? sat->noise_amendment : 0.0;
}

int RoutingGraph::memory_capacity(NodeId n) const {
  if (is_station(n)) {
    return stations[n].memory_capacity;
  }
  const Satellite* sat = find_satellite(n);
  return sat ? sat->memory_capacity : 0;
}

const Satellite* RoutingGraph::find_satellite(NodeId n) const {
  for (const Satellite& s : satellites) {
    if (s.id == n) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<NodeId> RoutingGraph::repeater_set() const {
  std::vector<NodeId> out;
  for (const GroundStation& s : stations) {
    if (s.role == NodeRole::Switch) {
      out.push_back(s.id);
    }
  }
  for (const Satellite& s : satellites) {
    out.push_back(s.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::pair<NodeId, EdgeId>>> RoutingGraph::adjacency() const {
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(num_node_ids);
  for (const Edge& e : edges) {
    adj[e.u].emplace_back(e.v, e.id);
    adj[e.v].emplace_back(e.u, e.id);
  }
  return adj;
}

bool RoutingGraph::connected_over_usable_edges() const {
  std::vector<bool> present(num_node_ids, false);
  int live = 0;
  for (const GroundStation& s : stations) {
    present[s.id] = true;
    ++live;
  }
  for (const Satellite& s : satellites) {
    present[s.id] = true;
    ++live;
  }
  if (live == 0) {
    return true;
  }
  const auto adj = adjacency();
  std::vector<bool> seen(num_node_ids, false);
  std::vector<NodeId> stack;
  NodeId start = stations.empty() ? satellites.front().id : stations.front().id;
  stack.push_back(start);
  seen[start] = true;
  int reached = 0;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    ++reached;
    for (auto [m, eid] : adj[n]) {
      if (!seen[m] && edges[eid].fidelity > kSentinelFidelity) {
        seen[m] = true;
        stack.push_back(m);
      }
    }
  }
  return reached == live;
}

bool operator==(const GroundStation& a, const GroundStation& b) {
  return a.id == b.id && a.latitude_deg == b.latitude_deg &&
         a.longitude_deg == b.longitude_deg && a.role == b.role &&
         a.memory_capacity == b.memory_capacity && a.noise_amendment == b.noise_amendment;
}

bool operator==(const Satellite& a, const Satellite& b) {
  return a.id == b.id && a.plane_index == b.plane_index && a.slot_index == b.slot_index &&
         a.memory_capacity == b.memory_capacity && a.noise_amendment == b.noise_amendment;
}

bool operator==(const Edge& a, const Edge& b) {
  return a.id == b.id && a.u == b.u && a.v == b.v && a.kind == b.kind &&
         a.capacity == b.capacity && a.fidelity == b.fidelity && a.noise == b.noise &&
         a.purification_effect == b.purification_effect &&
         a.purification_count == b.purification_count;
}

bool operator==(const RoutingGraph& a, const RoutingGraph& b) {
  return a.timestamp_s == b.timestamp_s && a.stations == b.stations &&
         a.satellites == b.satellites && a.edges == b.edges &&
         a.num_node_ids == b.num_node_ids;
}

// ---------------------------------------------------------------------------

GroundTopology generate_ground_topology(const GroundNetConfig& cfg, std::uint64_t seed) {
  const int n = cfg.num_stations;
  const int m = cfg.attachment_degree;
  if (n < 2 || m < 1 || m >= n) {
    throw ConfigError("ground topology needs num_stations >= 2 and 1 <= degree < stations");
  }
  if (cfg.num_switches >= n || cfg.num_switches < 0) {
    throw ConfigError("num_switches must lie in [0, num_stations)");
  }
  if (!(cfg.fidelity_min > 0.0 && cfg.fidelity_min <= cfg.fidelity_max &&
        cfg.fidelity_max <= 1.0)) {
    throw ConfigError("ground fidelity range must satisfy 0 < min <= max <= 1");
  }

  RngStream attach(seed, "topology");
  RngStream fid_rng(seed, "ground-fidelity");
  RngStream cap_rng(seed, "ground-capacity");
  RngStream mem_rng(seed, "memory");
  RngStream pos_rng(seed, "positions");

  // Preferential attachment: each new node links to `m` distinct earlier
  // nodes sampled from the multiset of past edge endpoints.
  std::vector<std::pair<int, int>> links;
  std::vector<int> endpoint_pool;
  std::vector<int> targets(m);
  for (int i = 0; i < m; ++i) {
    targets[i] = i;
  }
  for (int src = m; src < n; ++src) {
    for (int t : targets) {
      links.emplace_back(t, src);
      endpoint_pool.push_back(t);
      endpoint_pool.push_back(src);
    }
    if (src + 1 >= n) {
      break;
    }
    // Sample m distinct targets for the next node.
    std::vector<int> next;
    while (static_cast<int>(next.size()) < m) {
      const int cand =
          endpoint_pool[attach.uniform_int(0, static_cast<int>(endpoint_pool.size()) - 1)];
      if (std::find(next.begin(), next.end(), cand) == next.end()) {
        next.push_back(cand);
      }
    }
    targets = std::move(next);
  }

  std::vector<int> degree(n, 0);
  for (auto [a, b] : links) {
    ++degree[a];
    ++degree[b];
  }

  // Highest-degree stations act as switches; ties resolved by id.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
  });
  std::vector<bool> is_switch(n, false);
  for (int i = 0; i < cfg.num_switches; ++i) {
    is_switch[order[i]] = true;
  }

  GroundTopology topo;
  topo.stations.reserve(n);
  for (int i = 0; i < n; ++i) {
    GroundStation s;
    s.id = i;
    // Area-uniform within the configured box.
    const double zmin = std::sin(cfg.latitude_min_deg * std::numbers::pi / 180.0);
    const double zmax = std::sin(cfg.latitude_max_deg * std::numbers::pi / 180.0);
    s.latitude_deg = std::asin(pos_rng.uniform(zmin, zmax)) * 180.0 / std::numbers::pi;
    s.longitude_deg = pos_rng.uniform(cfg.longitude_min_deg, cfg.longitude_max_deg);
    s.role = is_switch[i] ? NodeRole::Switch : NodeRole::User;
    s.memory_capacity =
        static_cast<int>(mem_rng.uniform_int(cfg.memory_capacity_min, cfg.memory_capacity_max));
    s.noise_amendment = is_switch[i] ? cfg.switch_noise_amendment : 0.0;
    topo.stations.push_back(s);
  }

  topo.edges.reserve(links.size());
  for (auto [a, b] : links) {
    Edge e;
    e.id = static_cast<EdgeId>(topo.edges.size());
    e.u = std::min(a, b);
    e.v = std::max(a, b);
    e.kind = EdgeKind::Ground;
    e.capacity = static_cast<int>(cap_rng.uniform_int(cfg.edge_capacity_min, cfg.edge_capacity_max));
    e.fidelity = fid_rng.uniform(cfg.fidelity_min, cfg.fidelity_max);
    refresh_edge_noise(e);
    topo.edges.push_back(e);
  }
  return topo;
}

// ---------------------------------------------------------------------------

double UniformFidelityMapping::fidelity(double /*eta*/, NodeId satellite,
                                        NodeId station) const {
  RngStream pair_stream(hash_combine(seed_, hash_combine(static_cast<std::uint64_t>(satellite),
                                                         static_cast<std::uint64_t>(station))));
  return pair_stream.uniform(lo_, hi_);
}

std::string UniformFidelityMapping::describe() const {
  std::ostringstream os;
  os << "uniform[" << lo_ << "," << hi_ << "]";
  return os.str();
}

double AffineFidelityMapping::fidelity(double eta, NodeId, NodeId) const {
  const double scaled = std::min(eta / eta_max_, 1.0);
  return lo_ + (hi_ - lo_) * scaled;
}

std::string AffineFidelityMapping::describe() const {
  std::ostringstream os;
  os << "affine[" << lo_ << "," << hi_ << ";eta_max=" << eta_max_ << "]";
  return os.str();
}

RoutingGraph snapshot(const orbit::ConstellationConfig& cfg,
                      const std::vector<Satellite>& satellites,
                      const GroundTopology& ground, double t_s,
                      const FreeSpaceLinkModel& link_model) {
  cfg.validate();
  if (link_model.mapping == nullptr) {
    throw ConfigError("snapshot requires a fidelity mapping");
  }
  RoutingGraph g;
  g.timestamp_s = t_s;
  g.constellation = cfg;
  g.stations = ground.stations;
  g.edges = ground.edges;
  g.num_node_ids = static_cast<int>(ground.stations.size() + satellites.size());

  std::vector<Eigen::Vector3d> station_pos(ground.stations.size());
  for (std::size_t i = 0; i < ground.stations.size(); ++i) {
    station_pos[i] = ground.stations[i].position();
  }

  RngStream cap_rng(link_model.capacity_seed, "freespace-capacity");
  for (const Satellite& sat : satellites) {
    const Eigen::Vector3d pos =
        orbit::satellite_position(cfg, sat.plane_index, sat.slot_index, t_s);
    bool any_usable = false;
    std::vector<Edge> sat_edges;
    for (const GroundStation& st : ground.stations) {
      const double elev = orbit::elevation_angle_deg(pos, station_pos[st.id]);
      const bool visible = elev >= cfg.elevation_threshold_deg;
      if (!visible && !link_model.keep_sentinel_edges) {
        continue;
      }
      Edge e;
      e.u = std::min(sat.id, st.id);
      e.v = std::max(sat.id, st.id);
      e.kind = EdgeKind::FreeSpace;
      e.capacity = static_cast<int>(
          cap_rng.substream(hash_combine(static_cast<std::uint64_t>(sat.id),
                                         static_cast<std::uint64_t>(st.id)))
              .uniform_int(link_model.capacity_min, link_model.capacity_max));
      if (visible) {
        physics::OpticalParams optical;
        optical.transmitter_diameter_m = link_model.optics.transmitter_diameter_m;
        optical.receiver_diameter_m = link_model.optics.receiver_diameter_m;
        optical.wavelength_m = link_model.optics.wavelength_m;
        optical.extinction_coeff_per_m = link_model.optics.extinction_coeff_per_m;
        optical.free_space_distance_m = (pos - station_pos[st.id]).norm();
        optical.atmosphere_depth_m = orbit::atmosphere_path_length_m(
            elev, link_model.optics.atmosphere_height_m);
        const double eta = physics::transmissivity(optical);
        e.fidelity = link_model.mapping->fidelity(eta, sat.id, st.id);
        if (!(e.fidelity > 0.0 && e.fidelity <= 1.0)) {
          throw ConfigError("fidelity mapping produced a value outside (0, 1]");
        }
        any_usable = true;
      } else {
        e.fidelity = kSentinelFidelity;
      }
      refresh_edge_noise(e);
      sat_edges.push_back(e);
    }
    if (any_usable || (link_model.keep_sentinel_edges && !sat_edges.empty())) {
      g.satellites.push_back(sat);
      for (Edge& e : sat_edges) {
        e.id = static_cast<EdgeId>(g.edges.size());
        g.edges.push_back(e);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

const char* role_name(NodeRole r) {
  switch (r) {
    case NodeRole::User:
      return "user";
    case NodeRole::Switch:
      return "switch";
    case NodeRole::Satellite:
      return "satellite";
  }
  return "?";
}

const char* kind_name(EdgeKind k) {
  return k == EdgeKind::Ground ? "ground" : "freespace";
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_graph(std::ostream& os, const RoutingGraph& g) {
  os << "sgiq-graph 1\n";
  os << "timestamp " << fmt17(g.timestamp_s) << "\n";
  os << "ids " << g.num_node_ids << "\n";
  if (g.constellation) {
    const auto& c = *g.constellation;
    os << "constellation " << fmt17(c.inclination_deg) << " " << c.num_satellites << " "
       << c.num_planes << " " << c.phasing << " " << fmt17(c.altitude_m) << " "
       << fmt17(c.elevation_threshold_deg) << "\n";
  }
  for (const GroundStation& s : g.stations) {
    os << "station " << s.id << " " << role_name(s.role) << " " << fmt17(s.latitude_deg)
       << " " << fmt17(s.longitude_deg) << " " << s.memory_capacity << " "
       << fmt17(s.noise_amendment) << "\n";
  }
  for (const Satellite& s : g.satellites) {
    os << "satellite " << s.id << " " << s.plane_index << " " << s.slot_index << " "
       << s.memory_capacity << " " << fmt17(s.noise_amendment) << "\n";
  }
  for (const Edge& e : g.edges) {
    os << "edge " << e.id << " " << e.u << " " << e.v << " " << kind_name(e.kind) << " "
       << e.capacity << " " << fmt17(e.fidelity) << " " << fmt17(e.noise) << " "
       << fmt17(e.purification_effect) << " " << e.purification_count << "\n";
  }
}

RoutingGraph read_graph(std::istream& is) {
  RoutingGraph g;
  std::string line;
  if (!std::getline(is, line) || line.rfind("sgiq-graph", 0) != 0) {
    throw ConfigError("graph dump: missing header");
  }
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "timestamp") {
      ss >> g.timestamp_s;
    } else if (tag == "ids") {
      ss >> g.num_node_ids;
    } else if (tag == "constellation") {
      orbit::ConstellationConfig c;
      ss >> c.inclination_deg >> c.num_satellites >> c.num_planes >> c.phasing >>
          c.altitude_m >> c.elevation_threshold_deg;
      g.constellation = c;
    } else if (tag == "station") {
      GroundStation s;
      std::string role;
      ss >> s.id >> role >> s.latitude_deg >> s.longitude_deg >> s.memory_capacity >>
          s.noise_amendment;
      s.role = role == "switch" ? NodeRole::Switch : NodeRole::User;
      g.stations.push_back(s);
    } else if (tag == "satellite") {
      Satellite s;
      ss >> s.id >> s.plane_index >> s.slot_index >> s.memory_capacity >> s.noise_amendment;
      g.satellites.push_back(s);
    } else if (tag == "edge") {
      Edge e;
      std::string kind;
      ss >> e.id >> e.u >> e.v >> kind >> e.capacity >> e.fidelity >> e.noise >>
          e.purification_effect >> e.purification_count;
      e.kind = kind == "ground" ? EdgeKind::Ground : EdgeKind::FreeSpace;
      g.edges.push_back(e);
    } else {
      throw ConfigError("graph dump: unknown record '" + tag + "'");
    }
    if (ss.fail()) {
      throw ConfigError("graph dump: malformed record '" + line + "'");
    }
  }
  return g;
}

}  // namespace sgiq
