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

#include "sgiq/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace sgiq {

const char* to_string(SolverKind k) {
  return k == SolverKind::Linear ? "linear" : "greedy";
}

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Abundant:
      return "abundant";
    case ScenarioKind::Sufficient:
      return "sufficient";
    case ScenarioKind::Insufficient:
      return "insufficient";
  }
  return "?";
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "linear") {
    return SolverKind::Linear;
  }
  if (s == "greedy") {
    return SolverKind::Greedy;
  }
  throw ConfigError("unknown solver '" + s + "' (expected linear or greedy)");
}

ScenarioKind scenario_from_string(const std::string& s) {
  if (s == "abundant") {
    return ScenarioKind::Abundant;
  }
  if (s == "sufficient") {
    return ScenarioKind::Sufficient;
  }
  if (s == "insufficient") {
    return ScenarioKind::Insufficient;
  }
  throw ConfigError("unknown scenario '" + s + "'");
}

CapacityRanges capacity_ranges(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Abundant:
      return {8, 16, 16, 32};
    case ScenarioKind::Sufficient:
      return {4, 8, 8, 16};
    case ScenarioKind::Insufficient:
      return {1, 3, 2, 6};
  }
  return {};
}

double ScenarioSpec::effective_round_duration_s() const {
  return round_duration_s > 0.0 ? round_duration_s
                                : constellation.orbital_period_s() / 32.0;
}

TrialSetup build_trial(const ScenarioSpec& spec, ScenarioKind kind, std::uint64_t seed) {
  TrialSetup trial;
  trial.ranges = capacity_ranges(kind);

  GroundNetConfig ground;
  ground.num_stations = spec.num_stations;
  ground.attachment_degree = spec.attachment_degree;
  ground.num_switches = spec.num_switches;
  ground.fidelity_min = spec.ground_fidelity_min;
  ground.fidelity_max = spec.ground_fidelity_max;
  ground.edge_capacity_min = trial.ranges.edge_min;
  ground.edge_capacity_max = trial.ranges.edge_max;
  ground.memory_capacity_min = trial.ranges.repeater_min;
  ground.memory_capacity_max = trial.ranges.repeater_max;
  ground.switch_noise_amendment = spec.repeater_noise;
  ground.latitude_min_deg = spec.latitude_min_deg;
  ground.latitude_max_deg = spec.latitude_max_deg;
  ground.longitude_min_deg = spec.longitude_min_deg;
  ground.longitude_max_deg = spec.longitude_max_deg;
  trial.ground = generate_ground_topology(ground, seed);

  spec.constellation.validate();
  RngStream sat_mem(seed, "satellite-memory");
  const int per_plane = spec.constellation.satellites_per_plane();
  trial.satellites.reserve(spec.constellation.num_satellites);
  for (int j = 0; j < spec.constellation.num_satellites; ++j) {
    Satellite sat;
    sat.id = spec.num_stations + j;
    sat.plane_index = j / per_plane;
    sat.slot_index = j % per_plane;
    sat.memory_capacity = static_cast<int>(
        sat_mem.uniform_int(trial.ranges.repeater_min, trial.ranges.repeater_max));
    sat.noise_amendment = spec.repeater_noise;
    trial.satellites.push_back(sat);
  }

  std::vector<NodeId> users;
  for (const GroundStation& s : trial.ground.stations) {
    if (s.role == NodeRole::User) {
      users.push_back(s.id);
    }
  }
  if (users.size() < 2) {
    throw ConfigError("scenario needs at least two user stations");
  }
  RngStream req_rng(seed, "requests");
  trial.requests.reserve(spec.num_requests);
  for (int i = 0; i < spec.num_requests; ++i) {
    Request r;
    r.id = i;
    r.source = users[req_rng.uniform_int(0, static_cast<int>(users.size()) - 1)];
    do {
      r.destination = users[req_rng.uniform_int(0, static_cast<int>(users.size()) - 1)];
    } while (r.destination == r.source);
    r.message_size = static_cast<int>(req_rng.uniform_int(spec.message_min, spec.message_max));
    trial.requests.push_back(r);
  }

  trial.fs_capacity_seed = hash_combine(seed, fnv1a64("fs-capacity"));
  trial.fs_fidelity_seed = hash_combine(seed, fnv1a64("fs-fidelity"));
  return trial;
}

RoutingGraph trial_snapshot(const ScenarioSpec& spec, const TrialSetup& trial, int round) {
  const double t = (round - 1) * spec.effective_round_duration_s();
  const std::uint64_t round_seed =
      hash_combine(trial.fs_fidelity_seed, static_cast<std::uint64_t>(round));
  UniformFidelityMapping uniform(round_seed, spec.fs_fidelity_min, spec.fs_fidelity_max);
  AffineFidelityMapping affine(spec.fs_fidelity_min, spec.fs_fidelity_max,
                               spec.affine_eta_max);
  FreeSpaceLinkModel link;
  link.mapping = spec.mapping == "affine"
                     ? static_cast<const FidelityMapping*>(&affine)
                     : static_cast<const FidelityMapping*>(&uniform);
  link.optics = spec.optics;
  link.capacity_min = trial.ranges.edge_min;
  link.capacity_max = trial.ranges.edge_max;
  link.capacity_seed = trial.fs_capacity_seed;
  link.keep_sentinel_edges = spec.keep_sentinel_edges;
  return snapshot(spec.constellation, trial.satellites, trial.ground, t, link);
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  return parse(in, path);
}

IniFile IniFile::parse(std::istream& is, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    ini.sections_[section][key] = value;
  }
  return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) {
    return fallback;
  }
  const auto it = sec->second.find(key);
  return it == sec->second.end() ? fallback : it->second;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
  if (!has(section, key)) {
    return fallback;
  }
  const std::string raw = get(section, key, "");
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) {
      throw std::invalid_argument(raw);
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": [" + section + "] " + key + ": not a number: " + raw);
  }
}

long IniFile::get_int(const std::string& section, const std::string& key,
                      long fallback) const {
  if (!has(section, key)) {
    return fallback;
  }
  const std::string raw = get(section, key, "");
  try {
    std::size_t pos = 0;
    const long v = std::stol(raw, &pos);
    if (pos != raw.size()) {
      throw std::invalid_argument(raw);
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": [" + section + "] " + key + ": not an integer: " + raw);
  }
}

bool IniFile::get_bool(const std::string& section, const std::string& key,
                       bool fallback) const {
  if (!has(section, key)) {
    return fallback;
  }
  const std::string raw = get(section, key, "");
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") {
    return true;
  }
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") {
    return false;
  }
  throw ConfigError(origin_ + ": [" + section + "] " + key + ": not a boolean: " + raw);
}

std::vector<std::string> IniFile::get_list(const std::string& section,
                                           const std::string& key) const {
  std::vector<std::string> out;
  std::string raw = get(section, key, "");
  std::replace(raw.begin(), raw.end(), ',', ' ');
  std::istringstream ss(raw);
  std::string token;
  while (ss >> token) {
    out.push_back(token);
  }
  return out;
}

ScenarioSpec scenario_spec_from_ini(const IniFile& ini) {
  ScenarioSpec spec;
  spec.num_stations = static_cast<int>(ini.get_int("network", "stations", spec.num_stations));
  spec.attachment_degree =
      static_cast<int>(ini.get_int("network", "attachment_degree", spec.attachment_degree));
  spec.num_switches = static_cast<int>(ini.get_int("network", "switches", spec.num_switches));
  spec.ground_fidelity_min =
      ini.get_double("network", "ground_fidelity_min", spec.ground_fidelity_min);
  spec.ground_fidelity_max =
      ini.get_double("network", "ground_fidelity_max", spec.ground_fidelity_max);
  spec.latitude_min_deg = ini.get_double("network", "latitude_min", spec.latitude_min_deg);
  spec.latitude_max_deg = ini.get_double("network", "latitude_max", spec.latitude_max_deg);
  spec.longitude_min_deg = ini.get_double("network", "longitude_min", spec.longitude_min_deg);
  spec.longitude_max_deg = ini.get_double("network", "longitude_max", spec.longitude_max_deg);
  spec.repeater_noise = ini.get_double("network", "repeater_noise", spec.repeater_noise);

  auto& c = spec.constellation;
  c.inclination_deg = ini.get_double("constellation", "inclination", c.inclination_deg);
  c.num_satellites =
      static_cast<int>(ini.get_int("constellation", "satellites", c.num_satellites));
  c.num_planes = static_cast<int>(ini.get_int("constellation", "planes", c.num_planes));
  c.phasing = static_cast<int>(ini.get_int("constellation", "phasing", c.phasing));
  c.altitude_m = ini.get_double("constellation", "altitude_m", c.altitude_m);
  c.elevation_threshold_deg =
      ini.get_double("constellation", "elevation_threshold", c.elevation_threshold_deg);

  auto& o = spec.optics;
  o.transmitter_diameter_m =
      ini.get_double("optics", "transmitter_diameter_m", o.transmitter_diameter_m);
  o.receiver_diameter_m =
      ini.get_double("optics", "receiver_diameter_m", o.receiver_diameter_m);
  o.wavelength_m = ini.get_double("optics", "wavelength_m", o.wavelength_m);
  o.extinction_coeff_per_m =
      ini.get_double("optics", "extinction_per_m", o.extinction_coeff_per_m);
  o.atmosphere_height_m =
      ini.get_double("optics", "atmosphere_height_m", o.atmosphere_height_m);

  spec.mapping = ini.get("freespace", "fidelity_mapping", spec.mapping);
  if (spec.mapping != "uniform" && spec.mapping != "affine") {
    throw ConfigError("fidelity_mapping must be 'uniform' or 'affine'");
  }
  spec.fs_fidelity_min = ini.get_double("freespace", "fidelity_min", spec.fs_fidelity_min);
  spec.fs_fidelity_max = ini.get_double("freespace", "fidelity_max", spec.fs_fidelity_max);
  spec.affine_eta_max = ini.get_double("freespace", "affine_eta_max", spec.affine_eta_max);

  spec.num_requests = static_cast<int>(ini.get_int("requests", "count", spec.num_requests));
  spec.message_min = static_cast<int>(ini.get_int("requests", "message_min", spec.message_min));
  spec.message_max = static_cast<int>(ini.get_int("requests", "message_max", spec.message_max));

  spec.round_duration_s = ini.get_double("sim", "round_duration_s", spec.round_duration_s);
  spec.keep_sentinel_edges =
      ini.get_bool("sim", "keep_sentinel_edges", spec.keep_sentinel_edges);
  const std::string sort = ini.get("sim", "greedy_sort_by", "cost");
  if (sort == "cost") {
    spec.greedy_sort = GreedySortKey::Cost;
  } else if (sort == "noise") {
    spec.greedy_sort = GreedySortKey::Noise;
  } else {
    throw ConfigError("greedy_sort_by must be 'cost' or 'noise'");
  }
  return spec;
}

std::string default_config_text() {
  std::ostringstream os;
  os << "# sgiq scenario configuration (defaults shown)\n"
     << "\n"
     << "[network]\n"
     << "stations = 50            # ground stations\n"
     << "attachment_degree = 2    # Barabasi-Albert links per new station\n"
     << "switches = 10            # highest-degree stations acting as repeaters\n"
     << "ground_fidelity_min = 0.75\n"
     << "ground_fidelity_max = 1.0\n"
     << "latitude_min = -90       # station placement box (area-uniform)\n"
     << "latitude_max = 90\n"
     << "longitude_min = -180\n"
     << "longitude_max = 180\n"
     << "repeater_noise = 0.05    # noise amendment sigma at switches/satellites\n"
     << "\n"
     << "[constellation]\n"
     << "inclination = 53         # Walker Delta delta:n/p/f\n"
     << "satellites = 12\n"
     << "planes = 3\n"
     << "phasing = 1\n"
     << "altitude_m = 550000\n"
     << "elevation_threshold = 20 # degrees\n"
     << "\n"
     << "[optics]\n"
     << "transmitter_diameter_m = 0.1\n"
     << "receiver_diameter_m = 1.0\n"
     << "wavelength_m = 810e-9\n"
     << "extinction_per_m = 5e-5\n"
     << "atmosphere_height_m = 10000\n"
     << "\n"
     << "[freespace]\n"
     << "fidelity_mapping = uniform  # uniform | affine\n"
     << "fidelity_min = 0.9\n"
     << "fidelity_max = 1.0\n"
     << "affine_eta_max = 0.04       # eta mapped to fidelity_max (affine only)\n"
     << "\n"
     << "[requests]\n"
     << "count = 8\n"
     << "message_min = 1\n"
     << "message_max = 3\n"
     << "\n"
     << "[sim]\n"
     << "rounds = 8\n"
     << "swap_success_prob = 0.95\n"
     << "noise_threshold = 0.6\n"
     << "solver = linear             # linear | greedy\n"
     << "scenario = sufficient       # abundant | sufficient | insufficient\n"
     << "round_duration_s = 0        # 0 = orbital period / 32\n"
     << "keep_sentinel_edges = false\n"
     << "greedy_sort_by = cost       # cost | noise\n"
     << "\n"
     << "[experiment]\n"
     << "scenarios = sufficient\n"
     << "solvers = linear greedy\n"
     << "seeds = 1 2 3 4 5\n"
     << "noise_thresholds = 0.6\n"
     << "workers = 2\n";
  return os.str();
}

std::string canonical_spec_text(const ScenarioSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "stations=" << spec.num_stations << "\nattachment_degree=" << spec.attachment_degree
     << "\nswitches=" << spec.num_switches << "\nground_fidelity=["
     << spec.ground_fidelity_min << "," << spec.ground_fidelity_max << "]\nbox=["
     << spec.latitude_min_deg << "," << spec.latitude_max_deg << ","
     << spec.longitude_min_deg << "," << spec.longitude_max_deg << "]\nrepeater_noise="
     << spec.repeater_noise << "\nconstellation=" << spec.constellation.inclination_deg
     << ":" << spec.constellation.num_satellites << "/" << spec.constellation.num_planes
     << "/" << spec.constellation.phasing << "@" << spec.constellation.altitude_m
     << ",theta=" << spec.constellation.elevation_threshold_deg << "\noptics=["
     << spec.optics.transmitter_diameter_m << "," << spec.optics.receiver_diameter_m << ","
     << spec.optics.wavelength_m << "," << spec.optics.extinction_coeff_per_m << ","
     << spec.optics.atmosphere_height_m << "]\nmapping=" << spec.mapping << "["
     << spec.fs_fidelity_min << "," << spec.fs_fidelity_max << ";"
     << spec.affine_eta_max << "]\nrequests=" << spec.num_requests << "x["
     << spec.message_min << "," << spec.message_max << "]\nround_duration_s="
     << spec.round_duration_s << "\nkeep_sentinel_edges=" << spec.keep_sentinel_edges
     << "\ngreedy_sort_by=" << (spec.greedy_sort == GreedySortKey::Cost ? "cost" : "noise")
     << "\n";
  return os.str();
}

void write_requests(std::ostream& os, std::span<const Request> requests) {
  for (const Request& r : requests) {
    os << "request " << r.id << " " << r.source << " " << r.destination << " "
       << r.message_size << "\n";
  }
}

std::vector<Request> read_requests(std::istream& is) {
  std::vector<Request> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    Request r;
    ss >> tag >> r.id >> r.source >> r.destination >> r.message_size;
    if (tag != "request" || ss.fail()) {
      throw ConfigError("malformed request line: " + line);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace sgiq
