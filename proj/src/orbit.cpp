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

#include "sgiq/orbit.hpp"

#include <cmath>
#include <numbers>

namespace sgiq::orbit {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}  // namespace

void ConstellationConfig::validate() const {
  if (num_satellites <= 0 || num_planes <= 0 || num_satellites % num_planes != 0) {
    throw ConfigError("constellation: num_planes must divide num_satellites");
  }
  if (phasing < 0 || phasing >= num_planes) {
    throw ConfigError("constellation: phasing must lie in [0, num_planes)");
  }
  if (altitude_m <= 0.0) {
    throw ConfigError("constellation: altitude must be positive");
  }
}

double ConstellationConfig::orbital_period_s() const {
  const double a = orbital_radius_m();
  return 2.0 * std::numbers::pi * std::sqrt(a * a * a / kEarthMu);
}

Eigen::Vector3d satellite_position(const ConstellationConfig& cfg, int plane_index,
                                   int slot_index, double t_s) {
  cfg.validate();
  const int per_plane = cfg.satellites_per_plane();
  if (plane_index < 0 || plane_index >= cfg.num_planes || slot_index < 0 ||
      slot_index >= per_plane) {
    throw ConfigError("satellite indices outside constellation bounds");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double raan = two_pi * plane_index / cfg.num_planes;
  const double anomaly = two_pi * slot_index / per_plane +
                         two_pi * cfg.phasing * plane_index / cfg.num_satellites +
                         two_pi * t_s / cfg.orbital_period_s();
  const double incl = cfg.inclination_deg * kDegToRad;

  const double cu = std::cos(anomaly), su = std::sin(anomaly);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(incl), si = std::sin(incl);
  return cfg.orbital_radius_m() *
         Eigen::Vector3d(co * cu - so * su * ci, so * cu + co * su * ci, su * si);
}

Eigen::Vector3d ground_position(double latitude_deg, double longitude_deg,
                                double radius_m) {
  const double lat = latitude_deg * kDegToRad;
  const double lon = longitude_deg * kDegToRad;
  return radius_m *
         Eigen::Vector3d(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon),
                         std::sin(lat));
}

double elevation_angle_deg(const Eigen::Vector3d& target, const Eigen::Vector3d& site) {
  const Eigen::Vector3d up = site.normalized();
  const Eigen::Vector3d line = target - site;
  const double along = line.dot(up);
  // atan2 of the radial and tangential components stays accurate at the
  // zenith, where asin(along/|line|) loses digits.
  const double across = (line - along * up).norm();
  return std::atan2(along, across) * kRadToDeg;
}

double atmosphere_path_length_m(double elevation_deg, double atmosphere_height_m,
                                double site_radius_m) {
  const double r = site_radius_m;
  const double shell = r + atmosphere_height_m;
  const double sin_e = std::sin(elevation_deg * kDegToRad);
  const double proj = r * sin_e;
  return -proj + std::sqrt(proj * proj + shell * shell - r * r);
}

}  // namespace sgiq::orbit
