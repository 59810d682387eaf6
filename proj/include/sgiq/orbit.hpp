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

#include "sgiq/error.hpp"

namespace sgiq::orbit {

inline constexpr double kEarthRadiusM = 6'371'000.0;
inline constexpr double kEarthMu = 3.986004418e14;  // m^3 / s^2

// Walker Delta constellation delta:n/p/f on circular orbits.
struct ConstellationConfig {
  double inclination_deg = 53.0;
  int num_satellites = 40;  // n
  int num_planes = 5;       // p
  int phasing = 1;          // f, in [0, p)
  double altitude_m = 550'000.0;
  double elevation_threshold_deg = 20.0;

  void validate() const;
  int satellites_per_plane() const { return num_satellites / num_planes; }
  double orbital_radius_m() const { return kEarthRadiusM + altitude_m; }
  // Keplerian circular period.
  double orbital_period_s() const;
};

// Earth-centered position of the (plane, slot) satellite at time t.
// The reference frame is the Earth-fixed frame of the ground stations; the
// model carries no Earth rotation, so relative geometry is periodic with the
// orbital period.
Eigen::Vector3d satellite_position(const ConstellationConfig& cfg, int plane_index,
                                   int slot_index, double t_s);

// Earth-centered position of a point on the sphere.
Eigen::Vector3d ground_position(double latitude_deg, double longitude_deg,
                                double radius_m = kEarthRadiusM);

// Elevation of `target` above the local horizon at `site`, in [-90, 90] deg.
double elevation_angle_deg(const Eigen::Vector3d& target, const Eigen::Vector3d& site);

// Length of the sight line from a ground site at radius R to where it leaves
// an atmosphere shell of thickness `atmosphere_height_m`.
double atmosphere_path_length_m(double elevation_deg, double atmosphere_height_m,
                                double site_radius_m = kEarthRadiusM);

}  // namespace sgiq::orbit
