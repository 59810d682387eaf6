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

#include "sgiq/error.hpp"

namespace sgiq {

// Entanglement fidelity, a probability in [0, 1].
class Fidelity {
 public:
  explicit Fidelity(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("fidelity outside [0, 1]");
    }
  }
  double value() const { return value_; }

  friend bool operator==(Fidelity a, Fidelity b) { return a.value_ == b.value_; }

 private:
  double value_;
};

// Additive log-noise mu = ln(1/gamma); zero iff the fidelity is perfect.
class Noise {
 public:
  explicit Noise(double value) : value_(value) {
    if (!(value >= 0.0)) {
      throw DomainError("noise must be non-negative");
    }
  }
  double value() const { return value_; }

 private:
  double value_;
};

namespace physics {

// Free-space optical channel geometry between a satellite transmitter and a
// ground receiver.
struct OpticalParams {
  double transmitter_diameter_m = 0.0;
  double receiver_diameter_m = 0.0;
  double wavelength_m = 0.0;
  double extinction_coeff_per_m = 0.0;
  double free_space_distance_m = 0.0;
  double atmosphere_depth_m = 0.0;

  void validate() const;
};

inline constexpr int kMaxPurificationRounds = 64;

// Far-field channel transmissivity. Throws NonPhysicalError when the
// geometry yields a value >= 1, where the far-field form no longer applies.
double transmissivity(const OpticalParams& p);

// Channel capacity -log2(1 - eta) for eta in (0, 1).
double channel_capacity(double eta);

// Fidelity of the pair produced by purifying two entangled pairs.
Fidelity purify(Fidelity rho1, Fidelity rho2);

// Additive noise transform, natural log. noise_of(a*b) = noise_of(a) + noise_of(b).
Noise noise_of(Fidelity f);

// Smallest number of purification rounds, pumping fresh copies at `gamma`,
// that lifts the fidelity to `target`. Zero when already there; throws
// UnreachableError when kMaxPurificationRounds rounds do not suffice.
int purification_count(Fidelity gamma, Fidelity target = Fidelity(0.99));

// Per-round noise reduction p = mu / kappa.
Noise purification_effect(Noise mu, int kappa);

}  // namespace physics
}  // namespace sgiq
