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

#include "sgiq/physics.hpp"

#include <cmath>
#include <numbers>

namespace sgiq::physics {

void OpticalParams::validate() const {
  const bool positive = transmitter_diameter_m > 0.0 && receiver_diameter_m > 0.0 &&
                        wavelength_m > 0.0 && extinction_coeff_per_m > 0.0 &&
                        free_space_distance_m > 0.0 && atmosphere_depth_m > 0.0;
  if (!positive) {
    throw NonPhysicalError("optical parameters must all be strictly positive");
  }
  if (atmosphere_depth_m > free_space_distance_m) {
    throw NonPhysicalError("atmosphere depth exceeds free-space distance");
  }
}

double transmissivity(const OpticalParams& p) {
  p.validate();
  const double tx_area = std::numbers::pi * (p.transmitter_diameter_m / 2.0) *
                         (p.transmitter_diameter_m / 2.0);
  const double rx_area = std::numbers::pi * (p.receiver_diameter_m / 2.0) *
                         (p.receiver_diameter_m / 2.0);
  const double diffraction = p.wavelength_m * p.free_space_distance_m;
  const double eta = tx_area * rx_area / (diffraction * diffraction) *
                     std::exp(-p.extinction_coeff_per_m * p.atmosphere_depth_m);
  if (eta >= 1.0) {
    throw NonPhysicalError("transmissivity >= 1: geometry outside the far-field regime");
  }
  return eta;
}

double channel_capacity(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("channel capacity requires eta in (0, 1)");
  }
  return -std::log2(1.0 - eta);
}

Fidelity purify(Fidelity rho1, Fidelity rho2) {
  const double a = rho1.value();
  const double b = rho2.value();
  const double denom = a * b + (1.0 - a) * (1.0 - b);
  if (denom == 0.0) {
    throw DomainError("degenerate purification: denominator vanishes");
  }
  return Fidelity(a * b / denom);
}

Noise noise_of(Fidelity f) {
  if (f.value() == 0.0) {
    throw DomainError("noise of zero fidelity is unbounded");
  }
  // -log(gamma) rather than log(1/gamma): one rounding instead of two, and
  // exactly 0 at gamma = 1.
  return Noise(-std::log(f.value()));
}

int purification_count(Fidelity gamma, Fidelity target) {
  if (gamma.value() == 0.0) {
    throw DomainError("cannot purify zero-fidelity pairs");
  }
  if (gamma.value() >= target.value()) {
    return 0;
  }
  Fidelity rho = gamma;
  for (int rounds = 1; rounds <= kMaxPurificationRounds; ++rounds) {
    rho = purify(rho, gamma);
    if (rho.value() >= target.value()) {
      return rounds;
    }
  }
  throw UnreachableError("target fidelity unreachable by pumping at the base fidelity");
}

Noise purification_effect(Noise mu, int kappa) {
  if (kappa < 1) {
    throw DomainError("purification effect requires kappa >= 1");
  }
  return Noise(mu.value() / static_cast<double>(kappa));
}

}  // namespace sgiq::physics
