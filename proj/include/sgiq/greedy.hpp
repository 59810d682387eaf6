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

#include <span>
#include <vector>

#include "sgiq/schedule.hpp"

namespace sgiq {

enum class SubgraphTag { GroundOnly, Full, FreeSpaceOnly };

// Edge id subsets of a routing graph; node sets are untouched.
struct Subgraphs {
  std::vector<EdgeId> ground;     // G1
  std::vector<EdgeId> full;       // G2
  std::vector<EdgeId> freespace;  // G3
};

Subgraphs build_subgraphs(const RoutingGraph& g);

struct CandidatePath {
  int request_index = -1;
  SubgraphTag tag = SubgraphTag::Full;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  double noise = 0.0;  // edge noise plus interior repeater amendments
  int cost = 0;        // entanglements per message = hop count
};

// Per subgraph, the minimum-noise path between the request endpoints,
// admitted only when its accumulated noise stays within the threshold.
std::vector<CandidatePath> candidate_paths(const RoutingGraph& g, const Subgraphs& sub,
                                           const Request& request, int request_index,
                                           double noise_threshold);

enum class GreedySortKey { Cost, Noise };

// Algorithm: collect candidates for every request over G1/G2/G3, then walk
// the three candidate sets in that order, cheapest first, granting each
// candidate the largest copy count the remaining capacities allow.
Schedule greedy_route(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold,
                      GreedySortKey sort_key = GreedySortKey::Cost);

}  // namespace sgiq
