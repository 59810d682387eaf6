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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgiq/greedy.hpp"
#include "test_support.hpp"

using namespace sgiq;
using namespace sgiq::testsupport;

TEST_CASE("subgraphs partition the edge set") {
  const HandInstance h = greedy_example(3);
  const Subgraphs sub = build_subgraphs(h.graph);
  CHECK(sub.ground.size() + sub.freespace.size() == sub.full.size());
  CHECK(sub.ground.size() == 2);
  CHECK(sub.freespace.size() == 2);

  GraphBuilder b;
  const NodeId a = b.add_station(NodeRole::User, 0, 0.0);
  const NodeId bb = b.add_station(NodeRole::User, 0, 0.0);
  b.add_edge(a, bb, EdgeKind::Ground, 1, 0.9);
  const RoutingGraph ground_only = b.build();
  const Subgraphs sg = build_subgraphs(ground_only);
  CHECK(sg.freespace.empty());
  CHECK(sg.ground.size() == 1);
}

TEST_CASE("candidate paths on the worked example") {
  const HandInstance h = greedy_example(3);
  const Subgraphs sub = build_subgraphs(h.graph);

  SUBCASE("threshold 0.5 admits all three") {
    const auto cands = candidate_paths(h.graph, sub, h.requests[0], 0, 0.5);
    REQUIRE(cands.size() == 3);
    CHECK(cands[0].tag == SubgraphTag::GroundOnly);
    CHECK(cands[0].noise == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(cands[0].cost == 2);
    CHECK(cands[0].nodes == std::vector<NodeId>{0, 2, 1});
    CHECK(cands[1].tag == SubgraphTag::Full);
    CHECK(cands[1].noise == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(cands[1].nodes == std::vector<NodeId>{0, 3, 1});
    CHECK(cands[2].tag == SubgraphTag::FreeSpaceOnly);
    CHECK(cands[2].noise == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(cands[2].cost == 2);
  }

  SUBCASE("threshold 0.3 rejects the ground path") {
    const auto cands = candidate_paths(h.graph, sub, h.requests[0], 0, 0.3);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].tag == SubgraphTag::Full);
    CHECK(cands[1].tag == SubgraphTag::FreeSpaceOnly);
  }
}

TEST_CASE("greedy allocation on the worked example") {
  const HandInstance h = greedy_example(3);
  const Schedule s = greedy_route(h.graph, h.requests, 0.5);
  CHECK(s.total_scheduled == 3);
  REQUIRE(s.paths.size() == 2);
  // Ground set is processed first and takes two copies; the hybrid pass
  // sends the residual message over the satellite.
  CHECK(s.paths[0].nodes == std::vector<NodeId>{0, 2, 1});
  CHECK(s.paths[0].multiplicity == 2);
  CHECK(s.paths[1].nodes == std::vector<NodeId>{0, 3, 1});
  CHECK(s.paths[1].multiplicity == 1);
  CHECK(s.residual[0] == 0);
  for (const ScheduledPath& p : s.paths) {
    for (int u : p.purifications) {
      CHECK(u == 0);  // greedy never schedules purification
    }
  }
}

TEST_CASE("greedy respects the threshold exactly") {
  const HandInstance h = greedy_example(3);
  const Schedule s = greedy_route(h.graph, h.requests, 0.3);
  // Only the satellite route is admissible and it carries one message.
  CHECK(s.total_scheduled == 1);
  CHECK(s.paths[0].nodes == std::vector<NodeId>{0, 3, 1});
}

TEST_CASE("degenerate inputs") {
  const HandInstance h = greedy_example(3);
  SUBCASE("zero requests") {
    const Schedule s = greedy_route(h.graph, {}, 0.5);
    CHECK(s.total_scheduled == 0);
    CHECK(s.paths.empty());
  }
  SUBCASE("zero capacities") {
    HandInstance zeroed = h;
    for (Edge& e : zeroed.graph.edges) {
      e.capacity = 0;
    }
    const Schedule s = greedy_route(zeroed.graph, zeroed.requests, 0.5);
    CHECK(s.total_scheduled == 0);
    CHECK(s.residual[0] == 3);
  }
}

TEST_CASE("greedy schedules satisfy the integer program") {
  int checked = 0;
  for (std::uint64_t seed = 300; checked < 120; ++seed) {
    double nth = 0.0;
    const HandInstance h = random_small_instance(seed, &nth);
    const IlpInstance inst = build_ilp(h.graph, h.requests, nth);
    const Schedule s = greedy_route(h.graph, h.requests, nth);

    const Solution re = schedule_to_solution(inst, s);
    CHECK(re.feasible);
    CHECK(flows_are_consistent(inst, re));

    Solution oracle;
    try {
      oracle = brute_force_optimum(inst);
    } catch (const TooLargeError&) {
      continue;  // schedule feasibility was still checked above
    }
    CHECK(s.total_scheduled <= oracle.objective_value + 1e-9);

    for (const ScheduledPath& p : s.paths) {
      CHECK(p.path_noise <= nth);
    }
    ++checked;
  }
}

TEST_CASE("greedy is deterministic") {
  double nth = 0.0;
  const HandInstance h = random_small_instance(55, &nth);
  const Schedule a = greedy_route(h.graph, h.requests, nth);
  const Schedule b = greedy_route(h.graph, h.requests, nth);
  REQUIRE(a.paths.size() == b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i) {
    CHECK(a.paths[i].nodes == b.paths[i].nodes);
    CHECK(a.paths[i].multiplicity == b.paths[i].multiplicity);
  }
}

TEST_CASE("sorting by noise changes the allocation order") {
  // Two requests compete for one edge: request 0 has the cheaper (by hops)
  // path, request 1 the lower-noise one.
  GraphBuilder b;
  const NodeId a = b.add_station(NodeRole::User, 0, 0.0);
  const NodeId c = b.add_station(NodeRole::User, 0, 0.0);
  const NodeId d = b.add_station(NodeRole::User, 0, 0.0);
  const NodeId s1 = b.add_station(NodeRole::Switch, 10, 0.0);
  // Shared final hop s1--c with capacity 1.
  b.add_edge(s1, c, EdgeKind::Ground, 1, 0.99);
  // Request 0: a -> s1 -> c, 2 hops, noisy first hop.
  b.add_edge(a, s1, EdgeKind::Ground, 2, 0.75);
  // Request 1: d -> s2 -> s1 -> c, 3 hops, clean.
  const NodeId s2 = b.add_station(NodeRole::Switch, 10, 0.0);
  b.add_edge(d, s2, EdgeKind::Ground, 2, 0.995);
  b.add_edge(s2, s1, EdgeKind::Ground, 2, 0.995);
  HandInstance h;
  h.graph = b.build();
  h.requests = {{0, a, c, 1}, {1, d, c, 1}};

  const Schedule by_cost = greedy_route(h.graph, h.requests, 5.0, GreedySortKey::Cost);
  const Schedule by_noise = greedy_route(h.graph, h.requests, 5.0, GreedySortKey::Noise);
  CHECK(by_cost.scheduled[0] == 1);
  CHECK(by_cost.scheduled[1] == 0);
  CHECK(by_noise.scheduled[0] == 0);
  CHECK(by_noise.scheduled[1] == 1);
}
