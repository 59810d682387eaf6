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

#include <sstream>

#include "test_support.hpp"

using namespace sgiq;
using namespace sgiq::testsupport;

TEST_CASE("variable and row counts on the two-user instance") {
  const HandInstance h = two_user_one_switch(2, 2);
  const IlpInstance inst = build_ilp(h.graph, h.requests, 1.0);
  // 1 Y + 4 x + 4 phi + 1 alpha.
  CHECK(inst.num_vars() == 10);
  // 2 init/term + 2 src/dst + 2 conservation + 2 edge caps + 2 purification
  // caps + 1 repeater cap + 1 noise.
  CHECK(inst.rows.size() == 12);
  CHECK(inst.objective[inst.y_index(0)] == 1.0);
  CHECK(inst.upper[inst.y_index(0)] == 2.0);

  // Flat indexing is a bijection.
  for (int flat = 0; flat < inst.num_vars(); ++flat) {
    const VariableIndex v = inst.decode(flat);
    int re = -1;
    switch (v.kind) {
      case VarKind::Y:
        re = inst.y_index(v.request);
        break;
      case VarKind::X:
        re = inst.x_index(v.request, v.arc);
        break;
      case VarKind::Phi:
        re = inst.phi_index(v.request, v.arc);
        break;
      case VarKind::Alpha:
        re = inst.alpha_index(v.request, v.repeater);
        break;
    }
    CHECK(re == flat);
  }
}

TEST_CASE("row count formula holds on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    double nth = 0.0;
    const HandInstance h = random_small_instance(seed, &nth);
    const IlpInstance inst = build_ilp(h.graph, h.requests, nth);
    const int K = inst.num_requests();
    const int E = inst.num_edges();
    const int R = inst.num_repeaters();
    int users = 0;
    for (const GroundStation& s : h.graph.stations) {
      users += s.role == NodeRole::User ? 1 : 0;
    }
    // Flow families, no-relay rows for bystander users, then capacities,
    // purification caps, storage, and the noise budget.
    CHECK(static_cast<int>(inst.rows.size()) ==
          2 * K + 2 * K + 2 * K * R + K * (users - 2) + E + K * E + R + K);
    CHECK(inst.num_vars() == K * (1 + 4 * E + R));
  }
}

TEST_CASE("empty request list yields an empty program") {
  const HandInstance h = two_user_one_switch(1, 1);
  const IlpInstance inst = build_ilp(h.graph, {}, 0.5);
  CHECK(inst.num_vars() == 0);
  CHECK(inst.rows.empty());
  const Solution best = brute_force_optimum(inst);
  CHECK(best.feasible);
  CHECK(best.objective_value == 0.0);
}

TEST_CASE("request validation") {
  HandInstance h = two_user_one_switch(1, 1);
  SUBCASE("switch endpoint") {
    h.requests[0].destination = 2;
    CHECK_THROWS_AS(build_ilp(h.graph, h.requests, 0.5), ConfigError);
  }
  SUBCASE("source equals destination") {
    h.requests[0].destination = h.requests[0].source;
    CHECK_THROWS_AS(build_ilp(h.graph, h.requests, 0.5), ConfigError);
  }
  SUBCASE("missing endpoint") {
    h.requests[0].destination = 17;
    CHECK_THROWS_AS(build_ilp(h.graph, h.requests, 0.5), ConfigError);
  }
  SUBCASE("zero message") {
    h.requests[0].message_size = 0;
    CHECK_THROWS_AS(build_ilp(h.graph, h.requests, 0.5), ConfigError);
  }
  SUBCASE("negative threshold") {
    CHECK_THROWS_AS(build_ilp(h.graph, h.requests, -0.1), ConfigError);
  }
}

TEST_CASE("check_solution on hand-built solutions") {
  const HandInstance h = two_user_one_switch(2, 2, 0.9, 10, 0.05);
  const IlpInstance inst = build_ilp(h.graph, h.requests, 5.0);

  Solution zero;
  zero.values.assign(inst.num_vars(), 0.0);
  const FeasibilityReport zr = check_solution(inst, zero);
  CHECK(zr.feasible);
  CHECK(zr.violated_rows.empty());

  // Route both messages over A->S->B. Edge 0 is stored as (A,S) so A->S is
  // arc 0; edge 1 canonicalizes to (B,S) so S->B is its reversed arc 3.
  Solution path = zero;
  path.values[inst.y_index(0)] = 2;
  path.values[inst.x_index(0, 0)] = 2;
  path.values[inst.x_index(0, 3)] = 2;
  path.values[inst.alpha_index(0, 0)] = 2;
  const FeasibilityReport pr = check_solution(inst, path);
  CHECK(pr.feasible);

  // Shrinking an edge capacity below the flow flags exactly that row.
  HandInstance tight = two_user_one_switch(2, 1, 0.9, 10, 0.05);
  const IlpInstance tight_inst = build_ilp(tight.graph, tight.requests, 5.0);
  const FeasibilityReport tr = check_solution(tight_inst, path);
  CHECK_FALSE(tr.feasible);
  REQUIRE(tr.violated_rows.size() == 2);  // both edges over capacity
  CHECK(tight_inst.rows[tr.violated_rows[0]].label == "edge_cap(0)");
  CHECK(tight_inst.rows[tr.violated_rows[1]].label == "edge_cap(1)");

  Solution wrong_len;
  wrong_len.values.assign(3, 0.0);
  CHECK_THROWS_AS(check_solution(inst, wrong_len), DimensionMismatchError);
}

TEST_CASE("brute force on the two-user instance") {
  SUBCASE("unit message, unit capacity") {
    const HandInstance h = two_user_one_switch(1, 1, 0.9, 10, 0.05);
    const IlpInstance inst = build_ilp(h.graph, h.requests, 5.0);
    const Solution best = brute_force_optimum(inst);
    CHECK(best.feasible);
    CHECK(best.objective_value == doctest::Approx(1.0));
    CHECK(flows_are_consistent(inst, best));
  }
  SUBCASE("zero-capacity cut forces zero") {
    HandInstance h = two_user_one_switch(2, 2, 0.9, 10, 0.05);
    h.graph.edges[1].capacity = 0;  // S--B edge: cut between A and B
    const IlpInstance inst = build_ilp(h.graph, h.requests, 5.0);
    const Solution best = brute_force_optimum(inst);
    CHECK(best.objective_value == doctest::Approx(0.0));
  }
  SUBCASE("zero noise threshold forces zero") {
    const HandInstance h = two_user_one_switch(2, 2, 0.9, 10, 0.05);
    const IlpInstance inst = build_ilp(h.graph, h.requests, 0.0);
    const Solution best = brute_force_optimum(inst);
    CHECK(best.objective_value == doctest::Approx(0.0));
  }
}

TEST_CASE("brute force on the greedy example graph") {
  const HandInstance h = greedy_example(3);
  const IlpInstance inst = build_ilp(h.graph, h.requests, 0.5);
  const Solution best = brute_force_optimum(inst);
  CHECK(best.feasible);
  CHECK(best.objective_value == doctest::Approx(3.0));
  CHECK(flows_are_consistent(inst, best));
  CHECK(check_solution(inst, best).feasible);
}

TEST_CASE("brute force respects its work budget") {
  const HandInstance h = greedy_example(3);
  const IlpInstance inst = build_ilp(h.graph, h.requests, 0.5);
  CHECK_THROWS_AS(brute_force_optimum(inst, 50), TooLargeError);
}

TEST_CASE("noise threshold relaxation never shrinks the optimum") {
  const HandInstance h = greedy_example(3);
  double prev = -1.0;
  for (double nth : {0.0, 0.1, 0.2, 0.35, 0.5, 1.0}) {
    const IlpInstance inst = build_ilp(h.graph, h.requests, nth);
    const Solution best = brute_force_optimum(inst);
    CHECK(best.objective_value >= prev);
    prev = best.objective_value;
  }
  CHECK(prev == doctest::Approx(3.0));
}

TEST_CASE("scaling capacities and demand scales the optimum") {
  for (std::uint64_t seed : {4u, 9u, 23u}) {
    double nth = 0.0;
    HandInstance h = random_small_instance(seed, &nth);
    nth = 3.0;  // generous: the base optimum uses no purification
    const IlpInstance base = build_ilp(h.graph, h.requests, nth);
    const Solution base_best = brute_force_optimum(base);

    HandInstance doubled = h;
    for (Edge& e : doubled.graph.edges) {
      e.capacity *= 2;
    }
    for (GroundStation& s : doubled.graph.stations) {
      s.memory_capacity *= 2;
    }
    for (Satellite& s : doubled.graph.satellites) {
      s.memory_capacity *= 2;
    }
    for (Request& r : doubled.requests) {
      r.message_size *= 2;
    }
    const IlpInstance big = build_ilp(doubled.graph, doubled.requests, nth);
    const Solution big_best = brute_force_optimum(big);
    CHECK(big_best.objective_value >= 2.0 * base_best.objective_value - 1e-9);
  }
}

TEST_CASE("purification caps hold in optimal solutions") {
  // Single noisy path: fidelity 0.8 per edge needs purification once the
  // threshold drops below the raw path noise.
  const HandInstance h = two_user_one_switch(2, 6, 0.8, 10, 0.01);
  const double raw_noise = 2.0 * h.graph.edges[0].noise + 0.01;
  const IlpInstance inst = build_ilp(h.graph, h.requests, raw_noise * 0.75);
  const Solution best = brute_force_optimum(inst);
  CHECK(best.feasible);
  CHECK(best.objective_value >= 1.0);
  double phi_total = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e) {
    double x = 0.0, phi = 0.0;
    for (int a : {2 * e, 2 * e + 1}) {
      x += best.values[inst.x_index(0, a)];
      phi += best.values[inst.phi_index(0, a)];
    }
    phi_total += phi;
    CHECK(inst.edges[e].purification_effect * phi <= inst.edges[e].noise * x + 1e-9);
  }
  CHECK(phi_total > 0.0);  // the threshold is unreachable without purification
}

TEST_CASE("lp export carries the whole instance") {
  const HandInstance h = greedy_example(2);
  const IlpInstance inst = build_ilp(h.graph, h.requests, 0.5);
  std::ostringstream os;
  write_lp_format(os, inst);
  const std::string text = os.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("Generals") != std::string::npos);
  CHECK(text.find("Y_k0") != std::string::npos);
  CHECK(text.find("noise(0)") != std::string::npos);
  CHECK(text.find("edge_cap(0)") != std::string::npos);
  // Coefficients are printed with 17 significant digits: the repeater noise
  // amendment 0.05 cannot round-trip any shorter.
  CHECK(text.find("0.05000000000000000") != std::string::npos);
}
