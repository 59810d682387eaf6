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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sgiq/cli.hpp"
#include "test_support.hpp"

using namespace sgiq;
using namespace sgiq::testsupport;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("sgiq_test_" + std::to_string(::getpid()) + "_" + tag + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out);
  out << content;
}

const char* kTinyConfig =
    "[network]\n"
    "stations = 2\n"
    "attachment_degree = 1\n"
    "switches = 0\n"
    "[constellation]\n"
    "satellites = 1\n"
    "planes = 1\n"
    "phasing = 0\n"
    "elevation_threshold = 20\n"
    "[requests]\n"
    "count = 1\n"
    "message_min = 1\n"
    "message_max = 1\n";

const char* kSmallExperimentConfig =
    "[network]\n"
    "stations = 8\n"
    "attachment_degree = 1\n"
    "switches = 2\n"
    "[constellation]\n"
    "satellites = 2\n"
    "planes = 1\n"
    "phasing = 0\n"
    "[requests]\n"
    "count = 2\n"
    "[sim]\n"
    "rounds = 2\n"
    "[experiment]\n"
    "scenarios = sufficient\n"
    "solvers = linear greedy\n"
    "seeds = 1 2\n"
    "noise_thresholds = 0.6\n"
    "workers = 2\n";

}  // namespace

TEST_CASE("generate writes deterministic scenario files") {
  const fs::path work = fresh_dir("gen");
  spit(work / "tiny.ini", kTinyConfig);

  cli::GenerateOptions opt;
  opt.config_path = (work / "tiny.ini").string();
  opt.seed = 5;
  opt.out_dir = (work / "a").string();
  cli::cmd_generate(opt);
  opt.out_dir = (work / "b").string();
  cli::cmd_generate(opt);

  for (const char* name :
       {"manifest.json", "scenario.txt", "ground.graph", "snapshot_t0.graph",
        "requests.txt"}) {
    CHECK(slurp(work / "a" / name) == slurp(work / "b" / name));
  }

  // Two stations, one fiber.
  const std::string ground = slurp(work / "a" / "ground.graph");
  CHECK(std::count(ground.begin(), ground.end(), '\n') >= 4);
  std::istringstream in(ground);
  const RoutingGraph g = read_graph(in);
  CHECK(g.stations.size() == 2);
  CHECK(g.edges.size() == 1);

  // A different seed changes the files.
  opt.seed = 6;
  opt.out_dir = (work / "c").string();
  cli::cmd_generate(opt);
  CHECK(slurp(work / "a" / "snapshot_t0.graph") != slurp(work / "c" / "snapshot_t0.graph"));
}

TEST_CASE("generated snapshot round-trips into the identical routing graph") {
  const fs::path work = fresh_dir("roundtrip");
  cli::GenerateOptions opt;  // defaults: the 50-station scenario
  opt.seed = 42;
  opt.out_dir = (work / "scenario").string();
  cli::cmd_generate(opt);

  std::ifstream in(work / "scenario" / "snapshot_t0.graph");
  const RoutingGraph from_file = read_graph(in);

  const ScenarioSpec spec;
  const TrialSetup trial = build_trial(spec, ScenarioKind::Sufficient, 42);
  const RoutingGraph rebuilt = trial_snapshot(spec, trial, 1);
  CHECK(from_file == rebuilt);

  std::ifstream rin(work / "scenario" / "requests.txt");
  const std::vector<Request> requests = read_requests(rin);
  CHECK(requests.size() == trial.requests.size());
}

TEST_CASE("route reproduces the worked example through files") {
  const fs::path work = fresh_dir("route");
  const HandInstance h = greedy_example(3);
  {
    std::ofstream out(work / "example.graph");
    write_graph(out, h.graph);
    std::ofstream rout(work / "example.requests");
    write_requests(rout, h.requests);
  }

  auto run_route = [&](SolverKind solver, double nth, const std::string& tag) {
    cli::RouteOptions opt;
    opt.graph_path = (work / "example.graph").string();
    opt.requests_path = (work / "example.requests").string();
    opt.solver = solver;
    opt.noise_threshold = nth;
    opt.out_dir = (work / tag).string();
    cli::cmd_route(opt);
    return nlohmann::json::parse(slurp(work / tag / "schedule.json"));
  };

  const auto greedy = run_route(SolverKind::Greedy, 0.5, "greedy");
  CHECK(greedy["total_scheduled"] == 3);
  const auto linear = run_route(SolverKind::Linear, 0.5, "linear");
  CHECK(linear["total_scheduled"] == 3);
  const auto strict = run_route(SolverKind::Linear, 0.0, "strict");
  CHECK(strict["total_scheduled"] == 0);

  const std::string feas = slurp(work / "greedy" / "feasibility.txt");
  CHECK(feas.find("feasible true") != std::string::npos);
}

TEST_CASE("route rejects missing inputs") {
  cli::RouteOptions opt;
  opt.graph_path = "/nonexistent/graph";
  opt.requests_path = "/nonexistent/requests";
  opt.out_dir = fresh_dir("route-missing").string();
  CHECK_THROWS_AS(cli::cmd_route(opt), ConfigError);
}

TEST_CASE("experiment produces the full grid") {
  const fs::path work = fresh_dir("exp");
  spit(work / "exp.ini", kSmallExperimentConfig);

  cli::ExperimentOptions opt;
  opt.config_path = (work / "exp.ini").string();
  opt.out_dir = (work / "out").string();
  const int code = cli::cmd_experiment(opt);
  CHECK(code == 0);

  const std::vector<std::string> cells = {
      "sufficient_linear_nth0.6_seed1", "sufficient_linear_nth0.6_seed2",
      "sufficient_greedy_nth0.6_seed1", "sufficient_greedy_nth0.6_seed2"};
  for (const std::string& cell : cells) {
    CHECK(fs::exists(work / "out" / cell / "manifest.json"));
    CHECK(fs::exists(work / "out" / cell / "run.csv"));
    const auto summary =
        nlohmann::json::parse(slurp(work / "out" / cell / "summary.json"));
    CHECK(summary.contains("metrics"));
    CHECK(summary["metrics"].contains("throughput"));
    CHECK(summary["version"] == cli::kVersion);
  }

  const std::string agg = slurp(work / "out" / "aggregate.csv");
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 5);  // header + 4 cells
  CHECK(agg.find("scenario,solver,noise_threshold,seed,throughput") == 0);
  CHECK_FALSE(fs::exists(work / "out" / "failures.json"));
}

TEST_CASE("cli binary smoke test") {
  const fs::path work = fresh_dir("smoke");
  const std::string bin = SGIQ_CLI_PATH;

  const std::string defaults = work / "defaults.ini";
  REQUIRE(std::system((bin + " --print-default-config > " + defaults).c_str()) == 0);
  const IniFile ini = IniFile::parse_file(defaults);
  CHECK(ini.get_int("network", "stations", 0) == 50);
  CHECK(ini.get("sim", "solver", "") == "linear");

  spit(work / "tiny.ini", kTinyConfig);
  const std::string gen_cmd = bin + " generate --config " + (work / "tiny.ini").string() +
                              " --seed 4 --out-dir " + (work / "scn").string();
  REQUIRE(std::system(gen_cmd.c_str()) == 0);
  const std::string route_cmd = bin + " route --scenario-dir " + (work / "scn").string() +
                                " --solver greedy --noise-threshold 0.8 --out-dir " +
                                (work / "routed").string();
  REQUIRE(std::system(route_cmd.c_str()) == 0);
  CHECK(fs::exists(work / "routed" / "schedule.json"));
}
