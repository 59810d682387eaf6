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

#include "sgiq/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

namespace sgiq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("SGIQ_LOG");
    if (env == nullptr) {
      return 0;
    }
    const std::string v(env);
    if (v == "debug") {
      return 2;
    }
    if (v == "info") {
      return 1;
    }
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) {
    std::cerr << "[sgiq] " << msg << "\n";
  }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out << content;
  }
  fs::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string manifest_text(const std::string& config_hash, std::uint64_t seed,
                          const std::string& solver, const std::string& scenario,
                          const std::vector<std::string>& outputs) {
  json j;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["solver"] = solver;
  j["scenario"] = scenario;
  j["version"] = kVersion;
  j["outputs"] = outputs;  // relative to the manifest's directory
  return j.dump(2) + "\n";
}

std::string run_csv_text(const RunResult& result) {
  std::ostringstream os;
  os << "round,scheduled,executed,failed,avg_fidelity,residual_qubits\n";
  for (const RoundStats& r : result.metrics.rounds) {
    os << r.round << "," << r.scheduled << "," << r.executed << "," << r.failed << ",";
    if (r.executed > 0) {
      os << format_double(r.avg_fidelity);
    }
    os << "," << r.residual_qubits << "\n";
  }
  return os.str();
}

json metrics_json(const MetricsReport& m) {
  json j;
  j["throughput"] = m.throughput;
  j["avg_fidelity"] = m.has_executed ? json(m.avg_fidelity) : json(nullptr);
  j["avg_latency"] = m.has_executed ? json(m.avg_latency) : json(nullptr);
  j["total_requested"] = m.total_requested;
  j["total_executed"] = m.total_executed;
  j["total_failed"] = m.total_failed;
  j["total_never_scheduled"] = m.total_never_scheduled;
  json rounds = json::array();
  for (const RoundStats& r : m.rounds) {
    json jr;
    jr["round"] = r.round;
    jr["scheduled"] = r.scheduled;
    jr["executed"] = r.executed;
    jr["failed"] = r.failed;
    jr["avg_fidelity"] = r.executed > 0 ? json(r.avg_fidelity) : json(nullptr);
    jr["residual_qubits"] = r.residual_qubits;
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

std::string summary_json_text(const RunResult& result, const std::string& config_hash) {
  json j;
  j["version"] = kVersion;
  j["config_hash"] = config_hash;
  j["seed"] = result.config.seed;
  j["solver"] = to_string(result.config.solver);
  j["scenario"] = to_string(result.config.scenario);
  j["noise_threshold"] = result.config.noise_threshold;
  j["rounds_configured"] = result.config.num_rounds;
  j["swap_success_prob"] = result.config.swap_success_prob;
  j["fidelity_mapping"] = result.mapping_description;
  j["latency_definition"] = result.latency_definition;
  j["metrics"] = metrics_json(result.metrics);
  json reqs = json::array();
  for (const Request& r : result.requests) {
    reqs.push_back({{"id", r.id},
                    {"source", r.source},
                    {"destination", r.destination},
                    {"message_size", r.message_size}});
  }
  j["requests"] = std::move(reqs);
  return j.dump(2) + "\n";
}

std::string run_parameters_text(const SimConfig& cfg, const ScenarioSpec& spec) {
  std::ostringstream os;
  os << canonical_spec_text(spec) << "rounds=" << cfg.num_rounds
     << "\nswap_success_prob=" << format_double(cfg.swap_success_prob)
     << "\nnoise_threshold=" << format_double(cfg.noise_threshold)
     << "\nscenario=" << to_string(cfg.scenario) << "\n";
  return os.str();
}

}  // namespace

std::string config_hash_hex(const std::string& canonical_text) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text)));
  return buf;
}

void cmd_generate(const GenerateOptions& opt) {
  ScenarioSpec spec;
  if (!opt.config_path.empty()) {
    spec = scenario_spec_from_ini(IniFile::parse_file(opt.config_path));
  }
  const TrialSetup trial = build_trial(spec, opt.scenario, opt.seed);
  const RoutingGraph snap = trial_snapshot(spec, trial, 1);

  RoutingGraph ground_only;
  ground_only.timestamp_s = 0.0;
  ground_only.stations = trial.ground.stations;
  ground_only.edges = trial.ground.edges;
  ground_only.num_node_ids = static_cast<int>(trial.ground.stations.size());

  const std::string hash = config_hash_hex(canonical_spec_text(spec) + "\nscenario=" +
                                           to_string(opt.scenario));
  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  write_file_atomic(dir / "manifest.json",
                    manifest_text(hash, opt.seed, "", to_string(opt.scenario),
                                  {"scenario.txt", "ground.graph", "snapshot_t0.graph",
                                   "requests.txt"}));
  write_file_atomic(dir / "scenario.txt", canonical_spec_text(spec));
  {
    std::ostringstream os;
    write_graph(os, ground_only);
    write_file_atomic(dir / "ground.graph", os.str());
  }
  {
    std::ostringstream os;
    write_graph(os, snap);
    write_file_atomic(dir / "snapshot_t0.graph", os.str());
  }
  {
    std::ostringstream os;
    write_requests(os, trial.requests);
    write_file_atomic(dir / "requests.txt", os.str());
  }
  log_info("generate: wrote scenario to " + opt.out_dir);
}

void cmd_route(const RouteOptions& opt) {
  fs::path graph_path = opt.graph_path;
  fs::path requests_path = opt.requests_path;
  if (!opt.scenario_dir.empty()) {
    graph_path = fs::path(opt.scenario_dir) / "snapshot_t0.graph";
    requests_path = fs::path(opt.scenario_dir) / "requests.txt";
  }
  std::ifstream gin(graph_path);
  if (!gin) {
    throw ConfigError("cannot open graph file: " + graph_path.string());
  }
  const RoutingGraph g = read_graph(gin);
  std::ifstream rin(requests_path);
  if (!rin) {
    throw ConfigError("cannot open requests file: " + requests_path.string());
  }
  const std::vector<Request> requests = read_requests(rin);

  const IlpInstance inst = build_ilp(g, requests, opt.noise_threshold);
  Schedule schedule;
  if (opt.solver == SolverKind::Linear) {
    const LpSolution frac = solve_lp(inst);
    schedule = round_and_repair(inst, frac);
  } else {
    schedule = greedy_route(g, requests, opt.noise_threshold, opt.greedy_sort);
  }
  const Solution sol = schedule_to_solution(inst, schedule);
  const FeasibilityReport report = check_solution(inst, sol);

  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  const std::string hash = config_hash_hex("route:" + graph_path.string());
  write_file_atomic(dir / "manifest.json",
                    manifest_text(hash, 0, to_string(opt.solver), "",
                                  {"schedule.json", "feasibility.txt"}));
  {
    std::ostringstream os;
    write_schedule_json(os, inst, schedule, to_string(opt.solver));
    write_file_atomic(dir / "schedule.json", os.str());
  }
  {
    std::ostringstream os;
    os << "feasible " << (report.feasible ? "true" : "false") << "\n";
    os << "objective " << sol.objective_value << "\n";
    os << "total_scheduled " << schedule.total_scheduled << "\n";
    for (int row : report.violated_rows) {
      os << "violated " << row << " " << inst.rows[row].label << " slack "
         << format_double(report.slack[row]) << "\n";
    }
    write_file_atomic(dir / "feasibility.txt", os.str());
  }
  log_info("route: total_scheduled=" + std::to_string(schedule.total_scheduled));
}

namespace {

struct ExperimentCell {
  ScenarioKind scenario;
  SolverKind solver;
  double noise_threshold;
  std::uint64_t seed;
  std::string rel_dir;
};

}  // namespace

int cmd_experiment(const ExperimentOptions& opt) {
  const IniFile ini = IniFile::parse_file(opt.config_path);
  const ScenarioSpec spec = scenario_spec_from_ini(ini);

  SimConfig base;
  base.num_rounds = opt.rounds_override > 0
                        ? opt.rounds_override
                        : static_cast<int>(ini.get_int("sim", "rounds", base.num_rounds));
  base.swap_success_prob =
      ini.get_double("sim", "swap_success_prob", base.swap_success_prob);

  std::vector<ScenarioKind> scenarios;
  for (const std::string& s : ini.get_list("experiment", "scenarios")) {
    scenarios.push_back(scenario_from_string(s));
  }
  if (scenarios.empty()) {
    scenarios.push_back(ScenarioKind::Sufficient);
  }
  std::vector<SolverKind> solvers;
  for (const std::string& s : ini.get_list("experiment", "solvers")) {
    solvers.push_back(solver_from_string(s));
  }
  if (solvers.empty()) {
    solvers = {SolverKind::Linear, SolverKind::Greedy};
  }
  std::vector<std::uint64_t> seeds;
  for (const std::string& s : ini.get_list("experiment", "seeds")) {
    seeds.push_back(std::stoull(s));
  }
  if (seeds.empty()) {
    seeds = {1};
  }
  std::vector<double> thresholds;
  for (const std::string& s : ini.get_list("experiment", "noise_thresholds")) {
    thresholds.push_back(std::stod(s));
  }
  if (thresholds.empty()) {
    thresholds.push_back(ini.get_double("sim", "noise_threshold", 0.6));
  }
  const int workers =
      std::max(1, static_cast<int>(ini.get_int("experiment", "workers", 2)));

  std::vector<ExperimentCell> cells;
  for (ScenarioKind sc : scenarios) {
    for (SolverKind sol : solvers) {
      for (double nth : thresholds) {
        for (std::uint64_t seed : seeds) {
          ExperimentCell cell{sc, sol, nth, seed, ""};
          std::ostringstream name;
          name << to_string(sc) << "_" << to_string(sol) << "_nth" << format_double(nth)
               << "_seed" << seed;
          cell.rel_dir = name.str();
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  fs::create_directories(opt.out_dir);
  const fs::path root(opt.out_dir);
  const std::string exp_hash = config_hash_hex(canonical_spec_text(spec) + "rounds=" +
                                               std::to_string(base.num_rounds));
  {
    std::vector<std::string> outputs;
    outputs.reserve(cells.size() + 1);
    outputs.push_back("aggregate.csv");
    for (const ExperimentCell& c : cells) {
      outputs.push_back(c.rel_dir);
    }
    write_file_atomic(root / "manifest.json",
                      manifest_text(exp_hash, seeds.front(), "", "", outputs));
  }

  std::vector<RunResult> results(cells.size());
  std::vector<std::string> failures(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) {
        return;
      }
      const ExperimentCell& cell = cells[i];
      try {
        SimConfig cfg = base;
        cfg.scenario = cell.scenario;
        cfg.solver = cell.solver;
        cfg.noise_threshold = cell.noise_threshold;
        cfg.seed = cell.seed;
        const RunResult result = run(cfg, spec);

        const fs::path dir = root / cell.rel_dir;
        fs::create_directories(dir);
        const std::string cell_hash =
            config_hash_hex(run_parameters_text(cfg, spec));
        write_file_atomic(dir / "manifest.json",
                          manifest_text(cell_hash, cfg.seed, to_string(cfg.solver),
                                        to_string(cfg.scenario),
                                        {"run.csv", "summary.json"}));
        write_file_atomic(dir / "run.csv", run_csv_text(result));
        write_file_atomic(dir / "summary.json", summary_json_text(result, cell_hash));
        results[i] = result;
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min<int>(workers, static_cast<int>(cells.size()));
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }

  std::ostringstream agg;
  agg << "scenario,solver,noise_threshold,seed,throughput,avg_fidelity,avg_latency,"
         "executed,requested\n";
  bool any_failure = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!failures[i].empty()) {
      any_failure = true;
      continue;
    }
    const ExperimentCell& c = cells[i];
    const MetricsReport& m = results[i].metrics;
    agg << to_string(c.scenario) << "," << to_string(c.solver) << ","
        << format_double(c.noise_threshold) << "," << c.seed << ","
        << format_double(m.throughput) << ",";
    if (m.has_executed) {
      agg << format_double(m.avg_fidelity);
    }
    agg << ",";
    if (m.has_executed) {
      agg << format_double(m.avg_latency);
    }
    agg << "," << m.total_executed << "," << m.total_requested << "\n";
  }
  write_file_atomic(root / "aggregate.csv", agg.str());

  if (any_failure) {
    json j = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!failures[i].empty()) {
        j.push_back({{"cell", cells[i].rel_dir}, {"error", failures[i]}});
      }
    }
    write_file_atomic(root / "failures.json", j.dump(2) + "\n");
    return 1;
  }
  log_info("experiment: completed " + std::to_string(cells.size()) + " cells");
  return 0;
}

int run_main(int argc, char** argv) {
  CLI::App app{"space-ground integrated quantum network routing simulator"};
  app.set_version_flag("--version", kVersion);

  bool print_defaults = false;
  app.add_flag("--print-default-config", print_defaults,
               "print the default scenario configuration and exit");

  GenerateOptions gen;
  std::string gen_scenario = "sufficient";
  auto* generate = app.add_subcommand("generate", "write scenario files");
  generate->add_option("--config", gen.config_path, "scenario config file");
  generate->add_option("--seed", gen.seed, "root seed")->capture_default_str();
  generate->add_option("--scenario", gen_scenario, "abundant|sufficient|insufficient")
      ->capture_default_str();
  generate->add_option("--out-dir", gen.out_dir, "output directory")->required();

  RouteOptions route;
  std::string route_solver = "linear";
  std::string route_sort = "cost";
  auto* route_cmd = app.add_subcommand("route", "route one round over a snapshot");
  route_cmd->add_option("--scenario-dir", route.scenario_dir,
                        "directory produced by generate");
  route_cmd->add_option("--graph", route.graph_path, "graph dump file");
  route_cmd->add_option("--requests", route.requests_path, "requests file");
  route_cmd->add_option("--solver", route_solver, "linear|greedy")->capture_default_str();
  route_cmd->add_option("--noise-threshold", route.noise_threshold, "per-message noise cap")
      ->capture_default_str();
  route_cmd->add_option("--greedy-sort-by", route_sort, "cost|noise")
      ->capture_default_str();
  route_cmd->add_option("--out-dir", route.out_dir, "output directory")->required();

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "run a scenario/solver/seed grid");
  exp_cmd->add_option("--config", exp.config_path, "experiment config file")->required();
  exp_cmd->add_option("--rounds", exp.rounds_override, "override [sim] rounds");
  exp_cmd->add_option("--out-dir", exp.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (print_defaults) {
      std::cout << default_config_text();
      return 0;
    }
    if (generate->parsed()) {
      gen.scenario = scenario_from_string(gen_scenario);
      cmd_generate(gen);
      return 0;
    }
    if (route_cmd->parsed()) {
      route.solver = solver_from_string(route_solver);
      if (route_sort == "noise") {
        route.greedy_sort = GreedySortKey::Noise;
      } else if (route_sort != "cost") {
        throw ConfigError("--greedy-sort-by must be cost or noise");
      }
      if (route.scenario_dir.empty() &&
          (route.graph_path.empty() || route.requests_path.empty())) {
        throw ConfigError("route needs --scenario-dir or both --graph and --requests");
      }
      cmd_route(route);
      return 0;
    }
    if (exp_cmd->parsed()) {
      return cmd_experiment(exp);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << app.help();
  return 0;
}

}  // namespace sgiq::cli
