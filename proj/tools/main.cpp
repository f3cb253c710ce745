// Copyright 2026 The Oneshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oneshot/adversary.hpp"
#include "oneshot/error.hpp"
#include "oneshot/interval.hpp"
#include "oneshot/io.hpp"
#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"
#include "oneshot/solver.hpp"

namespace {

using nlohmann::json;
using namespace oneshot;

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 1 input validation, 2 non-convergence, 3 resource caps.
constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitResourceCap = 3;

struct Clock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kBadInput, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit_manifest(const std::string& command, const std::string& input_bytes,
                   const json& config, const json& result, const Clock& clock) {
  json manifest;
  manifest["command"] = command;
  manifest["input_digest"] = digest_hex(content_digest(input_bytes));
  manifest["config"] = config;
  manifest["version"] = kVersion;
  manifest["wall_time_ms"] = clock.ms();
  manifest["result"] = result;
  std::cout << manifest.dump(2) << "\n";
}

OracleChoice parse_oracle(const std::string& name) {
  if (name == "exact") return OracleChoice::kExact;
  if (name == "line-dp") return OracleChoice::kLineDp;
  if (name == "grid") return OracleChoice::kGrid;
  throw Error(Errc::kBadInput, "unknown oracle: " + name);
}

struct SolveFlags {
  std::string metric_path;
  std::string oracle = "exact";
  double delta = 0.5;
  double gamma = 0.0;  // 0 = use the delta-derived default
  double beta = 1.0;
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  int max_iters = 500;
};

SolverConfig to_config(const SolveFlags& flags) {
  SolverConfig config;
  config.oracle = parse_oracle(flags.oracle);
  config.delta = flags.delta;
  if (flags.gamma > 0) config.gamma_override = flags.gamma;
  config.beta = flags.beta;
  config.rel_tol = flags.rel_tol;
  config.abs_tol = flags.abs_tol;
  config.max_iters = flags.max_iters;
  return config;
}

json guarantee_json(const OracleGuarantee& guarantee) {
  json j;
  j["kind"] = guarantee.kind == OracleGuarantee::Kind::kExact ? "exact"
              : guarantee.kind == OracleGuarantee::Kind::kClassExact
                  ? "class_exact"
                  : "heuristic";
  if (guarantee.kind == OracleGuarantee::Kind::kClassExact) {
    j["delta"] = guarantee.delta;
  }
  return j;
}

int cmd_solve(const SolveFlags& flags) {
  Clock clock;
  const std::string bytes = slurp(flags.metric_path);
  const MetricSpace space = load_metric_json(json::parse(bytes));
  const SolverConfig config = to_config(flags);
  const SolveResult result = constraint_generation(space, config);
  const Baseline baseline = deterministic_baseline(space);

  json config_json = {{"oracle", flags.oracle},
                      {"delta", flags.delta},
                      {"gamma", flags.gamma},
                      {"beta", flags.beta},
                      {"rel_tol", flags.rel_tol},
                      {"abs_tol", flags.abs_tol},
                      {"max_iters", flags.max_iters},
                      {"scale", space.scale}};
  json out;
  out["p"] = result.p.p;
  out["upper"] = result.upper;
  out["lower_bound"] = result.lower_bound;
  out["lipschitz_upper"] = result.lipschitz_upper;
  out["restricted_value"] = result.restricted_value;
  out["deterministic_baseline"] = {{"point", baseline.point},
                                   {"worst_error", baseline.worst_error}};
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  out["active_set_size"] = result.active_set.size();
  out["guarantee"] = guarantee_json(result.guarantee);
  emit_manifest("solve", bytes, config_json, out, clock);

  std::cerr << "solve: n=" << space.n << " upper=" << result.upper
            << " lower=" << result.lower_bound
            << " iterations=" << result.iterations
            << (result.converged ? "" : " (not converged)") << "\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_adversary(const std::string& metric_path,
                  const std::string& distribution_path,
                  const SolveFlags& flags) {
  Clock clock;
  const std::string metric_bytes = slurp(metric_path);
  const std::string dist_bytes = slurp(distribution_path);
  const MetricSpace space = load_metric_json(json::parse(metric_bytes));
  const SamplingDistribution p =
      load_distribution_json(json::parse(dist_bytes));

  OracleReport report;
  const OracleChoice oracle = parse_oracle(flags.oracle);
  if (oracle == OracleChoice::kExact) {
    report = exact_oracle_small(space, p);
  } else if (oracle == OracleChoice::kLineDp) {
    const LineMetric line = as_line(space);
    const LineClassParams params =
        flags.gamma > 0 ? LineClassParams::from_gamma(flags.gamma, space.n)
                        : LineClassParams::from_delta(flags.delta, space.n);
    report = line_dp_oracle(line, p, params);
  } else {
    const GridStructure grid =
        build_grid(space, flags.beta, flags.delta,
                   flags.gamma > 0 ? std::optional<double>(flags.gamma)
                                   : std::nullopt);
    report = doubling_enum_oracle(space, grid, p);
  }

  json config_json = {{"oracle", flags.oracle},
                      {"delta", flags.delta},
                      {"gamma", flags.gamma},
                      {"beta", flags.beta},
                      {"scale", space.scale}};
  json out;
  out["witness"] = {{"values", report.witness.values}};
  out["value"] = report.value;
  out["guarantee"] = guarantee_json(report.guarantee);
  emit_manifest("adversary", metric_bytes + dist_bytes, config_json, out,
                clock);
  std::cerr << "adversary: value=" << report.value << " ("
            << report.guarantee.str() << ")\n";
  return kExitOk;
}

int cmd_lower_bound(const std::string& metric_path, double beta) {
  Clock clock;
  const std::string bytes = slurp(metric_path);
  const MetricSpace space = load_metric_json(json::parse(bytes));
  const MedianInfo median = one_median(space);
  const double bound = randomized_lower_bound(median, beta);

  json out;
  out["median_index"] = median.median_index;
  out["median_label"] = space.labels[median.median_index];
  out["mean_distance"] = median.mean_distance;
  out["beta"] = beta;
  out["lower_bound"] = bound;
  emit_manifest("lower-bound", bytes, json{{"beta", beta}}, out, clock);
  std::cerr << "lower-bound: m=" << median.mean_distance << " bound=" << bound
            << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& metric_path, const std::string& function_path,
             const std::string& distribution_path) {
  Clock clock;
  const std::string metric_bytes = slurp(metric_path);
  const std::string fn_bytes = slurp(function_path);
  const std::string dist_bytes = slurp(distribution_path);
  const MetricSpace space = load_metric_json(json::parse(metric_bytes));
  const DiscreteFunction f = load_function_json(json::parse(fn_bytes));
  const SamplingDistribution p =
      load_distribution_json(json::parse(dist_bytes));
  if (f.size() != space.n) {
    throw Error(Errc::kDimensionMismatch, "function does not match metric");
  }
  const double value = estimation_error(f, p);

  json out;
  out["error"] = value;
  out["average"] = average(f);
  out["lipschitz"] = is_lipschitz(space, f);
  emit_manifest("eval", metric_bytes + fn_bytes + dist_bytes, json::object(),
                out, clock);
  std::cerr << "eval: error=" << value << "\n";
  return kExitOk;
}

int cmd_interval(bool verify, int grid_n, double gamma) {
  Clock clock;
  const IntervalSolution sol = optimal_interval();
  json out;
  out["c"] = sol.c;
  out["support"] = {sol.support_lo, sol.support_hi};
  out["value"] = sol.value;
  out["b_star"] = sol.b_star;
  if (verify) {
    NumericAdversaryOptions options;
    options.gamma = gamma;
    const SamplingDistribution p =
        discretize_uniform_density(sol.c, 1.0 - sol.c, grid_n);
    const double numeric = numeric_interval_adversary(p, grid_n, options);
    out["numeric"] = {{"grid_n", grid_n},
                      {"gamma", gamma},
                      {"value", numeric},
                      {"gap", numeric - sol.value}};
    std::cerr << "interval verify: closed-form=" << sol.value
              << " numeric=" << numeric << " gap=" << numeric - sol.value
              << "\n";
  } else {
    std::cerr << "interval: sample uniformly from [" << sol.support_lo << ", "
              << sol.support_hi << "], worst-case error " << sol.value << "\n";
  }
  emit_manifest("interval", "",
                json{{"verify", verify}, {"grid_n", grid_n}, {"gamma", gamma}},
                out, clock);
  return kExitOk;
}

int cmd_gen(const std::string& out_dir, unsigned seed, int count) {
  Clock clock;
  std::filesystem::create_directories(out_dir);
  std::mt19937_64 rng(seed);
  json files = json::array();
  for (int i = 0; i < count; ++i) {
    json fixture;
    const int n = 3 + static_cast<int>(rng() % 6);
    if (i % 2 == 0) {
      std::vector<double> coords(n);
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      for (double& c : coords) c = uniform(rng);
      std::sort(coords.begin(), coords.end());
      coords.back() = std::max(coords.back(), coords.front() + 0.1);
      fixture["kind"] = "line";
      fixture["coords"] = coords;
    } else {
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      std::vector<std::vector<double>> pts(n, std::vector<double>(2));
      for (auto& pt : pts) {
        pt[0] = uniform(rng);
        pt[1] = uniform(rng);
      }
      fixture["kind"] = "points";
      fixture["dim"] = 2;
      fixture["coords"] = pts;
    }
    std::ostringstream name;
    name << "fixture_" << i << ".json";
    const std::string path =
        (std::filesystem::path(out_dir) / name.str()).string();
    std::ofstream out(path);
    out << fixture.dump(2) << "\n";
    files.push_back({{"path", path},
                     {"digest", digest_hex(content_digest(fixture.dump(2)))}});
  }
  json config = {{"seed", seed}, {"count", count}, {"out", out_dir}};
  emit_manifest("gen", out_dir, config, json{{"files", files}}, clock);
  std::cerr << "gen: wrote " << count << " fixtures to " << out_dir << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& suite_dir, unsigned seed,
              const std::string& oracle, bool with_time) {
  std::vector<std::string> paths;
  if (std::filesystem::exists(suite_dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(suite_dir)) {
      if (entry.path().extension() == ".json") {
        paths.push_back(entry.path().string());
      }
    }
  } else {
    std::cerr << "bench: unreadable suite directory " << suite_dir << "\n";
    return kExitBadInput;
  }
  std::sort(paths.begin(), paths.end());

  // CSV schema v1. The time_ms column is left empty unless --with-time is
  // given, so default runs are byte-identical across repetitions.
  std::cout << "# oneshot bench csv v1; seed=" << seed << "; oracle=" << oracle
            << "\n";
  std::cout
      << "instance,n,kind,oracle,value,deterministic_m,lower_bound,iterations,"
         "converged,time_ms\n";
  for (const std::string& path : paths) {
    Clock clock;
    const json fixture = read_json_file(path);
    const MetricSpace space = load_metric_json(fixture);
    SolveFlags flags;
    flags.oracle = oracle;
    const SolverConfig config = to_config(flags);
    const SolveResult result = constraint_generation(space, config);
    const Baseline baseline = deterministic_baseline(space);
    std::ostringstream row;
    row << std::filesystem::path(path).filename().string() << "," << space.n
        << "," << (space.kind == MetricKind::kLine ? "line" : "general") << ","
        << oracle << "," << result.upper << "," << baseline.worst_error << ","
        << result.lower_bound << "," << result.iterations << ","
        << (result.converged ? 1 : 0) << ",";
    if (with_time) row << clock.ms();
    std::cout << row.str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax single-sample average estimation on metric spaces"};
  app.require_subcommand(1);

  SolveFlags flags;
  std::string distribution_path;
  std::string function_path;
  unsigned seed = 0;
  int count = 10;
  int grid_n = 21;
  double lb_beta = 1.0;
  std::string suite_dir;
  std::string out_dir = "fixtures";
  bool with_time = false;

  CLI::App* solve = app.add_subcommand("solve", "compute the optimal sampling distribution");
  solve->add_option("--metric", flags.metric_path, "metric JSON (or - for stdin)")->required();
  solve->add_option("--oracle", flags.oracle, "exact|line-dp|grid");
  solve->add_option("--delta", flags.delta, "target approximation");
  solve->add_option("--gamma", flags.gamma, "explicit class resolution");
  solve->add_option("--beta", flags.beta, "doubling dimension");
  solve->add_option("--rel-tol", flags.rel_tol, "relative stop tolerance");
  solve->add_option("--abs-tol", flags.abs_tol, "absolute stop tolerance");
  solve->add_option("--max-iters", flags.max_iters, "iteration cap");

  CLI::App* adversary = app.add_subcommand("adversary", "find a worst-case function for a distribution");
  adversary->add_option("--metric", flags.metric_path)->required();
  adversary->add_option("--distribution", distribution_path)->required();
  adversary->add_option("--oracle", flags.oracle, "exact|line-dp|grid");
  adversary->add_option("--delta", flags.delta);
  adversary->add_option("--gamma", flags.gamma);
  adversary->add_option("--beta", flags.beta);

  CLI::App* lower = app.add_subcommand("lower-bound", "median-based randomized lower bound");
  lower->add_option("--metric", flags.metric_path)->required();
  lower->add_option("--beta", lb_beta, "doubling dimension");

  CLI::App* eval = app.add_subcommand("eval", "estimation error of a function under a distribution");
  eval->add_option("--metric", flags.metric_path)->required();
  eval->add_option("--function", function_path)->required();
  eval->add_option("--distribution", distribution_path)->required();

  CLI::App* interval = app.add_subcommand("interval", "closed-form optimum on [0,1]");
  CLI::App* verify = interval->add_subcommand("verify", "numeric cross-check on a discretized grid");
  verify->add_option("--grid-n", grid_n, "grid size");
  verify->add_option("--gamma", flags.gamma, "class resolution")->default_val(0.01);

  CLI::App* bench = app.add_subcommand("bench", "solve every fixture in a directory, emit CSV");
  bench->add_option("--suite", suite_dir, "fixtures directory")->required();
  bench->add_option("--seed", seed, "echoed in the CSV header");
  bench->add_option("--oracle", flags.oracle);
  bench->add_flag("--with-time", with_time, "fill the time_ms column (non-reproducible bytes)");

  CLI::App* gen = app.add_subcommand("gen", "generate random fixtures");
  gen->add_option("--out", out_dir, "output directory");
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--count", count, "number of fixtures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(flags);
    if (adversary->parsed()) {
      return cmd_adversary(flags.metric_path, distribution_path, flags);
    }
    if (lower->parsed()) return cmd_lower_bound(flags.metric_path, lb_beta);
    if (eval->parsed()) {
      return cmd_eval(flags.metric_path, function_path, distribution_path);
    }
    if (interval->parsed()) {
      return cmd_interval(verify->parsed(), grid_n,
                          flags.gamma > 0 ? flags.gamma : 0.01);
    }
    if (bench->parsed()) return cmd_bench(suite_dir, seed, flags.oracle, with_time);
    if (gen->parsed()) return cmd_gen(out_dir, seed, count);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return is_resource_cap(e.code()) ? kExitResourceCap : kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [BadInput]: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
