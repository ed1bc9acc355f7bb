// Copyright 2026 The rdc Authors.
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

// Command line front end: solve, eval, oracle, gen, bench, lpdump.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdc/baselines.h"
#include "rdc/error.h"
#include "rdc/generators.h"
#include "rdc/instance_io.h"
#include "rdc/lp_engine.h"
#include "rdc/pipeline.h"
#include "rdc/rounding.h"

namespace {

using rdc::Error;
using rdc::ErrorCode;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBadInstance = 2;
constexpr int kInternal = 3;

int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidInstance:
    case ErrorCode::kInfeasible:
      return kBadInstance;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kCapExceeded:
    case ErrorCode::kUnavailable:
      return kUsage;
    case ErrorCode::kIterationLimit:
    case ErrorCode::kRowGenerationCap:
    case ErrorCode::kInvariant:
      return kInternal;
  }
  return kInternal;
}

struct Globals {
  std::uint64_t seed = 0;
  int trials = 10;
  double scale = 50.0;
  double overflow_base = 70.0;
  std::string setcover = "auto";
  std::string within_round = "index";
  int oracle_cap = rdc::kDefaultOracleCap;
  int group_cap = rdc::kDefaultGroupCap;
  double lp_tol = 1e-7;
  std::string out;
};

rdc::PipelineConfig MakeConfig(const Globals& g) {
  rdc::PipelineConfig config;
  config.rounding.seed = g.seed;
  config.rounding.trials = g.trials;
  config.rounding.scale = g.scale;
  config.rounding.overflow_base = g.overflow_base;
  config.rounding.strategy = rdc::setcover::ParseStrategy(g.setcover);
  if (g.within_round == "greedy") {
    config.rounding.within_round = rdc::WithinRoundOrder::kGreedy;
  } else if (g.within_round != "index") {
    throw Error(ErrorCode::kInvalidArgument, "--within-round must be index or greedy");
  }
  config.relaxation.scale = g.scale;
  config.relaxation.lp.tolerance = g.lp_tol;
  config.oracle_cap = g.oracle_cap;
  config.group_cap = g.group_cap;
  rdc::ValidateConfig(config.rounding);
  return config;
}

void Emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + g.out + "'");
  file << text;
}

std::vector<int> ParseOrder(const rdc::Corpus& corpus, const std::vector<std::string>& tokens) {
  std::vector<int> order;
  for (const std::string& token : tokens) {
    std::stringstream parts(token);
    std::string id;
    while (std::getline(parts, id, ',')) {
      if (id.empty()) continue;
      auto s = corpus.FindDocument(id);
      if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown document '" + id + "'");
      order.push_back(*s);
    }
  }
  return order;
}

std::string RankingJson(const rdc::AnyInstance& instance, const rdc::Ranking& ranking,
                        const char* label, std::int64_t extra_count = -1) {
  const rdc::Corpus& corpus = rdc::CorpusOf(instance);
  nlohmann::ordered_json out;
  out["method"] = label;
  out["cost"] = ranking.total_cost;
  nlohmann::ordered_json order = nlohmann::ordered_json::array();
  for (int s : ranking.order) order.push_back(corpus.document_id(s));
  out["order"] = order;
  nlohmann::ordered_json times = nlohmann::ordered_json::object();
  std::visit(
      [&](const auto& x) {
        for (int u = 0; u < x.num_users(); ++u) times[x.user(u).id] = ranking.satisfy_times[u];
      },
      instance);
  out["satisfy_times"] = times;
  if (extra_count >= 0) out["nodes"] = extra_count;
  return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranking for diverse users: LP rounding, baselines and benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed for rounding")->capture_default_str();
  app.add_option("--trials", g.trials, "Rounding trials (best-of)")->capture_default_str();
  app.add_option("--scale", g.scale, "Nearly-covered scale factor")->capture_default_str();
  app.add_option("--overflow-base", g.overflow_base, "Overflow threshold base")
      ->capture_default_str();
  app.add_option("--setcover", g.setcover,
                 "greedy | primal-dual | exact | disjoint | auto")
      ->capture_default_str();
  app.add_option("--within-round", g.within_round, "index | greedy")->capture_default_str();
  app.add_option("--oracle-cap", g.oracle_cap, "Largest |S| for the exact oracle")
      ->capture_default_str();
  app.add_option("--group-cap", g.group_cap, "Largest group/function count per user")
      ->capture_default_str();
  app.add_option("--lp-tol", g.lp_tol, "LP feasibility tolerance")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");

  std::string instance_path;
  bool show_rounds = false;
  bool timing = false;
  auto* solve = app.add_subcommand("solve", "Relax, round and compare with baselines");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_flag("--log", show_rounds, "Print round lines of the best trial to stderr");
  solve->add_flag("--timing", timing, "Record wall-clock milliseconds");

  std::vector<std::string> order_tokens;
  std::string method;
  auto* eval = app.add_subcommand("eval", "Cost of a ranking or of a baseline");
  eval->add_option("instance", instance_path, "Instance JSON")->required();
  eval->add_option("order", order_tokens, "Document ids, space or comma separated");
  eval->add_option("--method", method, "prp | greedy-satisfy | greedy-coverage");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum for small instances");
  oracle->add_option("instance", instance_path, "Instance JSON")->required();

  std::string gen_kind;
  rdc::GeneratorParams params;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("kind", gen_kind,
                  "random | disjoint | freq-bounded | example1 | rgc-random | rxos-random")
      ->required();
  gen->add_option("--documents", params.documents)->capture_default_str();
  gen->add_option("--topics", params.topics)->capture_default_str();
  gen->add_option("--users", params.users)->capture_default_str();
  gen->add_option("--density", params.density)->capture_default_str();
  gen->add_option("--interest-density", params.interest_density)->capture_default_str();
  gen->add_option("--k-min", params.k_min)->capture_default_str();
  gen->add_option("--k-max", params.k_max)->capture_default_str();
  gen->add_option("--max-frequency", params.max_frequency)->capture_default_str();
  gen->add_option("--max-per-doc", params.max_per_doc)->capture_default_str();
  gen->add_option("--groups", params.groups)->capture_default_str();
  gen->add_option("--functions", params.functions)->capture_default_str();

  std::string suite_path;
  std::string json_path;
  int jobs = 1;
  auto* bench = app.add_subcommand("bench", "Run a suite and write CSV");
  bench->add_option("suite", suite_path, "Suite JSON (default: built-in mixed suite)");
  bench->add_option("--json", json_path, "Also write the full JSON report here");
  bench->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bench->add_flag("--timing", timing, "Fill the millis column");

  bool base_only = false;
  auto* lpdump = app.add_subcommand("lpdump", "Write the relaxation as LP text");
  lpdump->add_option("instance", instance_path, "Instance JSON")->required();
  lpdump->add_flag("--base", base_only, "Skip row generation; dump the base program");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    rdc::PipelineConfig config = MakeConfig(g);
    config.timing = timing;

    if (solve->parsed()) {
      const rdc::AnyInstance instance = rdc::ReadInstanceFile(instance_path, g.group_cap);
      const rdc::RunReport report = rdc::RunPipeline(instance, config, instance_path);
      if (show_rounds) {
        for (const rdc::RoundLog& log : report.best_rounds) rdc::WriteRoundLog(log, std::cerr);
      }
      Emit(g, rdc::ReportJson(report));
    } else if (eval->parsed()) {
      const rdc::AnyInstance instance = rdc::ReadInstanceFile(instance_path, g.group_cap);
      if (!method.empty()) {
        const auto* x = std::get_if<rdc::Instance>(&instance);
        if (x == nullptr) {
          throw Error(ErrorCode::kInvalidArgument, "--method needs an rdc instance");
        }
        if (method != "prp" && method.rfind("greedy-", 0) != 0) {
          throw Error(ErrorCode::kInvalidArgument, "unknown method '" + method + "'");
        }
        const rdc::Ranking ranking =
            method == "prp" ? rdc::PrpRanking(*x)
                            : rdc::GreedyRanking(*x, rdc::ParseGreedyVariant(method.substr(7)));
        Emit(g, RankingJson(instance, ranking, method.c_str()));
      } else {
        const std::vector<int> order = ParseOrder(rdc::CorpusOf(instance), order_tokens);
        Emit(g, RankingJson(instance, rdc::EvaluateAny(instance, order), "given"));
      }
    } else if (oracle->parsed()) {
      const rdc::AnyInstance instance = rdc::ReadInstanceFile(instance_path, g.group_cap);
      if (const auto* x = std::get_if<rdc::Instance>(&instance)) {
        const rdc::OracleResult result = rdc::BruteForce(*x, g.oracle_cap);
        Emit(g, RankingJson(instance, result.ranking, "oracle", result.nodes));
      } else {
        const int n = rdc::CorpusOf(instance).num_documents();
        const rdc::EnumerationResult best = rdc::EnumerateOptimum(
            n,
            [&](std::span<const int> order) { return rdc::EvaluateAny(instance, order).total_cost; },
            g.oracle_cap);
        Emit(g, RankingJson(instance, rdc::EvaluateAny(instance, best.order), "oracle",
                            best.permutations));
      }
    } else if (gen->parsed()) {
      Emit(g, rdc::SerializeInstance(
                  rdc::Generate(rdc::ParseGeneratorKind(gen_kind), params, g.seed)));
    } else if (bench->parsed()) {
      rdc::Suite suite = rdc::DefaultSuite();
      if (!suite_path.empty()) {
        std::ifstream in(suite_path, std::ios::binary);
        if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + suite_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        suite = rdc::ParseSuite(text.str());
      }
      const rdc::BenchResult result = rdc::RunBench(suite, config, jobs);
      std::ostringstream csv;
      rdc::WriteCsv(result, csv);
      Emit(g, csv.str());
      if (!json_path.empty()) {
        std::ofstream file(json_path, std::ios::binary);
        if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + json_path + "'");
        file << rdc::BenchJson(result);
      }
      int failures = 0;
      for (const rdc::BenchRow& row : result.rows) {
        if (!row.report) {
          std::cerr << "member " << row.name << " failed: " << row.error << '\n';
          ++failures;
        }
      }
      if (failures > 0) std::cerr << failures << " member(s) failed\n";
    } else if (lpdump->parsed()) {
      const rdc::AnyInstance instance = rdc::ReadInstanceFile(instance_path, g.group_cap);
      rdc::FractionalSolution solution;
      if (!base_only) solution = rdc::SolveAnyRelaxation(instance, config);
      std::ostringstream text;
      rdc::lp::WriteLpText(rdc::FinalProgram(instance, solution), text);
      Emit(g, text.str());
    }
  } catch (const Error& e) {
    std::cerr << "error (" << rdc::ToString(e.code()) << "): " << e.what() << '\n';
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
