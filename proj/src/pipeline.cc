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

#include "rdc/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <type_traits>

#include "json.hpp"
#include "rdc/error.h"
#include "time_indexed_program.h"

namespace rdc {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

ExtensionConfig ToExtension(const PipelineConfig& config) {
  return {config.relaxation, config.rounding, config.group_cap};
}

std::vector<int> GroupCounts(const AnyInstance& instance) {
  std::vector<int> counts;
  std::visit(Overloaded{
                 [&](const Instance& x) { counts.assign(x.num_users(), 1); },
                 [&](const GroupInstance& x) {
                   for (const GroupUser& u : x.users()) counts.push_back(u.groups.size());
                 },
                 [&](const XosInstance& x) {
                   for (const XosUser& u : x.users()) counts.push_back(u.functions.size());
                 },
             },
             instance);
  return counts;
}

void Check(bool ok, const std::string& what, double lhs, double rhs) {
  if (ok) return;
  std::ostringstream msg;
  msg.precision(12);
  msg << "report invariant broken: " << what << " (" << lhs << " vs " << rhs << ")";
  throw Error(ErrorCode::kInvariant, msg.str());
}

OrderedJson DocIds(const Corpus& corpus, std::span<const int> docs) {
  OrderedJson out = OrderedJson::array();
  for (int s : docs) out.push_back(corpus.document_id(s));
  return out;
}

OrderedJson Optional(const std::optional<std::int64_t>& v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

// Numbers in the CSV are printed with a fixed format so reruns diff cleanly.
std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string Cell(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string CsvName(const std::string& name) {
  if (name.find_first_of(",\"\n") == std::string::npos) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---- suite parsing ----------------------------------------------------------

[[noreturn]] void SuiteError(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

int SuiteInt(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) SuiteError(where, "expected an integer");
  return v.get<int>();
}

double SuiteNumber(const Json& v, const std::string& where) {
  if (!v.is_number()) SuiteError(where, "expected a number");
  return v.get<double>();
}

GeneratorParams ParseParams(const Json& object, const std::string& where) {
  if (!object.is_object()) SuiteError(where, "expected an object");
  GeneratorParams p;
  const std::map<std::string, int*> ints = {
      {"documents", &p.documents}, {"topics", &p.topics},   {"users", &p.users},
      {"k_min", &p.k_min},         {"k_max", &p.k_max},     {"max_frequency", &p.max_frequency},
      {"max_per_doc", &p.max_per_doc}, {"groups", &p.groups}, {"functions", &p.functions}};
  const std::map<std::string, double*> reals = {{"density", &p.density},
                                                {"interest_density", &p.interest_density}};
  for (const auto& [key, value] : object.items()) {
    const std::string at = where + "/" + key;
    if (auto it = ints.find(key); it != ints.end()) {
      *it->second = SuiteInt(value, at);
    } else if (auto jt = reals.find(key); jt != reals.end()) {
      *jt->second = SuiteNumber(value, at);
    } else {
      SuiteError(at, "unknown parameter");
    }
  }
  return p;
}

void ApplySatisfaction(const AnyInstance& instance, const FractionalSolution& fractional,
                       const BestOfResult& rounding, RunReport& report) {
  for (const TrialResult& trial : rounding.trials) {
    for (const RoundLog& log : trial.rounds) {
      if (log.overflowed) continue;
      const std::int64_t budget = std::int64_t{1} << log.k;
      for (int u = 0; u < report.users; ++u) {
        if (budget < fractional.half_times[u]) continue;
        ++report.satisfaction_checks;
        if (!SatisfiedBy(instance, u, log.selected)) ++report.satisfaction_failures;
      }
    }
  }
}

void RunBaselines(const AnyInstance& instance, const PipelineConfig& config, RunReport& report) {
  const int n = report.documents;
  if (const auto* rdc = std::get_if<Instance>(&instance)) {
    report.prp_cost = PrpRanking(*rdc).total_cost;
    report.greedy_satisfy_cost = GreedyRanking(*rdc, GreedyVariant::kSatisfy).total_cost;
    report.greedy_coverage_cost = GreedyRanking(*rdc, GreedyVariant::kCoverage).total_cost;
    if (n <= config.oracle_cap) {
      OracleResult oracle = BruteForce(*rdc, config.oracle_cap);
      report.oracle_cost = oracle.ranking.total_cost;
      report.oracle_order = oracle.ranking.order;
    }
    return;
  }
  if (n <= config.oracle_cap) {
    EnumerationResult best = EnumerateOptimum(
        n, [&](std::span<const int> order) { return EvaluateAny(instance, order).total_cost; },
        config.oracle_cap);
    report.oracle_cost = best.cost;
    report.oracle_order = best.order;
  }
}

void CheckChain(const RunReport& r) {
  const double tol = kChainTolerance;
  Check(r.half_bound <= r.lp_objective + tol, "half bound <= LP objective", r.half_bound,
        r.lp_objective);
  Check(r.lower_bound <= r.solver_cost + tol, "LP bound <= solver cost", r.lower_bound,
        static_cast<double>(r.solver_cost));
  if (!r.oracle_cost) return;
  const double oracle = static_cast<double>(*r.oracle_cost);
  Check(r.lower_bound <= oracle + tol, "LP bound <= oracle cost", r.lower_bound, oracle);
  Check(*r.oracle_cost <= r.solver_cost, "oracle <= solver", oracle,
        static_cast<double>(r.solver_cost));
  for (const auto& [label, cost] : {std::pair{"prp", r.prp_cost},
                                    std::pair{"greedy-satisfy", r.greedy_satisfy_cost},
                                    std::pair{"greedy-coverage", r.greedy_coverage_cost}}) {
    if (cost) {
      Check(*r.oracle_cost <= *cost, std::string("oracle <= ") + label, oracle,
            static_cast<double>(*cost));
    }
  }
}

OrderedJson RoundJson(const RoundLog& log, const Corpus& corpus) {
  OrderedJson out;
  out["k"] = log.k;
  out["t"] = log.t;
  out["nearly_covered"] = log.nearly_covered;
  out["cover"] = DocIds(corpus, log.cover);
  out["rho"] = log.certified_rho;
  out["cover_lp"] = log.cover_lp;
  out["sampled"] = log.sampled.size();
  out["threshold"] = log.threshold;
  out["overflow"] = log.overflowed;
  out["h_bound_ok"] = log.h_bound_ok;
  out["selected"] = DocIds(corpus, log.selected);
  return out;
}

}  // namespace

std::optional<std::int64_t> RunReport::greedy_cost() const {
  if (greedy_satisfy_cost && greedy_coverage_cost) {
    return std::min(*greedy_satisfy_cost, *greedy_coverage_cost);
  }
  return greedy_satisfy_cost ? greedy_satisfy_cost : greedy_coverage_cost;
}

FractionalSolution SolveAnyRelaxation(const AnyInstance& instance, const PipelineConfig& config) {
  return std::visit(Overloaded{
                        [&](const Instance& x) { return SolveRelaxation(x, config.relaxation); },
                        [&](const GroupInstance& x) {
                          return SolveRgcRelaxation(x, ToExtension(config));
                        },
                        [&](const XosInstance& x) {
                          return SolveRxosRelaxation(x, ToExtension(config));
                        },
                    },
                    instance);
}

lp::LinearProgram FinalProgram(const AnyInstance& instance, const FractionalSolution& solution) {
  BaseProgram base = internal::BuildTimeIndexedProgram(CorpusOf(instance).num_documents(),
                                                       GroupCounts(instance));
  for (const GeneratedRow& g : solution.rows) {
    lp::Row row = std::visit(
        Overloaded{
            [&](const Instance& x) {
              return MakeKnapsackRow(x, g.user, g.time, g.fixed).ToRow(base.layout);
            },
            [&](const GroupInstance& x) {
              const RequirementGroup& group = x.user(g.user).groups.at(g.group);
              return MakeGroupKnapsackRow(x.corpus(), group.interests, group.threshold, g.user,
                                          g.group, g.time, g.fixed)
                  .ToRow(base.layout);
            },
            [&](const XosInstance& x) {
              return MakeXosKnapsackRow(x, g.user, g.group, g.time, g.fixed).ToRow(base.layout);
            },
        },
        instance);
    base.program.AddRow(std::move(row));
  }
  return std::move(base.program);
}

Ranking EvaluateAny(const AnyInstance& instance, std::span<const int> order) {
  return std::visit(Overloaded{
                        [&](const Instance& x) { return Evaluate(x, order); },
                        [&](const GroupInstance& x) { return EvaluateRgc(x, order); },
                        [&](const XosInstance& x) { return EvaluateRxos(x, order); },
                    },
                    instance);
}

bool SatisfiedBy(const AnyInstance& instance, int user, std::span<const int> docs) {
  return std::visit(
      Overloaded{
          [&](const Instance& x) {
            return CoverageCount(x, user, docs) >= x.user(user).threshold;
          },
          [&](const GroupInstance& x) {
            std::vector<char> covered(x.num_topics(), 0);
            for (int s : docs) {
              for (int e : x.corpus().topics_of(s)) covered[e] = 1;
            }
            for (const RequirementGroup& g : x.user(user).groups) {
              int count = 0;
              for (int e : g.interests) count += covered[e];
              if (count >= g.threshold) return true;
            }
            return false;
          },
          [&](const XosInstance& x) {
            for (const XosFunction& f : x.user(user).functions) {
              double total = 0.0;
              for (int s : docs) total += f.weights[s];
              if (total >= 1.0 - kXosTolerance) return true;
            }
            return false;
          },
      },
      instance);
}

RunReport RunPipeline(const AnyInstance& instance, const PipelineConfig& config,
                      std::string name) {
  const auto start = std::chrono::steady_clock::now();
  ValidateConfig(config.rounding);
  if (config.oracle_cap < 0) {
    throw Error(ErrorCode::kInvalidArgument, "oracle cap must be nonnegative");
  }
  RunReport report;
  report.name = std::move(name);
  report.kind = KindOf(instance);
  report.documents = CorpusOf(instance).num_documents();
  report.topics = CorpusOf(instance).num_topics();
  report.users = NumUsers(instance);
  report.seed = config.rounding.seed;
  report.config = config;
  if (config.embed_instance) report.instance_json = SerializeInstance(instance);

  ExtensionResult solved;
  if (const auto* rdc = std::get_if<Instance>(&instance)) {
    solved.fractional = SolveRelaxation(*rdc, config.relaxation);
    solved.rounding = BestOf(*rdc, solved.fractional, config.rounding);
  } else if (const auto* rgc = std::get_if<GroupInstance>(&instance)) {
    solved = SolveRgc(*rgc, ToExtension(config));
  } else {
    solved = SolveRxos(std::get<XosInstance>(instance), ToExtension(config));
  }
  const FractionalSolution& frac = solved.fractional;
  const BestOfResult& rounding = solved.rounding;

  report.lp_objective = frac.lp_objective;
  report.lower_bound = frac.lower_bound;
  report.half_bound = frac.HalfBound();
  report.lp_rows = static_cast<int>(frac.rows.size());
  report.lp_iterations = frac.iterations;
  report.lp_pivots = frac.pivots;

  report.solver_cost = rounding.best.ranking.total_cost;
  report.solver_order = rounding.best.ranking.order;
  report.best_trial = rounding.best.trial;
  report.trial_costs = rounding.trial_costs;
  report.best_rounds = rounding.best.rounds;
  report.rho_run = rounding.rho;
  report.overflowed_rounds = rounding.overflowed_rounds;
  report.total_rounds = rounding.total_rounds;
  report.overflow_rate = rounding.total_rounds == 0
                             ? 0.0
                             : static_cast<double>(rounding.overflowed_rounds) /
                                   rounding.total_rounds;
  report.h_bound_violations = rounding.h_bound_violations;
  ApplySatisfaction(instance, frac, rounding, report);

  RunBaselines(instance, config, report);

  if (report.lower_bound > 0.0) {
    report.ratio = static_cast<double>(report.solver_cost) / report.lower_bound;
  } else {
    report.ratio = report.solver_cost == 0 ? 1.0 : INFINITY;
  }
  CheckChain(report);
  if (config.timing) {
    report.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  }
  return report;
}

std::string ReportJson(const RunReport& r, bool rounds) {
  OrderedJson out;
  out["name"] = r.name;
  out["kind"] = std::string(ToString(r.kind));
  out["documents"] = r.documents;
  out["topics"] = r.topics;
  out["users"] = r.users;
  out["seed"] = r.seed;

  OrderedJson lp;
  lp["objective"] = r.lp_objective;
  lp["lower_bound"] = r.lower_bound;
  lp["half_bound"] = r.half_bound;
  lp["rows"] = r.lp_rows;
  lp["iterations"] = r.lp_iterations;
  lp["pivots"] = r.lp_pivots;
  out["lp"] = lp;

  OrderedJson costs;
  costs["solver"] = r.solver_cost;
  costs["oracle"] = Optional(r.oracle_cost);
  costs["prp"] = Optional(r.prp_cost);
  costs["greedy_satisfy"] = Optional(r.greedy_satisfy_cost);
  costs["greedy_coverage"] = Optional(r.greedy_coverage_cost);
  out["costs"] = costs;
  out["ratio"] = r.ratio;

  Corpus corpus;
  if (!r.instance_json.empty()) corpus = CorpusOf(ParseInstance(r.instance_json, r.config.group_cap));
  auto order_json = [&](const std::vector<int>& order) {
    if (corpus.num_documents() == r.documents) return DocIds(corpus, order);
    return OrderedJson(order);
  };
  out["solver_order"] = order_json(r.solver_order);
  out["oracle_order"] = r.oracle_cost ? order_json(r.oracle_order) : OrderedJson(nullptr);

  OrderedJson rounding;
  rounding["trials"] = r.trial_costs.size();
  rounding["best_trial"] = r.best_trial;
  rounding["trial_costs"] = r.trial_costs;
  rounding["rho_run"] = r.rho_run;
  rounding["overflowed_rounds"] = r.overflowed_rounds;
  rounding["total_rounds"] = r.total_rounds;
  rounding["overflow_rate"] = r.overflow_rate;
  rounding["h_bound_violations"] = r.h_bound_violations;
  rounding["satisfaction_checks"] = r.satisfaction_checks;
  rounding["satisfaction_failures"] = r.satisfaction_failures;
  if (rounds) {
    OrderedJson logs = OrderedJson::array();
    for (const RoundLog& log : r.best_rounds) {
      if (corpus.num_documents() == r.documents) {
        logs.push_back(RoundJson(log, corpus));
      } else {
        std::ostringstream line;
        WriteRoundLog(log, line);
        std::string text = line.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        logs.push_back(text);
      }
    }
    rounding["rounds"] = logs;
  }
  out["rounding"] = rounding;

  OrderedJson cfg;
  cfg["scale"] = r.config.rounding.scale;
  cfg["overflow_base"] = r.config.rounding.overflow_base;
  cfg["trials"] = r.config.rounding.trials;
  cfg["seed"] = r.config.rounding.seed;
  cfg["setcover"] = std::string(setcover::ToString(r.config.rounding.strategy));
  cfg["within_round"] =
      r.config.rounding.within_round == WithinRoundOrder::kGreedy ? "greedy" : "index";
  cfg["relaxation_scale"] = r.config.relaxation.scale;
  cfg["separation_tolerance"] = r.config.relaxation.separation_tolerance;
  cfg["lp_tolerance"] = r.config.relaxation.lp.tolerance;
  cfg["oracle_cap"] = r.config.oracle_cap;
  cfg["group_cap"] = r.config.group_cap;
  out["config"] = cfg;
  out["millis"] = r.millis;
  if (!r.instance_json.empty()) out["instance"] = OrderedJson::parse(r.instance_json);
  return out.dump(2) + "\n";
}

// ---- bench ------------------------------------------------------------------

Suite ParseSuite(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("suite: ") + e.what());
  }
  if (!root.is_object()) SuiteError("", "expected an object");
  Suite suite;
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) SuiteError("/name", "expected a string");
    suite.name = it->get<std::string>();
  }
  auto members = root.find("members");
  if (members == root.end()) SuiteError("", "missing field 'members'");
  if (!members->is_array()) SuiteError("/members", "expected an array");
  for (std::size_t i = 0; i < members->size(); ++i) {
    const std::string where = "/members/" + std::to_string(i);
    const Json& m = (*members)[i];
    if (!m.is_object()) SuiteError(where, "expected an object");
    SuiteMember member;
    for (const auto& [key, value] : m.items()) {
      const std::string at = where + "/" + key;
      if (key == "generator") {
        if (!value.is_string()) SuiteError(at, "expected a string");
        try {
          member.generator = ParseGeneratorKind(value.get<std::string>());
        } catch (const Error& e) {
          SuiteError(at, e.what());
        }
      } else if (key == "group") {
        if (!value.is_string()) SuiteError(at, "expected a string");
        member.group = value.get<std::string>();
      } else if (key == "count") {
        member.count = SuiteInt(value, at);
        if (member.count < 1) SuiteError(at, "count must be at least 1");
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) SuiteError(at, "expected a nonnegative integer");
        member.seed = value.get<std::uint64_t>();
      } else if (key == "trials") {
        member.trials = SuiteInt(value, at);
        if (*member.trials < 1) SuiteError(at, "trials must be at least 1");
      } else if (key == "params") {
        member.params = ParseParams(value, at);
      } else {
        SuiteError(at, "unknown field");
      }
    }
    if (!m.contains("generator")) SuiteError(where, "missing field 'generator'");
    if (member.group.empty()) member.group = std::string(ToString(member.generator));
    suite.members.push_back(std::move(member));
  }
  return suite;
}

Suite DefaultSuite() {
  Suite suite;
  suite.name = "default";
  SuiteMember random;
  random.generator = GeneratorKind::kRandom;
  random.group = "random";
  random.params.documents = 8;
  random.params.topics = 10;
  random.params.users = 6;
  random.seed = 1000;
  random.count = 10;
  suite.members.push_back(random);

  SuiteMember disjoint = random;
  disjoint.generator = GeneratorKind::kDisjoint;
  disjoint.group = "disjoint";
  disjoint.params.topics = 16;
  disjoint.seed = 2000;
  disjoint.count = 5;
  suite.members.push_back(disjoint);

  SuiteMember bounded = random;
  bounded.generator = GeneratorKind::kFreqBounded;
  bounded.group = "freq-bounded";
  bounded.seed = 3000;
  bounded.count = 5;
  suite.members.push_back(bounded);

  SuiteMember large = random;
  large.group = "random-large";
  large.params.documents = 24;
  large.params.topics = 20;
  large.params.users = 10;
  large.params.density = 0.15;
  large.seed = 4000;
  large.count = 3;
  suite.members.push_back(large);

  SuiteMember example;
  example.generator = GeneratorKind::kExample1;
  example.group = "example1";
  suite.members.push_back(example);
  return suite;
}

BenchResult RunBench(const Suite& suite, const PipelineConfig& config, int jobs) {
  struct Task {
    const SuiteMember* member;
    std::uint64_t seed;
    std::string name;
  };
  std::vector<Task> tasks;
  for (const SuiteMember& m : suite.members) {
    for (int i = 0; i < m.count; ++i) {
      const std::uint64_t seed = m.seed + static_cast<std::uint64_t>(i);
      tasks.push_back({&m, seed, m.group + "-" + std::to_string(i) + "-s" + std::to_string(seed)});
    }
  }

  BenchResult result;
  result.suite = suite.name;
  result.rows.resize(tasks.size());
  auto run = [&](std::size_t i) {
    const Task& task = tasks[i];
    BenchRow& row = result.rows[i];
    row.name = task.name;
    row.group = task.member->group;
    row.seed = task.seed;
    try {
      PipelineConfig member_config = config;
      member_config.embed_instance = false;
      if (task.member->trials) member_config.rounding.trials = *task.member->trials;
      const AnyInstance instance = Generate(task.member->generator, task.member->params, task.seed);
      row.report = RunPipeline(instance, member_config, task.name);
    } catch (const std::exception& e) {
      row.error = e.what();
      if (row.error.empty()) row.error = "unknown failure";
    }
  };

  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::string> groups;
  for (const BenchRow& row : result.rows) {
    if (std::find(groups.begin(), groups.end(), row.group) == groups.end()) {
      groups.push_back(row.group);
    }
  }
  groups.push_back("all");
  for (const std::string& group : groups) {
    BenchAggregate agg;
    agg.group = group;
    std::int64_t checks = 0, fails = 0;
    int ok = 0;
    for (const BenchRow& row : result.rows) {
      if (group != "all" && row.group != group) continue;
      ++agg.instances;
      if (!row.report) {
        ++agg.failures;
        continue;
      }
      const RunReport& r = *row.report;
      ++ok;
      agg.mean_ratio += r.ratio;
      agg.max_ratio = std::max(agg.max_ratio, r.ratio);
      agg.mean_overflow_rate += r.overflow_rate;
      agg.max_overflow_rate = std::max(agg.max_overflow_rate, r.overflow_rate);
      agg.h_bound_violations += r.h_bound_violations;
      agg.mean_lp_bound += r.lower_bound;
      agg.mean_solver_cost += static_cast<double>(r.solver_cost);
      checks += r.satisfaction_checks;
      fails += r.satisfaction_failures;
    }
    if (ok > 0) {
      agg.mean_ratio /= ok;
      agg.mean_overflow_rate /= ok;
      agg.mean_lp_bound /= ok;
      agg.mean_solver_cost /= ok;
    }
    agg.satisfaction_failure_rate = checks == 0 ? 0.0 : static_cast<double>(fails) / checks;
    result.aggregates.push_back(agg);
  }
  return result;
}

void WriteCsv(const BenchResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const BenchRow& row : result.rows) {
    out << CsvName(row.name) << ',';
    if (!row.report) {
      // Failed member: only the seed is known.
      out << ",,,,,,,,,,," << row.seed << ",\n";
      continue;
    }
    const RunReport& r = *row.report;
    out << r.documents << ',' << r.topics << ',' << r.users << ',' << Fixed(r.lower_bound) << ','
        << Fixed(r.half_bound) << ',' << r.solver_cost << ',' << Cell(r.oracle_cost) << ','
        << Cell(r.prp_cost) << ',' << Cell(r.greedy_cost()) << ',' << Fixed(r.ratio) << ','
        << Fixed(r.overflow_rate) << ',' << r.seed << ',' << Fixed(r.millis) << '\n';
  }
  for (const BenchAggregate& agg : result.aggregates) {
    out << CsvName("mean:" + agg.group) << ",,,," << Fixed(agg.mean_lp_bound) << ",,"
        << Fixed(agg.mean_solver_cost) << ",,,," << Fixed(agg.mean_ratio) << ','
        << Fixed(agg.mean_overflow_rate) << ",,\n";
    out << CsvName("max:" + agg.group) << ",,,,,,,,,," << Fixed(agg.max_ratio) << ','
        << Fixed(agg.max_overflow_rate) << ",,\n";
  }
}

std::string BenchJson(const BenchResult& result) {
  OrderedJson out;
  out["suite"] = result.suite;
  OrderedJson rows = OrderedJson::array();
  for (const BenchRow& row : result.rows) {
    OrderedJson item;
    item["name"] = row.name;
    item["group"] = row.group;
    item["seed"] = row.seed;
    if (row.report) {
      item["report"] = OrderedJson::parse(ReportJson(*row.report, false));
    } else {
      item["error"] = row.error;
    }
    rows.push_back(item);
  }
  out["instances"] = rows;
  OrderedJson aggs = OrderedJson::array();
  for (const BenchAggregate& a : result.aggregates) {
    OrderedJson item;
    item["group"] = a.group;
    item["instances"] = a.instances;
    item["failures"] = a.failures;
    item["mean_ratio"] = a.mean_ratio;
    item["max_ratio"] = a.max_ratio;
    item["mean_overflow_rate"] = a.mean_overflow_rate;
    item["max_overflow_rate"] = a.max_overflow_rate;
    item["satisfaction_failure_rate"] = a.satisfaction_failure_rate;
    item["h_bound_violations"] = a.h_bound_violations;
    aggs.push_back(item);
  }
  out["aggregates"] = aggs;
  return out.dump(2) + "\n";
}

}  // namespace rdc
