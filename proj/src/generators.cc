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

#include "rdc/generators.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "rdc/error.h"

namespace rdc {
namespace {

// Draws built directly on the engine output so instances do not depend on
// the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Coin(double p) { return Unit() < p; }
  int Int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

void Require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

void CheckCounts(const GeneratorParams& p) {
  Require(p.documents >= 1, "documents must be at least 1");
  Require(p.topics >= 1, "topics must be at least 1");
  Require(p.users >= 0, "users must be nonnegative");
  Require(p.density >= 0.0 && p.density <= 1.0, "density must lie in [0, 1]");
  Require(p.interest_density >= 0.0 && p.interest_density <= 1.0,
          "interest density must lie in [0, 1]");
  Require(p.k_min >= 1 && p.k_max >= p.k_min, "need 1 <= k-min <= k-max");
}

Corpus MakeCorpus(int topics, std::vector<std::vector<int>> doc_topics) {
  std::vector<std::string> topic_ids, doc_ids;
  for (int e = 0; e < topics; ++e) topic_ids.push_back("e" + std::to_string(e + 1));
  for (std::size_t s = 0; s < doc_topics.size(); ++s) doc_ids.push_back("s" + std::to_string(s + 1));
  return Corpus(std::move(topic_ids), std::move(doc_ids), std::move(doc_topics));
}

std::vector<std::vector<int>> RandomDocuments(const GeneratorParams& p, Draw& draw) {
  std::vector<std::vector<int>> docs(p.documents);
  for (auto& d : docs) {
    for (int e = 0; e < p.topics; ++e) {
      if (draw.Coin(p.density)) d.push_back(e);
    }
  }
  std::vector<char> seen(p.topics, 0);
  for (const auto& d : docs) {
    for (int e : d) seen[e] = 1;
  }
  for (int e = 0; e < p.topics; ++e) {
    if (!seen[e]) {
      auto& d = docs[draw.Int(0, p.documents - 1)];
      d.insert(std::upper_bound(d.begin(), d.end(), e), e);
    }
  }
  return docs;
}

RequirementGroup RandomRequirement(const GeneratorParams& p, Draw& draw) {
  RequirementGroup g;
  for (int e = 0; e < p.topics; ++e) {
    if (draw.Coin(p.interest_density)) g.interests.push_back(e);
  }
  if (g.interests.empty()) g.interests.push_back(draw.Int(0, p.topics - 1));
  const int size = static_cast<int>(g.interests.size());
  const int hi = std::min(p.k_max, size);
  const int lo = std::min(p.k_min, hi);
  g.threshold = draw.Int(lo, hi);
  return g;
}

Instance RandomUsers(const GeneratorParams& p, Draw& draw, Corpus corpus) {
  std::vector<User> users;
  for (int u = 0; u < p.users; ++u) {
    RequirementGroup g = RandomRequirement(p, draw);
    users.push_back({"u" + std::to_string(u + 1), std::move(g.interests), g.threshold});
  }
  return Instance(std::move(corpus), std::move(users));
}

std::vector<std::vector<int>> DisjointDocuments(const GeneratorParams& p, Draw& draw) {
  Require(p.max_per_doc >= 1, "max-per-doc must be at least 1");
  Require(p.topics >= p.documents, "disjoint instances need at least one topic per document");
  Require(p.topics <= static_cast<long long>(p.documents) * p.max_per_doc,
          "more topics than disjoint slots (documents * max-per-doc)");
  std::vector<int> order(p.topics);
  std::iota(order.begin(), order.end(), 0);
  for (int i = p.topics - 1; i > 0; --i) std::swap(order[i], order[draw.Int(0, i)]);
  std::vector<std::vector<int>> docs(p.documents);
  for (int s = 0; s < p.documents; ++s) docs[s].push_back(order[s]);
  for (int i = p.documents; i < p.topics; ++i) {
    std::vector<int> open;
    for (int s = 0; s < p.documents; ++s) {
      if (static_cast<int>(docs[s].size()) < p.max_per_doc) open.push_back(s);
    }
    docs[open[draw.Int(0, static_cast<int>(open.size()) - 1)]].push_back(order[i]);
  }
  for (auto& d : docs) std::sort(d.begin(), d.end());
  return docs;
}

std::vector<std::vector<int>> BoundedDocuments(const GeneratorParams& p, Draw& draw) {
  Require(p.max_frequency >= 1, "max frequency must be at least 1");
  std::vector<std::vector<int>> docs = RandomDocuments(p, draw);
  for (int e = 0; e < p.topics; ++e) {
    std::vector<int> owners;
    for (int s = 0; s < p.documents; ++s) {
      if (std::binary_search(docs[s].begin(), docs[s].end(), e)) owners.push_back(s);
    }
    while (static_cast<int>(owners.size()) > p.max_frequency) {
      const int pick = draw.Int(0, static_cast<int>(owners.size()) - 1);
      auto& d = docs[owners[pick]];
      d.erase(std::find(d.begin(), d.end(), e));
      owners.erase(owners.begin() + pick);
    }
  }
  return docs;
}

Instance ExampleOne() {
  std::vector<std::vector<int>> docs(9, std::vector<int>{0});
  docs.push_back({1});
  Corpus corpus({"eA", "eB"}, {"s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9", "s10"},
                std::move(docs));
  std::vector<User> users;
  for (int i = 0; i < 100; ++i) users.push_back({"a" + std::to_string(i + 1), {0}, 1});
  for (int i = 0; i < 50; ++i) users.push_back({"b" + std::to_string(i + 1), {1}, 1});
  return Instance(std::move(corpus), std::move(users));
}

}  // namespace

std::string_view ToString(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRandom: return "random";
    case GeneratorKind::kDisjoint: return "disjoint";
    case GeneratorKind::kFreqBounded: return "freq-bounded";
    case GeneratorKind::kExample1: return "example1";
    case GeneratorKind::kRgcRandom: return "rgc-random";
    case GeneratorKind::kRxosRandom: return "rxos-random";
  }
  return "unknown";
}

GeneratorKind ParseGeneratorKind(std::string_view name) {
  for (GeneratorKind k : {GeneratorKind::kRandom, GeneratorKind::kDisjoint,
                          GeneratorKind::kFreqBounded, GeneratorKind::kExample1,
                          GeneratorKind::kRgcRandom, GeneratorKind::kRxosRandom}) {
    if (ToString(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator '" + std::string(name) + "'");
}

AnyInstance Generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed) {
  if (kind == GeneratorKind::kExample1) return ExampleOne();
  CheckCounts(params);
  Draw draw(seed);
  switch (kind) {
    case GeneratorKind::kRandom: {
      Corpus corpus = MakeCorpus(params.topics, RandomDocuments(params, draw));
      return RandomUsers(params, draw, std::move(corpus));
    }
    case GeneratorKind::kDisjoint: {
      Corpus corpus = MakeCorpus(params.topics, DisjointDocuments(params, draw));
      return RandomUsers(params, draw, std::move(corpus));
    }
    case GeneratorKind::kFreqBounded: {
      Corpus corpus = MakeCorpus(params.topics, BoundedDocuments(params, draw));
      Instance instance = RandomUsers(params, draw, std::move(corpus));
      for (int e = 0; e < instance.num_topics(); ++e) {
        CheckInvariant(static_cast<int>(instance.corpus().documents_with(e).size()) <=
                           params.max_frequency,
                       "frequency bound broken");
      }
      return instance;
    }
    case GeneratorKind::kRgcRandom: {
      Require(params.groups >= 1, "groups must be at least 1");
      Corpus corpus = MakeCorpus(params.topics, RandomDocuments(params, draw));
      std::vector<GroupUser> users;
      for (int u = 0; u < params.users; ++u) {
        GroupUser user{"u" + std::to_string(u + 1), {}};
        const int p = draw.Int(1, params.groups);
        for (int i = 0; i < p; ++i) user.groups.push_back(RandomRequirement(params, draw));
        users.push_back(std::move(user));
      }
      return GroupInstance(std::move(corpus), std::move(users));
    }
    case GeneratorKind::kRxosRandom: {
      Require(params.functions >= 1, "functions must be at least 1");
      Corpus corpus = MakeCorpus(params.topics, RandomDocuments(params, draw));
      std::vector<XosUser> users;
      for (int u = 0; u < params.users; ++u) {
        XosUser user{"u" + std::to_string(u + 1), {}};
        const int p = draw.Int(1, params.functions);
        for (int i = 0; i < p; ++i) {
          std::vector<double> w(params.documents, 0.0);
          double total = 0.0;
          for (double& a : w) {
            if (draw.Coin(params.density)) {
              // Quarter steps keep the weights exact in binary.
              a = 0.25 * draw.Int(1, 4);
              total += a;
            }
          }
          if (total < 1.0) w[draw.Int(0, params.documents - 1)] += 1.0 - total;
          user.functions.push_back({std::move(w)});
        }
        users.push_back(std::move(user));
      }
      return XosInstance(std::move(corpus), std::move(users));
    }
    case GeneratorKind::kExample1:
      break;
  }
  return ExampleOne();
}

}  // namespace rdc
