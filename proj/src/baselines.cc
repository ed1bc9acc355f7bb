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

#include "rdc/baselines.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "rdc/error.h"

namespace rdc {
namespace {

void CheckCap(int n, int cap) {
  if (n > cap) {
    throw Error(ErrorCode::kCapExceeded, "oracle supports at most " + std::to_string(cap) +
                                             " documents, got " + std::to_string(n));
  }
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const Instance& instance)
      : instance_(instance),
        n_(instance.num_documents()),
        topic_users_(instance.num_topics()),
        topic_hits_(instance.num_topics(), 0),
        counts_(instance.num_users(), 0),
        times_(instance.num_users(), 0),
        placed_(n_, 0) {
    for (int u = 0; u < instance.num_users(); ++u) {
      for (int e : instance.user(u).interests) topic_users_[e].push_back(u);
    }
  }

  OracleResult Run() {
    DepthFirst(0, 0);
    OracleResult result;
    result.ranking = Evaluate(instance_, best_order_);
    result.nodes = nodes_;
    CheckInvariant(result.ranking.total_cost == best_cost_, "oracle cost mismatch");
    return result;
  }

 private:
  // Places `s` at position `depth`; returns the users it satisfied.
  std::vector<int> Place(int s, int depth) {
    std::vector<int> done;
    placed_[s] = 1;
    prefix_.push_back(s);
    for (int e : instance_.corpus().topics_of(s)) {
      if (topic_hits_[e]++ > 0) continue;
      for (int u : topic_users_[e]) {
        if (++counts_[u] == instance_.user(u).threshold && times_[u] == 0) {
          times_[u] = depth + 1;
          done.push_back(u);
        }
      }
    }
    return done;
  }

  void Remove(int s, const std::vector<int>& done) {
    for (int u : done) times_[u] = 0;
    for (int e : instance_.corpus().topics_of(s)) {
      if (--topic_hits_[e] > 0) continue;
      for (int u : topic_users_[e]) --counts_[u];
    }
    prefix_.pop_back();
    placed_[s] = 0;
  }

  void DepthFirst(int depth, std::int64_t accumulated) {
    ++nodes_;
    const std::int64_t waiting = instance_.num_users() - satisfied_;
    if (waiting == 0) {
      if (accumulated < best_cost_) {
        best_cost_ = accumulated;
        best_order_ = prefix_;
        for (int s = 0; s < n_; ++s) {
          if (!placed_[s]) best_order_.push_back(s);
        }
      }
      return;
    }
    if (accumulated + waiting * (depth + 1) >= best_cost_) return;
    for (int s = 0; s < n_; ++s) {
      if (placed_[s]) continue;
      const std::vector<int> done = Place(s, depth);
      satisfied_ += static_cast<int>(done.size());
      DepthFirst(depth + 1, accumulated + static_cast<std::int64_t>(done.size()) * (depth + 1));
      satisfied_ -= static_cast<int>(done.size());
      Remove(s, done);
    }
  }

  const Instance& instance_;
  int n_;
  std::vector<std::vector<int>> topic_users_;
  std::vector<int> topic_hits_;
  std::vector<int> counts_;
  std::vector<int> times_;
  std::vector<char> placed_;
  std::vector<int> prefix_;
  int satisfied_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t best_cost_ = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_order_;
};

}  // namespace

OracleResult BruteForce(const Instance& instance, int doc_cap) {
  CheckCap(instance.num_documents(), doc_cap);
  return BranchAndBound(instance).Run();
}

EnumerationResult EnumerateOptimum(
    int num_documents, const std::function<std::int64_t(std::span<const int>)>& cost,
    int doc_cap) {
  CheckCap(num_documents, doc_cap);
  std::vector<int> order(num_documents);
  std::iota(order.begin(), order.end(), 0);
  EnumerationResult result;
  result.cost = std::numeric_limits<std::int64_t>::max();
  do {
    ++result.permutations;
    const std::int64_t c = cost(order);
    if (c < result.cost) {
      result.cost = c;
      result.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

Ranking PrpRanking(const Instance& instance) {
  const int n = instance.num_documents();
  std::vector<int> score(n, 0);
  for (int s = 0; s < n; ++s) {
    for (int u = 0; u < instance.num_users(); ++u) score[s] += instance.overlap(u, s) > 0;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  return Evaluate(instance, order);
}

std::string_view ToString(GreedyVariant variant) {
  return variant == GreedyVariant::kSatisfy ? "satisfy" : "coverage";
}

GreedyVariant ParseGreedyVariant(std::string_view name) {
  if (name == "satisfy") return GreedyVariant::kSatisfy;
  if (name == "coverage") return GreedyVariant::kCoverage;
  throw Error(ErrorCode::kInvalidArgument, "unknown greedy variant '" + std::string(name) + "'");
}

Ranking GreedyRanking(const Instance& instance, GreedyVariant variant) {
  const int n = instance.num_documents();
  const int num_users = instance.num_users();
  CoverageState state(instance);
  std::vector<char> placed(n, 0);
  std::vector<int> order;
  auto all_satisfied = [&] {
    for (int u = 0; u < num_users; ++u) {
      if (!state.satisfied(u)) return false;
    }
    return true;
  };
  while (static_cast<int>(order.size()) < n && !all_satisfied()) {
    int best = -1;
    std::int64_t best_primary = -1, best_secondary = -1;
    for (int s = 0; s < n; ++s) {
      if (placed[s]) continue;
      std::vector<int> extra(num_users, 0);
      std::int64_t fresh_topics = 0;
      for (int e : instance.corpus().topics_of(s)) {
        if (state.covered(e)) continue;
        ++fresh_topics;
        for (int u = 0; u < num_users; ++u) extra[u] += instance.interested(u, e);
      }
      std::int64_t primary = 0;
      for (int u = 0; u < num_users; ++u) {
        const int k = instance.user(u).threshold;
        const int before = state.count(u);
        if (variant == GreedyVariant::kSatisfy) {
          primary += before < k && before + extra[u] >= k;
        } else {
          primary += std::min(k, before + extra[u]) - std::min(k, before);
        }
      }
      const std::int64_t secondary = variant == GreedyVariant::kSatisfy ? fresh_topics : 0;
      if (primary > best_primary || (primary == best_primary && secondary > best_secondary)) {
        best = s;
        best_primary = primary;
        best_secondary = secondary;
      }
    }
    placed[best] = 1;
    state.Add(best);
    order.push_back(best);
  }
  for (int s = 0; s < n; ++s) {
    if (!placed[s]) order.push_back(s);
  }
  return Evaluate(instance, order);
}

}  // namespace rdc
