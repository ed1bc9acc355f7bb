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

#include "rdc/core_model.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "rdc/error.h"

namespace rdc {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidInstance: return "invalid instance";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kCapExceeded: return "cap exceeded";
    case ErrorCode::kUnavailable: return "unavailable";
    case ErrorCode::kIterationLimit: return "iteration limit";
    case ErrorCode::kRowGenerationCap: return "row generation cap";
    case ErrorCode::kInvariant: return "invariant breach";
  }
  return "unknown";
}

namespace {

std::vector<int> SortedUnique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void ReportDuplicates(const std::vector<std::string>& ids, std::string_view what,
                      std::vector<Violation>& out) {
  std::set<std::string_view> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      out.push_back({ViolationKind::kDuplicateId,
                     "duplicate " + std::string(what) + " id '" + id + "'"});
    }
  }
}

}  // namespace

Corpus::Corpus(std::vector<std::string> topic_ids,
               std::vector<std::string> doc_ids,
               std::vector<std::vector<int>> doc_topics)
    : topic_ids_(std::move(topic_ids)),
      doc_ids_(std::move(doc_ids)),
      doc_topics_(std::move(doc_topics)) {
  if (doc_topics_.size() != doc_ids_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "document id and topic list counts differ");
  }
  topic_docs_.assign(topic_ids_.size(), {});
  for (std::size_t s = 0; s < doc_topics_.size(); ++s) {
    doc_topics_[s] = SortedUnique(std::move(doc_topics_[s]));
    for (int e : doc_topics_[s]) {
      if (e < 0 || e >= num_topics()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "document '" + doc_ids_[s] + "' references topic index " +
                        std::to_string(e));
      }
      topic_docs_[e].push_back(static_cast<int>(s));
    }
  }
}

bool Corpus::contains(int s, int e) const {
  return std::binary_search(doc_topics_[s].begin(), doc_topics_[s].end(), e);
}

std::optional<int> Corpus::FindTopic(std::string_view id) const {
  auto it = std::find(topic_ids_.begin(), topic_ids_.end(), id);
  if (it == topic_ids_.end()) return std::nullopt;
  return static_cast<int>(it - topic_ids_.begin());
}

std::optional<int> Corpus::FindDocument(std::string_view id) const {
  auto it = std::find(doc_ids_.begin(), doc_ids_.end(), id);
  if (it == doc_ids_.end()) return std::nullopt;
  return static_cast<int>(it - doc_ids_.begin());
}

Instance::Instance(Corpus corpus, std::vector<User> users)
    : corpus_(std::move(corpus)), users_(std::move(users)) {
  const int n = corpus_.num_documents();
  const int m = corpus_.num_topics();
  overlap_.assign(users_.size(), std::vector<int>(n, 0));
  interest_mask_.assign(users_.size(), std::vector<char>(m, 0));
  for (std::size_t u = 0; u < users_.size(); ++u) {
    users_[u].interests = SortedUnique(std::move(users_[u].interests));
    for (int e : users_[u].interests) {
      if (e < 0 || e >= m) {
        throw Error(ErrorCode::kInvalidArgument,
                    "user '" + users_[u].id + "' references topic index " +
                        std::to_string(e));
      }
      interest_mask_[u][e] = 1;
      for (int s : corpus_.documents_with(e)) ++overlap_[u][s];
    }
  }
}

Instance Instance::FromIndices(
    int num_topics, std::vector<std::vector<int>> doc_topics,
    std::vector<std::pair<std::vector<int>, int>> users) {
  std::vector<std::string> topic_ids;
  for (int e = 0; e < num_topics; ++e) topic_ids.push_back("e" + std::to_string(e + 1));
  std::vector<std::string> doc_ids;
  for (std::size_t s = 0; s < doc_topics.size(); ++s) {
    doc_ids.push_back("s" + std::to_string(s + 1));
  }
  std::vector<User> user_list;
  for (std::size_t u = 0; u < users.size(); ++u) {
    user_list.push_back({"u" + std::to_string(u + 1), std::move(users[u].first),
                         users[u].second});
  }
  return Instance(Corpus(std::move(topic_ids), std::move(doc_ids),
                         std::move(doc_topics)),
                  std::move(user_list));
}

bool Instance::interested(int u, int e) const { return interest_mask_[u][e] != 0; }

std::optional<int> Instance::FindUser(std::string_view id) const {
  for (std::size_t u = 0; u < users_.size(); ++u) {
    if (users_[u].id == id) return static_cast<int>(u);
  }
  return std::nullopt;
}

std::vector<Violation> ValidateCorpus(const Corpus& corpus) {
  std::vector<Violation> out;
  ReportDuplicates(corpus.topic_ids(), "topic", out);
  ReportDuplicates(corpus.document_ids(), "document", out);
  for (int e = 0; e < corpus.num_topics(); ++e) {
    if (corpus.documents_with(e).empty()) {
      out.push_back({ViolationKind::kUncoveredTopic,
                     "uncovered topic '" + corpus.topic_id(e) +
                         "' appears in no document"});
    }
  }
  return out;
}

std::vector<Violation> Validate(const Instance& instance) {
  std::vector<Violation> out = ValidateCorpus(instance.corpus());
  std::vector<std::string> user_ids;
  for (const User& u : instance.users()) {
    user_ids.push_back(u.id);
    const int size = static_cast<int>(u.interests.size());
    if (u.threshold < 1) {
      out.push_back({ViolationKind::kThresholdRange,
                     "user '" + u.id + "': K must be at least 1"});
    } else if (u.threshold > size) {
      out.push_back({ViolationKind::kThresholdRange,
                     "user '" + u.id + "': K exceeds |I| (" +
                         std::to_string(u.threshold) + " > " +
                         std::to_string(size) + ")"});
    }
  }
  ReportDuplicates(user_ids, "user", out);
  return out;
}

CoverageState::CoverageState(const Instance& instance)
    : instance_(&instance),
      covered_(instance.num_topics(), 0),
      counts_(instance.num_users(), 0) {}

int CoverageState::Add(int doc) {
  int fresh = 0;
  for (int e : instance_->corpus().topics_of(doc)) {
    if (covered_[e]) continue;
    covered_[e] = 1;
    ++fresh;
    for (int u = 0; u < instance_->num_users(); ++u) {
      if (instance_->interested(u, e)) ++counts_[u];
    }
  }
  num_covered_ += fresh;
  return fresh;
}

bool CoverageState::satisfied(int user) const {
  return counts_[user] >= instance_->user(user).threshold;
}

int CoverageCount(const Instance& instance, int user, std::span<const int> docs) {
  if (user < 0 || user >= instance.num_users()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown user index " + std::to_string(user));
  }
  std::vector<char> seen(instance.num_topics(), 0);
  int count = 0;
  for (int s : docs) {
    if (s < 0 || s >= instance.num_documents()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown document index " + std::to_string(s));
    }
    for (int e : instance.corpus().topics_of(s)) {
      if (!seen[e] && instance.interested(user, e)) ++count;
      seen[e] = 1;
    }
  }
  return count;
}

void CheckPermutation(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "order has " + std::to_string(order.size()) +
                    " entries, expected " + std::to_string(n));
  }
  std::vector<char> seen(n, 0);
  for (int s : order) {
    if (s < 0 || s >= n || seen[s]) {
      throw Error(ErrorCode::kInvalidArgument, "order is not a permutation");
    }
    seen[s] = 1;
  }
}

Ranking Evaluate(const Instance& instance, std::span<const int> order) {
  const int n = instance.num_documents();
  CheckPermutation(order, n);
  Ranking ranking;
  ranking.order.assign(order.begin(), order.end());
  ranking.satisfy_times.assign(instance.num_users(), 0);
  CoverageState state(instance);
  int remaining = instance.num_users();
  for (int pos = 0; pos < n && remaining > 0; ++pos) {
    state.Add(order[pos]);
    for (int u = 0; u < instance.num_users(); ++u) {
      if (ranking.satisfy_times[u] == 0 && state.satisfied(u)) {
        ranking.satisfy_times[u] = pos + 1;
        --remaining;
      }
    }
  }
  for (int u = 0; u < instance.num_users(); ++u) {
    if (ranking.satisfy_times[u] == 0) {
      throw Error(ErrorCode::kInvalidInstance,
                  "user '" + instance.user(u).id + "' is never satisfied");
    }
    ranking.total_cost += ranking.satisfy_times[u];
  }
  return ranking;
}

std::vector<int> CompleteRanking(int num_documents,
                                 std::span<const std::vector<int>> rounds,
                                 bool sort_within_round) {
  std::vector<char> placed(num_documents, 0);
  std::vector<int> order;
  order.reserve(num_documents);
  for (const auto& round : rounds) {
    std::vector<int> docs = round;
    if (sort_within_round) std::sort(docs.begin(), docs.end());
    for (int s : docs) {
      if (s < 0 || s >= num_documents) {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown document index " + std::to_string(s));
      }
      if (!placed[s]) {
        placed[s] = 1;
        order.push_back(s);
      }
    }
  }
  for (int s = 0; s < num_documents; ++s) {
    if (!placed[s]) order.push_back(s);
  }
  return order;
}

}  // namespace rdc
