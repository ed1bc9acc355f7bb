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

#ifndef RDC_CORE_MODEL_H_
#define RDC_CORE_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rdc {

// Documents and the topics they contain. Identifiers are opaque strings;
// every algorithm works on the dense indices assigned at construction.
class Corpus {
 public:
  Corpus() = default;
  // `doc_topics[s]` lists topic indices in [0, topic_ids.size()).
  Corpus(std::vector<std::string> topic_ids, std::vector<std::string> doc_ids,
         std::vector<std::vector<int>> doc_topics);

  int num_topics() const { return static_cast<int>(topic_ids_.size()); }
  int num_documents() const { return static_cast<int>(doc_ids_.size()); }

  const std::string& topic_id(int e) const { return topic_ids_[e]; }
  const std::string& document_id(int s) const { return doc_ids_[s]; }
  const std::vector<std::string>& topic_ids() const { return topic_ids_; }
  const std::vector<std::string>& document_ids() const { return doc_ids_; }

  // Sorted, duplicate-free topic indices of document s.
  const std::vector<int>& topics_of(int s) const { return doc_topics_[s]; }
  // Documents containing topic e, in index order.
  const std::vector<int>& documents_with(int e) const { return topic_docs_[e]; }
  bool contains(int s, int e) const;

  std::optional<int> FindTopic(std::string_view id) const;
  std::optional<int> FindDocument(std::string_view id) const;

  bool operator==(const Corpus& other) const {
    return topic_ids_ == other.topic_ids_ && doc_ids_ == other.doc_ids_ &&
           doc_topics_ == other.doc_topics_;
  }

 private:
  std::vector<std::string> topic_ids_;
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<int>> doc_topics_;
  std::vector<std::vector<int>> topic_docs_;
};

struct User {
  std::string id;
  std::vector<int> interests;  // sorted topic indices
  int threshold = 1;           // K_u

  bool operator==(const User&) const = default;
};

// An RDC instance: a corpus plus users that are satisfied once `threshold`
// of their interest topics are covered.
class Instance {
 public:
  Instance() = default;
  Instance(Corpus corpus, std::vector<User> users);

  // Convenience constructor naming topics e1.., documents s1.., users u1..
  static Instance FromIndices(int num_topics,
                              std::vector<std::vector<int>> doc_topics,
                              std::vector<std::pair<std::vector<int>, int>> users);

  const Corpus& corpus() const { return corpus_; }
  int num_documents() const { return corpus_.num_documents(); }
  int num_topics() const { return corpus_.num_topics(); }
  int num_users() const { return static_cast<int>(users_.size()); }
  const User& user(int u) const { return users_[u]; }
  const std::vector<User>& users() const { return users_; }

  // |C_s ∩ I_u|
  int overlap(int u, int s) const { return overlap_[u][s]; }
  bool interested(int u, int e) const;
  std::optional<int> FindUser(std::string_view id) const;

  bool operator==(const Instance& other) const {
    return corpus_ == other.corpus_ && users_ == other.users_;
  }

 private:
  Corpus corpus_;
  std::vector<User> users_;
  std::vector<std::vector<int>> overlap_;
  std::vector<std::vector<char>> interest_mask_;
};

enum class ViolationKind {
  kUncoveredTopic,
  kThresholdRange,
  kDuplicateId,
  kUnknownReference,
  kOther,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::vector<Violation> ValidateCorpus(const Corpus& corpus);
// Empty result means the instance is valid.
std::vector<Violation> Validate(const Instance& instance);

struct Ranking {
  std::vector<int> order;           // document indices
  std::vector<int> satisfy_times;   // t_u, 1-based
  std::int64_t total_cost = 0;
};

// Covered topics and per-user covered interest counts for a growing
// document prefix.
class CoverageState {
 public:
  explicit CoverageState(const Instance& instance);

  // Returns the number of newly covered topics.
  int Add(int doc);
  bool covered(int topic) const { return covered_[topic] != 0; }
  int count(int user) const { return counts_[user]; }
  bool satisfied(int user) const;
  int num_covered() const { return num_covered_; }

 private:
  const Instance* instance_;
  std::vector<char> covered_;
  std::vector<int> counts_;
  int num_covered_ = 0;
};

// |I_u ∩ ∪_{s∈docs} C_s|. Throws kInvalidArgument for unknown indices.
int CoverageCount(const Instance& instance, int user, std::span<const int> docs);

// Throws kInvalidArgument unless `order` is a permutation of [0, n).
void CheckPermutation(std::span<const int> order, int n);

Ranking Evaluate(const Instance& instance, std::span<const int> order);

// Concatenates the rounds, each emitted in index order, skipping documents
// already placed; never-selected documents follow in index order. With
// `sort_within_round` false the rounds keep their given order.
std::vector<int> CompleteRanking(int num_documents,
                                 std::span<const std::vector<int>> rounds,
                                 bool sort_within_round = true);

}  // namespace rdc

#endif  // RDC_CORE_MODEL_H_
