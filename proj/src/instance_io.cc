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

#include "rdc/instance_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "rdc/error.h"

namespace rdc {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void SchemaError(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& Field(const Json& object, const std::string& where, const char* key) {
  if (!object.is_object()) SchemaError(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) SchemaError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string Text(const Json& value, const std::string& where) {
  if (!value.is_string()) SchemaError(where, "expected a string");
  return value.get<std::string>();
}

const Json& Array(const Json& value, const std::string& where) {
  if (!value.is_array()) SchemaError(where, "expected an array");
  return value;
}

int Integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) SchemaError(where, "expected an integer");
  return value.get<int>();
}

double Number(const Json& value, const std::string& where) {
  if (!value.is_number()) SchemaError(where, "expected a number");
  return value.get<double>();
}

std::string Index(const std::string& where, std::size_t i) {
  return where + "/" + std::to_string(i);
}

class Resolver {
 public:
  explicit Resolver(const std::vector<std::string>& ids, const char* what) : what_(what) {
    for (std::size_t i = 0; i < ids.size(); ++i) index_.emplace(ids[i], static_cast<int>(i));
  }
  int operator()(const std::string& id, const std::string& where) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
      throw Error(ErrorCode::kInvalidInstance,
                  "at " + where + ": unknown " + what_ + " '" + id + "'");
    }
    return it->second;
  }

 private:
  std::map<std::string, int> index_;
  std::string what_;
};

std::vector<int> TopicList(const Json& value, const std::string& where, const Resolver& topics) {
  std::vector<int> out;
  const Json& list = Array(value, where);
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(topics(Text(list[i], Index(where, i)), Index(where, i)));
  }
  return out;
}

void ThrowIfInvalid(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::string message = "invalid instance";
  for (const Violation& v : violations) message += "; " + v.message;
  throw Error(ErrorCode::kInvalidInstance, message);
}

int LineOf(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) line += text[i] == '\n';
  return line;
}

OrderedJson IdList(const std::vector<int>& indices, const Corpus& corpus) {
  OrderedJson out = OrderedJson::array();
  for (int e : indices) out.push_back(corpus.topic_id(e));
  return out;
}

}  // namespace

std::string_view ToString(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kRdc: return "rdc";
    case InstanceKind::kRgc: return "rgc";
    case InstanceKind::kRxos: return "rxos";
  }
  return "unknown";
}

InstanceKind KindOf(const AnyInstance& instance) {
  return static_cast<InstanceKind>(instance.index());
}

const Corpus& CorpusOf(const AnyInstance& instance) {
  return std::visit([](const auto& x) -> const Corpus& { return x.corpus(); }, instance);
}

int NumUsers(const AnyInstance& instance) {
  return std::visit([](const auto& x) { return x.num_users(); }, instance);
}

AnyInstance ParseInstance(std::string_view text, int group_cap) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string detail = e.what();
    if (auto colon = detail.rfind(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(LineOf(text, e.byte)) + ": " + detail);
  }
  const std::string kind_name = Text(Field(root, "", "kind"), "/kind");
  InstanceKind kind;
  if (kind_name == "rdc") {
    kind = InstanceKind::kRdc;
  } else if (kind_name == "rgc") {
    kind = InstanceKind::kRgc;
  } else if (kind_name == "rxos") {
    kind = InstanceKind::kRxos;
  } else {
    SchemaError("/kind", "unknown kind '" + kind_name + "'");
  }

  std::vector<std::string> topic_ids;
  const Json& topics = Array(Field(root, "", "topics"), "/topics");
  for (std::size_t i = 0; i < topics.size(); ++i) {
    topic_ids.push_back(Text(topics[i], Index("/topics", i)));
  }
  const Resolver topic_of(topic_ids, "topic");

  std::vector<std::string> doc_ids;
  std::vector<std::vector<int>> doc_topics;
  const Json& documents = Array(Field(root, "", "documents"), "/documents");
  for (std::size_t s = 0; s < documents.size(); ++s) {
    const std::string where = Index("/documents", s);
    doc_ids.push_back(Text(Field(documents[s], where, "id"), where + "/id"));
    doc_topics.push_back(TopicList(Field(documents[s], where, "topics"), where + "/topics", topic_of));
  }
  const Resolver doc_of(doc_ids, "document");
  Corpus corpus(topic_ids, doc_ids, std::move(doc_topics));

  const Json& users = Array(Field(root, "", "users"), "/users");
  switch (kind) {
    case InstanceKind::kRdc: {
      std::vector<User> list;
      for (std::size_t u = 0; u < users.size(); ++u) {
        const std::string where = Index("/users", u);
        list.push_back({Text(Field(users[u], where, "id"), where + "/id"),
                        TopicList(Field(users[u], where, "interests"), where + "/interests", topic_of),
                        Integer(Field(users[u], where, "k"), where + "/k")});
      }
      Instance instance(std::move(corpus), std::move(list));
      ThrowIfInvalid(Validate(instance));
      return instance;
    }
    case InstanceKind::kRgc: {
      std::vector<GroupUser> list;
      for (std::size_t u = 0; u < users.size(); ++u) {
        const std::string where = Index("/users", u);
        GroupUser user{Text(Field(users[u], where, "id"), where + "/id"), {}};
        const Json& groups = Array(Field(users[u], where, "groups"), where + "/groups");
        for (std::size_t i = 0; i < groups.size(); ++i) {
          const std::string gw = Index(where + "/groups", i);
          user.groups.push_back({TopicList(Field(groups[i], gw, "interests"), gw + "/interests", topic_of),
                                 Integer(Field(groups[i], gw, "k"), gw + "/k")});
        }
        list.push_back(std::move(user));
      }
      GroupInstance instance(std::move(corpus), std::move(list));
      ThrowIfInvalid(Validate(instance, group_cap));
      return instance;
    }
    case InstanceKind::kRxos: {
      std::vector<XosUser> list;
      for (std::size_t u = 0; u < users.size(); ++u) {
        const std::string where = Index("/users", u);
        XosUser user{Text(Field(users[u], where, "id"), where + "/id"), {}};
        const Json& functions = Array(Field(users[u], where, "functions"), where + "/functions");
        for (std::size_t i = 0; i < functions.size(); ++i) {
          const std::string fw = Index(where + "/functions", i);
          const Json& weights = Field(functions[i], fw, "weights");
          if (!weights.is_object()) SchemaError(fw + "/weights", "expected an object");
          XosFunction f{std::vector<double>(doc_ids.size(), 0.0)};
          for (const auto& [doc, value] : weights.items()) {
            const std::string ww = fw + "/weights/" + doc;
            f.weights[doc_of(doc, ww)] = Number(value, ww);
          }
          user.functions.push_back(std::move(f));
        }
        list.push_back(std::move(user));
      }
      XosInstance instance(std::move(corpus), std::move(list));
      ThrowIfInvalid(Validate(instance, group_cap));
      return instance;
    }
  }
  throw Error(ErrorCode::kParse, "unreachable");
}

AnyInstance ReadInstanceFile(const std::string& path, int group_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseInstance(buffer.str(), group_cap);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeInstance(const AnyInstance& instance) {
  const Corpus& corpus = CorpusOf(instance);
  OrderedJson root;
  root["kind"] = std::string(ToString(KindOf(instance)));
  root["topics"] = corpus.topic_ids();
  OrderedJson documents = OrderedJson::array();
  for (int s = 0; s < corpus.num_documents(); ++s) {
    OrderedJson doc;
    doc["id"] = corpus.document_id(s);
    doc["topics"] = IdList(corpus.topics_of(s), corpus);
    documents.push_back(std::move(doc));
  }
  root["documents"] = std::move(documents);
  OrderedJson users = OrderedJson::array();
  if (const auto* rdc = std::get_if<Instance>(&instance)) {
    for (const User& u : rdc->users()) {
      OrderedJson user;
      user["id"] = u.id;
      user["interests"] = IdList(u.interests, corpus);
      user["k"] = u.threshold;
      users.push_back(std::move(user));
    }
  } else if (const auto* rgc = std::get_if<GroupInstance>(&instance)) {
    for (const GroupUser& u : rgc->users()) {
      OrderedJson user;
      user["id"] = u.id;
      user["groups"] = OrderedJson::array();
      for (const RequirementGroup& g : u.groups) {
        OrderedJson group;
        group["interests"] = IdList(g.interests, corpus);
        group["k"] = g.threshold;
        user["groups"].push_back(std::move(group));
      }
      users.push_back(std::move(user));
    }
  } else {
    for (const XosUser& u : std::get<XosInstance>(instance).users()) {
      OrderedJson user;
      user["id"] = u.id;
      user["functions"] = OrderedJson::array();
      for (const XosFunction& f : u.functions) {
        OrderedJson weights = OrderedJson::object();
        for (int s = 0; s < corpus.num_documents(); ++s) {
          if (f.weights[s] != 0.0) weights[corpus.document_id(s)] = f.weights[s];
        }
        user["functions"].push_back(OrderedJson{{"weights", std::move(weights)}});
      }
      users.push_back(std::move(user));
    }
  }
  root["users"] = std::move(users);
  return root.dump(2) + "\n";
}

}  // namespace rdc
