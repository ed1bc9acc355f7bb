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

#ifndef RDC_INSTANCE_IO_H_
#define RDC_INSTANCE_IO_H_

#include <string>
#include <string_view>
#include <variant>

#include "rdc/core_model.h"
#include "rdc/extensions.h"

namespace rdc {

enum class InstanceKind { kRdc, kRgc, kRxos };

using AnyInstance = std::variant<Instance, GroupInstance, XosInstance>;

std::string_view ToString(InstanceKind kind);
InstanceKind KindOf(const AnyInstance& instance);
const Corpus& CorpusOf(const AnyInstance& instance);
int NumUsers(const AnyInstance& instance);

// Reads the JSON instance format:
//   {"kind": "rdc" | "rgc" | "rxos",
//    "topics": [id, ...],
//    "documents": [{"id": .., "topics": [id, ...]}, ...],
//    "users": [{"id": .., "interests": [..], "k": K}                  (rdc)
//              {"id": .., "groups": [{"interests": [..], "k": K}]}   (rgc)
//              {"id": .., "functions": [{"weights": {doc: A}}]}]}    (rxos)
// Syntax errors throw kParse with the line; schema errors throw kParse with
// the JSON pointer of the offending field; unknown references and
// validation failures throw kInvalidInstance.
AnyInstance ParseInstance(std::string_view text, int group_cap = kDefaultGroupCap);
AnyInstance ReadInstanceFile(const std::string& path, int group_cap = kDefaultGroupCap);

// Pretty-printed JSON that ParseInstance reads back to an equal instance.
std::string SerializeInstance(const AnyInstance& instance);

}  // namespace rdc

#endif  // RDC_INSTANCE_IO_H_
