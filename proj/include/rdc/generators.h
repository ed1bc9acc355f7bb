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

#ifndef RDC_GENERATORS_H_
#define RDC_GENERATORS_H_

#include <cstdint>
#include <string_view>

#include "rdc/instance_io.h"

namespace rdc {

enum class GeneratorKind {
  kRandom,
  kDisjoint,      // every topic in exactly one document
  kFreqBounded,   // every topic in at most `max_frequency` documents
  kExample1,      // the fixed PRP counterexample: 10 documents, 150 users
  kRgcRandom,
  kRxosRandom,
};

std::string_view ToString(GeneratorKind kind);
// Throws kInvalidArgument for unknown names.
GeneratorKind ParseGeneratorKind(std::string_view name);

struct GeneratorParams {
  int documents = 10;
  int topics = 10;
  int users = 5;
  double density = 0.3;           // P(topic in a document)
  double interest_density = 0.3;  // P(topic in an interest set)
  int k_min = 1;
  int k_max = 3;
  int max_frequency = 2;          // freq-bounded
  int max_per_doc = 4;            // disjoint
  int groups = 2;                 // rgc: groups per user drawn from [1, groups]
  int functions = 2;              // rxos: functions per user drawn from [1, functions]
};

// Throws kInvalidArgument for impossible parameters.
AnyInstance Generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed);

}  // namespace rdc

#endif  // RDC_GENERATORS_H_
