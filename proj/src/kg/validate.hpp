// Copyright 2026 The CircuGraph Authors
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

#pragma once

#include <cstddef>
#include <vector>

#include "kg/term.hpp"
#include "kg/triple_store.hpp"

namespace circugraph::kg {

struct SourcedTriple {
  Triple triple;
  std::size_t line = 0;  // 1-based; 0 when the triple has no source file
};

// Schema checks applied on load:
//  - iskg:kind objects are Provider/Receiver/Resource, one kind per node
//  - at most one label, category and GWP100 value per node
//  - GWP100 objects are non-negative decimal literals
//  - code literals pass their scheme's digit rule
//  - hasProvider/hasReceiver link a Resource to a typed activity node,
//    hasResource links an activity to a typed Resource
// Throws the first violation in source order (InvariantViolation, or
// Error(kDuplicateDefinition)).
void validate_graph(const std::vector<SourcedTriple>& triples);
void validate_graph(const TripleStore& store);

}  // namespace circugraph::kg
