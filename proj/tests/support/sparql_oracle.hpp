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

#include <cstdint>
#include <random>
#include <vector>

#include "kg/triple_store.hpp"
#include "sparql/ast.hpp"
#include "sparql/results.hpp"

namespace circugraph::testing {

// Brute-force reference: every pattern is matched by scanning all triples and
// extending every partial solution in turn; unions and filters follow the
// textbook definitions. Shares no code with the engine's evaluator.
sparql::ResultSet nested_loop_evaluate(const sparql::Query& q, const kg::TripleStore& store);

// Small random graphs over a tiny vocabulary so joins actually hit.
struct RandomGraph {
  std::vector<kg::Iri> nodes;
  std::vector<kg::Iri> predicates;
  std::vector<kg::Literal> literals;
  kg::TripleStore store;
};
RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_triples);

struct QueryShape {
  std::size_t max_patterns = 4;
  bool allow_filter = true;
  bool allow_union = true;
  bool allow_order = true;
};

// Random valid query over the graph's vocabulary (validate() passes).
sparql::Query random_query(std::mt19937_64& rng, const RandomGraph& g, const QueryShape& shape = {});

}  // namespace circugraph::testing
