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

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kg/triple_store.hpp"
#include "merge/plan.hpp"
#include "sparql/results.hpp"
#include "templates/template.hpp"

namespace circugraph::testing {

// Schema-shaped random graph with small value pools (labels, codes,
// categories) so that template bindings drawn from the pools hit often.
struct SchemaGraph {
  std::vector<std::string> labels;
  std::map<kg::CodeScheme, std::vector<std::string>> codes;
  kg::TripleStore store;
};
SchemaGraph random_schema_graph(std::mt19937_64& rng);

// Instantiates `t` with bindings drawn from the graph's pools.
templates::TemplateInstance random_instance(std::mt19937_64& rng, const SchemaGraph& g,
                                            const templates::QueryTemplate& t);

// A solution as a map from template-level output name to term key.
using NamedRow = std::map<std::string, std::string>;
using RowSet = std::set<NamedRow>;

// Rows of a single leaf, keyed by its template output names.
RowSet leaf_rows(const templates::TemplateInstance& inst, const kg::TripleStore& store);
// Rows of compile(plan), keyed by plan.final_select.
RowSet compiled_rows(const merge::MergePlan& plan, const kg::TripleStore& store);

// Natural join on `shared`, keeping every column.
RowSet join_oracle(const RowSet& a, const RowSet& b, const std::vector<std::string>& shared);
RowSet union_oracle(const RowSet& a, const RowSet& b);
// Runs `b` once per distinct value of `a[source]`, with b's input variable
// replaced by that value, and unions the results (b's columns only).
RowSet chain_oracle(const RowSet& a, const std::string& source, const templates::TemplateInstance& b,
                    const kg::TripleStore& store);
RowSet project(const RowSet& rows, const std::vector<std::string>& columns);

}  // namespace circugraph::testing
