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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retrieval/question.hpp"
#include "sparql/ast.hpp"
#include "templates/template.hpp"

namespace circugraph::merge {

enum class MergeKind { kLeaf, kIntersection, kChain, kUnion };

// Chain wiring: an output variable of the left subtree (template-level
// name, e.g. "e") flows into the input variable of the right leaf.
struct Wiring {
  std::string source_var;
  std::string target_var;
  friend bool operator==(const Wiring&, const Wiring&) = default;
};

struct PlanNode {
  MergeKind kind = MergeKind::kLeaf;
  std::size_t leaf = 0;                    // kLeaf
  std::shared_ptr<const PlanNode> left;    // binary nodes
  std::shared_ptr<const PlanNode> right;
  std::optional<Wiring> wiring;            // kChain
  std::vector<std::string> shared;         // kIntersection
};

using NodePtr = std::shared_ptr<const PlanNode>;

NodePtr leaf_node(std::size_t index);
NodePtr intersection_node(NodePtr l, NodePtr r, std::vector<std::string> shared);
NodePtr chain_node(NodePtr l, NodePtr r, Wiring w);
NodePtr union_node(NodePtr l, NodePtr r);

struct MergePlan {
  std::vector<templates::TemplateInstance> leaves;
  NodePtr root;
  std::vector<std::string> final_select;  // template-level output names, in order

  // "(T01 ∩ T02)", "((T07 -> T13) -> T15)", "(T01 ∪ T02)", "T17".
  std::string text() const;
};

// Rule table, folded left to right over `instances`:
//   input-only template                    -> Chain from the current entity output
//   disjunctive question                   -> Union
//   synergy-chain objective, has an input  -> Chain
//   same entity output (name and kind)     -> Intersection on the common outputs
//   otherwise, if it has an input          -> Chain
// Throws Error(kIncompatibleOutputs) when no rule applies and
// Error(kInvalidPlan) on an empty list.
MergePlan plan_merge(const std::vector<templates::TemplateInstance>& instances, const retrieval::ParsedQuery& pq);

// Builds a plan from its canonical text (as emitted by an LLM planner).
// Leaf ids are matched to `instances` in order of first unused occurrence;
// "&"/"|" are accepted for "∩"/"∪". Intersections share every output name
// the two sides have in common; chains wire the left entity output into the
// right leaf's input. Throws Error(kInvalidPlan).
MergePlan parse_plan(std::string_view text, const std::vector<templates::TemplateInstance>& instances);

struct FinalQuery {
  sparql::Query query;
  std::vector<templates::OutputSpec> outputs;  // var = compiled SELECT name
};

// Leaf variables are renamed v -> v_<leaf+1>; only shared or wired outputs are
// unified. Errors: VariableCapture (same output name, different role or
// entity kind), IncompatibleOutputs (nothing to join on, misaligned union),
// InvalidPlan (dangling wiring, ORDER BY/LIMIT outside the last leaf, a leaf
// used twice or never).
FinalQuery compile(const MergePlan& plan);

}  // namespace circugraph::merge
