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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kg/triple_store.hpp"
#include "retrieval/embedding.hpp"
#include "retrieval/question.hpp"
#include "retrieval/vector_index.hpp"
#include "templates/template.hpp"

namespace circugraph::retrieval {

enum class MatchMode { kWithTemplate, kNoTemplate, kFuzzyTemplate };

std::string_view mode_name(MatchMode m);  // "with-template", ...
std::optional<MatchMode> parse_mode(std::string_view s);

// What the fuzzy mode hands downstream: kinds and bound values, no skeleton.
struct TemplateHint {
  std::string template_id;
  std::vector<std::pair<std::string, std::string>> placeholders;  // (kind text, bound value)
  std::vector<std::string> output_roles;
};

struct MatchResult {
  MatchMode mode = MatchMode::kWithTemplate;
  std::vector<templates::TemplateInstance> instances;  // with-template only
  std::vector<double> confidence;                      // parallel to instances, in [0,1]
  std::vector<TemplateHint> hints;                     // fuzzy-template only
  bool free_form_attempt = false;                      // no-template only
};

inline constexpr double kMatchThreshold = 0.15;

struct MatchOptions {
  double threshold = kMatchThreshold;
  const Embedder* embedder = nullptr;                  // default_embedder() when null
  const std::vector<templates::QueryTemplate>* catalog = nullptr;  // bundled when null
};

// Deterministic template selection.
//  * A template is a candidate when each placeholder can be bound from a
//    distinct mention (or, for entity-kind / numeric-objective, from the
//    target role / objective), its requirements hold and its intent scores
//    at least `threshold` against the question.
//  * Candidates whose consumed mentions are a strict subset of another's
//    are dropped; equal sets keep the best-scoring one.
//  * Every code and name mention must be consumed, else NoMatch.
//  * When the last candidate does not yield the requested attributes or the
//    target role, input-only templates are appended (shortest path).
// Throws Error(kNoMatch) in with-template and fuzzy modes when nothing applies.
MatchResult match_templates(const ParsedQuery& pq, MatchMode mode, const MatchOptions& options = {});

// Rewrites name mentions to canonical graph labels: exact case-insensitive
// label match first (Resource labels for resource names, role members for
// named receivers/providers), then the role index top-1 when its score
// reaches `min_score`. Unlinked names are kept verbatim.
struct LinkContext {
  const kg::TripleStore* store = nullptr;
  const VectorIndex* providers = nullptr;
  const VectorIndex* receivers = nullptr;
  const Embedder* embedder = nullptr;
  double min_score = 0.5;
};
ParsedQuery link_entities(ParsedQuery pq, const LinkContext& ctx);

std::string to_json(const MatchResult& m);

}  // namespace circugraph::retrieval
