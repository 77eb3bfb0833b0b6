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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "llm/llm.hpp"

namespace circugraph::llm {

// Reply shapes an LLM stage may be asked for.
//   kMatchResult:  {"templates": [{"id": "T01", "bindings": {"ewc": "080121"}}, ...]}
//   kMergePlan:    {"plan": "(T01 ∩ T02)"}
//   kFinalAnswer:  {"answer": "..."}
//   kSparqlDraft:  {"query": "SELECT ..."}   (must parse and validate, no placeholders)
enum class Schema { kMatchResult, kMergePlan, kFinalAnswer, kSparqlDraft };

std::string_view schema_name(Schema s);  // "MatchResult", "MergePlan", "final-answer-text", "sparql-draft"

// Returns an empty string when `reply` fits `schema`, else what is wrong.
std::string schema_problem(Schema schema, const nlohmann::json& reply);

// Pulls the JSON object out of a reply (code fences and surrounding prose
// are tolerated). Throws Error(kSchemaViolation).
nlohmann::json extract_json(std::string_view reply);

struct StructuredReply {
  nlohmann::json value;
  std::vector<ChatExchange> exchanges;  // 1, or 2 when the repair retry ran
};

// One completion, validated; on failure a single repair request that quotes
// the problem, then Error(kSchemaViolation). Provider errors propagate.
StructuredReply structured_complete(const Provider& provider, Schema schema, const std::string& system,
                                    const std::string& user, const GenerationParams& params = {});

}  // namespace circugraph::llm
