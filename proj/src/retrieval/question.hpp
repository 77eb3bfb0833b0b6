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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kg/ontology.hpp"
#include "kg/term.hpp"
#include "retrieval/lexicon.hpp"
#include "templates/template.hpp"

namespace circugraph::retrieval {

enum class Objective { kLookup, kMinimizeGwp100, kMaximizeGwp100, kSynergyChain };

std::string_view objective_name(Objective o);  // "lookup", "minimize-gwp100", ...
std::optional<Objective> parse_objective(std::string_view s);

struct CodeMention {
  kg::ClassificationCode code;
  kg::EntityKind holder = kg::EntityKind::kResource;  // nearest preceding role word
  std::optional<kg::EntityKind> relative;             // "<relative> of <holder> coded ..."
  std::size_t offset = 0;                             // byte offset of the scheme keyword
};

struct NameMention {
  std::string text;
  templates::NameRelation relation = templates::NameRelation::kSubject;
  bool quoted = false;
  std::size_t offset = 0;
  std::optional<kg::Iri> linked;  // set by entity linking
};

struct ParsedQuery {
  std::string raw;
  std::vector<kg::ClassificationCode> codes;
  std::vector<std::string> resource_names;
  std::optional<kg::EntityKind> target_role;
  Objective objective = Objective::kLookup;

  std::vector<CodeMention> code_mentions;
  std::vector<NameMention> name_mentions;
  std::vector<templates::Attribute> requested;
  bool disjunctive = false;

  // No code and no name: nothing a template could be bound from.
  bool empty() const { return code_mentions.empty() && name_mentions.empty(); }
};

// Rule-based extraction driven by the lexicon. Never throws on content;
// an unrecognized question yields an empty ParsedQuery.
ParsedQuery parse_question(std::string_view text, const Lexicon& lexicon = Lexicon::bundled());

// Stable JSON rendering for logs and prompts.
std::string to_json(const ParsedQuery& pq);

}  // namespace circugraph::retrieval
