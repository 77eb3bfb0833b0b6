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

#include "eval/mock_scripts.hpp"

#include <json.hpp>

#include "eval/cases.hpp"
#include "llm/prompts.hpp"
#include "pipeline/pipeline.hpp"
#include "retrieval/matcher.hpp"

namespace circugraph::eval {

namespace {

retrieval::MatchResult match_case(const kg::TripleStore& store, const retrieval::VectorIndex& prov,
                                  const retrieval::VectorIndex& rec, const std::string& question,
                                  retrieval::MatchMode mode) {
  auto pq = retrieval::link_entities(retrieval::parse_question(question), {&store, &prov, &rec});
  return retrieval::match_templates(pq, mode);
}

std::string reply(const char* key, const std::string& value) { return nlohmann::json{{key, value}}.dump(); }

}  // namespace

llm::MockScript build_fuzzy_script(const kg::TripleStore& fixture) {
  static const char* drafts[] = {
      R"(SELECT ?entity ?label WHERE { ?entity iskg:hasEwcCode "080121" . ?entity iskg:hasHSCode "810330" . ?entity rdfs:label ?label . })",
      R"(SELECT ?entity ?label WHERE { ?entity iskg:hasNaceCode "3821" . ?res rdfs:label "Waste cement" . ?res iskg:hasProvider ?entity . ?entity rdfs:label ?label . })",
      R"(SELECT ?entity ?label ?gwp100 WHERE { ?res iskg:hasReceiver ?entity . ?entity iskg:hasNaceCode "3822" . ?entity iskg:hasGwp100 ?gwp100 . ?entity rdfs:label ?label . } ORDER BY ASC(?gwp100) LIMIT 1)",
      R"(SELECT ?cpa ?category WHERE { ?p iskg:hasNaceCode "3821" . ?res iskg:hasProvider ?p . ?res iskg:hasCpaCode ?cpa . ?res iskg:hasCategory ?category . })",
      // second hop dropped
      R"(SELECT ?entity ?label WHERE { ?res iskg:hasCpaCode "382150" . ?res iskg:hasReceiver ?entity . ?entity rdfs:label ?label . })",
      // provider and receiver swapped
      R"(SELECT ?entity ?label WHERE { ?res iskg:hasEwcCode "070213" . ?res iskg:hasReceiver ?entity . ?entity rdfs:label ?label . })",
  };
  const auto prov = retrieval::build_role_index(fixture, kg::EntityKind::kProvider);
  const auto rec = retrieval::build_role_index(fixture, kg::EntityKind::kReceiver);
  const auto system = llm::prompt_text("draft");
  llm::MockScript script;
  const auto& cases = bundled_cases();
  for (std::size_t i = 0; i < cases.size() && i < std::size(drafts); ++i) {
    auto m = match_case(fixture, prov, rec, cases[i].question, retrieval::MatchMode::kFuzzyTemplate);
    const auto user = pipeline::draft_user_prompt(cases[i].question, &m);
    script.add(llm::prompt_hash(system, user), {{reply("query", drafts[i])}, 0, 0});
  }
  return script;
}

llm::MockScript build_variant_script(const kg::TripleStore& fixture) {
  struct Plans {
    const char* right;
    const char* wrong_a;
    const char* wrong_b;
  };
  static const Plans plans[] = {
      {"(T01 ∩ T02)", "(T01 ∪ T02)", "(T02 -> T01)"},
      {"(T07 ∩ T09)", "(T07 ∪ T09)", "T07"},
      {"T17", "(T17 ∩ T17)", "T18"},
      {"((T07 -> T13) -> T15)", "((T07 ∩ T13) -> T15)", "(T07 -> (T13 -> T15))"},
      {"(T10 -> T06)", "(T10 ∪ T06)", "(T06 -> T10)"},
      {"(T11 -> T12)", "(T11 ∪ T12)", "(T12 -> T11)"},
  };
  const auto prov = retrieval::build_role_index(fixture, kg::EntityKind::kProvider);
  const auto rec = retrieval::build_role_index(fixture, kg::EntityKind::kReceiver);
  const auto system = llm::prompt_text("plan");
  llm::MockScript script;
  const auto& cases = bundled_cases();
  for (std::size_t i = 0; i < cases.size() && i < std::size(plans); ++i) {
    auto m = match_case(fixture, prov, rec, cases[i].question, retrieval::MatchMode::kWithTemplate);
    const auto user = pipeline::planner_user_prompt(cases[i].question, m.instances);
    const auto& p = plans[i];
    script.add(llm::prompt_hash(system, user),
               {{reply("plan", p.right), reply("plan", p.right), reply("plan", p.right), reply("plan", p.wrong_a),
                 reply("plan", p.wrong_b)},
                0,
                0});
  }
  return script;
}

}  // namespace circugraph::eval
