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

#include "llm/structured.hpp"

#include "common/error.hpp"
#include "llm/prompts.hpp"
#include "sparql/ast.hpp"
#include "sparql/syntax.hpp"
#include "templates/template.hpp"

namespace circugraph::llm {

using nlohmann::json;

std::string_view schema_name(Schema s) {
  switch (s) {
    case Schema::kMatchResult: return "MatchResult";
    case Schema::kMergePlan: return "MergePlan";
    case Schema::kFinalAnswer: return "final-answer-text";
    case Schema::kSparqlDraft: return "sparql-draft";
  }
  return "?";
}

namespace {

std::string nonempty_string(const json& j, const char* field) {
  if (!j.contains(field)) return std::string("missing field \"") + field + "\"";
  if (!j[field].is_string()) return std::string("field \"") + field + "\" must be a string";
  if (j[field].get<std::string>().find_first_not_of(" \t\r\n") == std::string::npos) {
    return std::string("field \"") + field + "\" is empty";
  }
  return {};
}

std::string match_problem(const json& j) {
  if (!j.contains("templates") || !j["templates"].is_array() || j["templates"].empty()) {
    return "\"templates\" must be a non-empty array";
  }
  for (const auto& t : j["templates"]) {
    if (!t.is_object()) return "each template entry must be an object";
    if (auto p = nonempty_string(t, "id"); !p.empty()) return p;
    const auto id = t["id"].get<std::string>();
    try {
      templates::find_template(id);
    } catch (const Error&) {
      return "unknown template id " + id;
    }
    if (t.contains("bindings")) {
      if (!t["bindings"].is_object()) return "\"bindings\" must be an object";
      for (const auto& [k, v] : t["bindings"].items()) {
        if (!v.is_string()) return "binding " + k + " must be a string";
      }
    }
  }
  return {};
}

}  // namespace

std::string schema_problem(Schema schema, const json& j) {
  if (!j.is_object()) return "reply must be a JSON object";
  switch (schema) {
    case Schema::kMatchResult: return match_problem(j);
    case Schema::kMergePlan: return nonempty_string(j, "plan");
    case Schema::kFinalAnswer: return nonempty_string(j, "answer");
    case Schema::kSparqlDraft: {
      if (auto p = nonempty_string(j, "query"); !p.empty()) return p;
      try {
        sparql::validate(sparql::parse_query(j["query"].get<std::string>()), false);
      } catch (const Error& e) {
        return std::string("query does not parse: ") + e.what();
      }
      return {};
    }
  }
  return "unknown schema";
}

json extract_json(std::string_view reply) {
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw Error(ErrorCode::kSchemaViolation, "reply contains no JSON object");
  }
  try {
    return json::parse(reply.substr(open, close - open + 1));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("reply is not valid JSON: ") + e.what());
  }
}

namespace {

// Empty on success.
std::string check(Schema schema, const std::string& response, json& out) {
  try {
    out = extract_json(response);
  } catch (const Error& e) {
    return e.what();
  }
  return schema_problem(schema, out);
}

}  // namespace

StructuredReply structured_complete(const Provider& provider, Schema schema, const std::string& system,
                                    const std::string& user, const GenerationParams& params) {
  StructuredReply out;
  out.exchanges.push_back(provider.complete(system, user, params));
  auto problem = check(schema, out.exchanges.back().response, out.value);
  if (problem.empty()) return out;

  const auto repair = render(prompt_text("repair"), {{"schema", std::string(schema_name(schema))},
                                                     {"problem", problem},
                                                     {"previous", out.exchanges.back().response}});
  out.exchanges.push_back(provider.complete(system, user + "\n\n" + repair, params));
  problem = check(schema, out.exchanges.back().response, out.value);
  if (!problem.empty()) {
    throw Error(ErrorCode::kSchemaViolation, std::string(schema_name(schema)) + " reply rejected twice: " + problem);
  }
  return out;
}

}  // namespace circugraph::llm
