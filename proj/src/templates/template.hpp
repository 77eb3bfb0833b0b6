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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kg/ontology.hpp"
#include "sparql/ast.hpp"

namespace circugraph::templates {

// Which entity a code or input slot refers to. kActivity accepts either
// Provider or Receiver; kTargetRole follows the template's entity-kind
// placeholder.
enum class RoleRef { kProvider, kReceiver, kResource, kActivity, kTargetRole };

std::string_view role_ref_name(RoleRef r);
std::optional<RoleRef> parse_role_ref(std::string_view s);
// True when an entity of `kind` may stand where `r` is expected.
bool role_accepts(RoleRef r, kg::EntityKind kind);

// How a quoted or extracted name relates to the entity the question asks for.
enum class NameRelation { kSubject, kProduced, kReceived, kNamedReceiver, kNamedProvider };

std::string_view relation_name(NameRelation r);
std::optional<NameRelation> parse_relation(std::string_view s);

enum class PlaceholderKind { kCode, kResourceName, kEntityName, kEntityKind, kNumericObjective };

struct PlaceholderSpec {
  std::string name;
  PlaceholderKind kind = PlaceholderKind::kCode;
  std::optional<kg::CodeScheme> scheme;      // kCode
  std::optional<RoleRef> holder;             // kCode
  std::optional<kg::EntityKind> relative;    // kCode: "receivers of resources coded ..."
  std::optional<NameRelation> relation;      // kResourceName, kEntityName

  // "code:NACE", "resource-name", ...
  std::string kind_text() const;
};

enum class OutputRole { kEntity, kLabel, kCode, kCategory, kGwp100 };

std::string_view output_role_name(OutputRole r);

struct OutputSpec {
  std::string var;
  OutputRole role = OutputRole::kLabel;
  // kEntity: the entity's kind; nullopt means "bound by the entity-kind placeholder".
  std::optional<kg::EntityKind> entity_kind;
  std::optional<kg::CodeScheme> scheme;  // kCode
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

// A requested answer attribute ("what CPA code", "which category").
struct Attribute {
  OutputRole role = OutputRole::kCategory;  // kCode, kCategory or kGwp100
  std::optional<kg::CodeScheme> scheme;
  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

std::string attribute_text(const Attribute& a);
bool output_provides(const OutputSpec& o, const Attribute& a);

struct InputSpec {
  std::string var;
  RoleRef kind = RoleRef::kActivity;
};

struct QueryTemplate {
  std::string id;
  std::string slug;
  std::string intent;
  RoleRef target = RoleRef::kResource;
  std::vector<PlaceholderSpec> placeholders;
  std::optional<InputSpec> input;
  std::vector<OutputSpec> outputs;
  std::optional<kg::EntityKind> requires_target;
  std::vector<Attribute> requires_attributes;
  sparql::Query skeleton;

  const PlaceholderSpec* placeholder(std::string_view name) const;
};

// Parses the catalog text format (see data/templates.catalog). Throws
// Error(kParse) with a line number on malformed input and
// Error(kInvariantViolation) when a skeleton breaks the template rules.
std::vector<QueryTemplate> parse_catalog(std::string_view text);

// The bundled 18-entry catalog, parsed once.
const std::vector<QueryTemplate>& catalog();
const QueryTemplate& find_template(std::string_view id);  // Error(kInvalidArgument)
std::string_view bundled_catalog_text();

// Binding values are plain strings: digits for codes, the name for
// resource/entity names, "Provider"/"Receiver" for entity-kind and
// "minimize"/"maximize" (or "ASC"/"DESC") for numeric-objective.
using Bindings = std::map<std::string, std::string>;

struct TemplateInstance {
  std::shared_ptr<const QueryTemplate> tmpl;
  Bindings bindings;
  sparql::Query query;               // ground
  std::vector<OutputSpec> expected_output;  // entity kinds resolved
  std::optional<kg::EntityKind> target;     // resolved target role

  const std::string& template_id() const { return tmpl->id; }
  std::optional<std::string> entity_output() const;  // first entity-role output var
};

// Throws MissingBinding / KindMismatch (Error codes kMissingBinding,
// kKindMismatch) and kInvalidArgument for bindings naming no placeholder.
TemplateInstance instantiate(const QueryTemplate& tmpl, const Bindings& bindings);
TemplateInstance instantiate(std::shared_ptr<const QueryTemplate> tmpl, const Bindings& bindings);

std::shared_ptr<const QueryTemplate> shared_template(std::string_view id);

}  // namespace circugraph::templates
