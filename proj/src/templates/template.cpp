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

#include "templates/template.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "common/bundled_data.hpp"
#include "common/error.hpp"
#include "sparql/syntax.hpp"

namespace circugraph::templates {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view role_ref_name(RoleRef r) {
  switch (r) {
    case RoleRef::kProvider: return "Provider";
    case RoleRef::kReceiver: return "Receiver";
    case RoleRef::kResource: return "Resource";
    case RoleRef::kActivity: return "activity";
    case RoleRef::kTargetRole: return "role";
  }
  return "?";
}

std::optional<RoleRef> parse_role_ref(std::string_view s) {
  const auto l = lower(s);
  if (l == "provider") return RoleRef::kProvider;
  if (l == "receiver") return RoleRef::kReceiver;
  if (l == "resource") return RoleRef::kResource;
  if (l == "activity") return RoleRef::kActivity;
  if (l == "role") return RoleRef::kTargetRole;
  return std::nullopt;
}

bool role_accepts(RoleRef r, kg::EntityKind kind) {
  switch (r) {
    case RoleRef::kProvider: return kind == kg::EntityKind::kProvider;
    case RoleRef::kReceiver: return kind == kg::EntityKind::kReceiver;
    case RoleRef::kResource: return kind == kg::EntityKind::kResource;
    case RoleRef::kActivity:
    case RoleRef::kTargetRole: return kind != kg::EntityKind::kResource;
  }
  return false;
}

std::string_view relation_name(NameRelation r) {
  switch (r) {
    case NameRelation::kSubject: return "subject";
    case NameRelation::kProduced: return "produced";
    case NameRelation::kReceived: return "received";
    case NameRelation::kNamedReceiver: return "named-receiver";
    case NameRelation::kNamedProvider: return "named-provider";
  }
  return "?";
}

std::optional<NameRelation> parse_relation(std::string_view s) {
  for (auto r : {NameRelation::kSubject, NameRelation::kProduced, NameRelation::kReceived,
                 NameRelation::kNamedReceiver, NameRelation::kNamedProvider}) {
    if (relation_name(r) == s) return r;
  }
  return std::nullopt;
}

std::string PlaceholderSpec::kind_text() const {
  switch (kind) {
    case PlaceholderKind::kCode: return "code:" + std::string(kg::scheme_name(*scheme));
    case PlaceholderKind::kResourceName: return "resource-name";
    case PlaceholderKind::kEntityName: return "entity-name";
    case PlaceholderKind::kEntityKind: return "entity-kind";
    case PlaceholderKind::kNumericObjective: return "numeric-objective";
  }
  return "?";
}

std::string_view output_role_name(OutputRole r) {
  switch (r) {
    case OutputRole::kEntity: return "entity";
    case OutputRole::kLabel: return "label";
    case OutputRole::kCode: return "code";
    case OutputRole::kCategory: return "category";
    case OutputRole::kGwp100: return "gwp100";
  }
  return "?";
}

std::string attribute_text(const Attribute& a) {
  if (a.role == OutputRole::kCode && a.scheme) return "code:" + std::string(kg::scheme_name(*a.scheme));
  return std::string(output_role_name(a.role));
}

bool output_provides(const OutputSpec& o, const Attribute& a) {
  if (o.role != a.role) return false;
  return a.role != OutputRole::kCode || !a.scheme || o.scheme == a.scheme;
}

const PlaceholderSpec* QueryTemplate::placeholder(std::string_view name) const {
  for (const auto& p : placeholders) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<std::string> TemplateInstance::entity_output() const {
  for (const auto& o : expected_output) {
    if (o.role == OutputRole::kEntity) return o.var;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Catalog parsing

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) { throw ParseError(line, msg); }

PlaceholderSpec parse_placeholder(const std::string& value, std::size_t line) {
  auto w = words(value);
  if (w.size() < 2) fail(line, "placeholder needs NAME KIND");
  PlaceholderSpec p;
  p.name = w[0];
  const std::string& kind = w[1];
  if (kind.rfind("code:", 0) == 0) {
    p.kind = PlaceholderKind::kCode;
    p.scheme = kg::parse_scheme(kind.substr(5));
    if (!p.scheme) fail(line, "unknown code scheme in " + kind);
  } else if (kind == "resource-name") {
    p.kind = PlaceholderKind::kResourceName;
  } else if (kind == "entity-name") {
    p.kind = PlaceholderKind::kEntityName;
  } else if (kind == "entity-kind") {
    p.kind = PlaceholderKind::kEntityKind;
  } else if (kind == "numeric-objective") {
    p.kind = PlaceholderKind::kNumericObjective;
  } else {
    fail(line, "unknown placeholder kind " + kind);
  }
  for (std::size_t i = 2; i < w.size(); ++i) {
    const auto eq = w[i].find('=');
    if (eq == std::string::npos) fail(line, "expected key=value, got " + w[i]);
    const auto key = w[i].substr(0, eq);
    const auto val = w[i].substr(eq + 1);
    if (key == "holder" && p.kind == PlaceholderKind::kCode) {
      p.holder = parse_role_ref(val);
      if (!p.holder || *p.holder == RoleRef::kActivity) fail(line, "bad holder " + val);
    } else if (key == "relative" && p.kind == PlaceholderKind::kCode) {
      p.relative = kg::parse_kind(val);
      if (!p.relative) fail(line, "bad relative " + val);
    } else if (key == "relation" &&
               (p.kind == PlaceholderKind::kResourceName || p.kind == PlaceholderKind::kEntityName)) {
      p.relation = parse_relation(val);
      if (!p.relation) fail(line, "bad relation " + val);
    } else {
      fail(line, "key " + key + " not allowed for " + kind);
    }
  }
  if (p.kind == PlaceholderKind::kCode && !p.holder) p.holder = RoleRef::kResource;
  if ((p.kind == PlaceholderKind::kResourceName || p.kind == PlaceholderKind::kEntityName) && !p.relation) {
    p.relation = NameRelation::kSubject;
  }
  return p;
}

OutputSpec parse_output(const std::string& value, std::size_t line) {
  auto w = words(value);
  if (w.size() != 2) fail(line, "output needs VAR ROLE");
  OutputSpec o;
  o.var = w[0];
  const std::string& role = w[1];
  if (role.rfind("entity:", 0) == 0) {
    o.role = OutputRole::kEntity;
    const auto k = role.substr(7);
    if (k != "role") {
      o.entity_kind = kg::parse_kind(k);
      if (!o.entity_kind) fail(line, "bad entity kind " + k);
    }
  } else if (role.rfind("code:", 0) == 0) {
    o.role = OutputRole::kCode;
    o.scheme = kg::parse_scheme(role.substr(5));
    if (!o.scheme) fail(line, "bad code scheme " + role);
  } else if (role == "label") {
    o.role = OutputRole::kLabel;
  } else if (role == "category") {
    o.role = OutputRole::kCategory;
  } else if (role == "gwp100") {
    o.role = OutputRole::kGwp100;
  } else {
    fail(line, "unknown output role " + role);
  }
  return o;
}

Attribute parse_attribute(const std::string& s, std::size_t line) {
  if (s == "category") return {OutputRole::kCategory, std::nullopt};
  if (s == "gwp100") return {OutputRole::kGwp100, std::nullopt};
  if (s.rfind("code:", 0) == 0) {
    auto scheme = kg::parse_scheme(s.substr(5));
    if (!scheme) fail(line, "bad code scheme " + s);
    return {OutputRole::kCode, scheme};
  }
  fail(line, "unknown attribute " + s);
}

Bindings dummy_bindings(const QueryTemplate& t) {
  Bindings b;
  for (const auto& p : t.placeholders) {
    switch (p.kind) {
      case PlaceholderKind::kCode: b[p.name] = std::string(kg::scheme_digits(*p.scheme), '0'); break;
      case PlaceholderKind::kResourceName:
      case PlaceholderKind::kEntityName: b[p.name] = "x"; break;
      case PlaceholderKind::kEntityKind: b[p.name] = "Provider"; break;
      case PlaceholderKind::kNumericObjective: b[p.name] = "minimize"; break;
    }
  }
  return b;
}

void check_template(const QueryTemplate& t, std::size_t line) {
  auto bad = [&](const std::string& rule) { throw InvariantViolation(t.id, rule, line); };
  std::set<std::string> declared;
  bool has_kind = false;
  for (const auto& p : t.placeholders) {
    if (!declared.insert(p.name).second) bad("placeholder " + p.name + " declared twice");
    if (p.kind == PlaceholderKind::kEntityKind) has_kind = true;
  }
  if (declared != sparql::placeholders(t.skeleton)) bad("declared placeholders differ from the skeleton's");
  try {
    sparql::validate(t.skeleton, true);
  } catch (const Error& e) {
    bad(std::string("skeleton invalid: ") + e.what());
  }
  if (t.outputs.size() != t.skeleton.select.size()) bad("outputs must list the SELECT variables in order");
  for (std::size_t i = 0; i < t.outputs.size(); ++i) {
    if (t.outputs[i].var != t.skeleton.select[i].name) bad("outputs must list the SELECT variables in order");
    if (t.outputs[i].role == OutputRole::kEntity && !t.outputs[i].entity_kind && !has_kind) {
      bad("entity:role output needs an entity-kind placeholder");
    }
  }
  if (t.target == RoleRef::kTargetRole && !has_kind) bad("target role needs an entity-kind placeholder");
  for (const auto& p : t.placeholders) {
    if (p.holder == RoleRef::kTargetRole && !has_kind) bad("holder=role needs an entity-kind placeholder");
  }
  if (t.input && !sparql::certain_vars(t.skeleton.where).count(t.input->var)) {
    bad("input variable " + t.input->var + " is not bound by the skeleton");
  }
  // Dummy instantiation must produce an executable query.
  try {
    instantiate(t, dummy_bindings(t));
  } catch (const Error& e) {
    bad(std::string("dummy instantiation failed: ") + e.what());
  }
}

}  // namespace

std::vector<QueryTemplate> parse_catalog(std::string_view text) {
  std::vector<QueryTemplate> out;
  std::vector<std::size_t> header_lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  QueryTemplate* cur = nullptr;
  bool in_query = false;
  std::string query_text;
  std::size_t query_line = 0;

  auto finish_query = [&]() {
    if (!in_query) return;
    in_query = false;
    try {
      cur->skeleton = sparql::parse_query(query_text);
    } catch (const SyntaxError& e) {
      fail(query_line, cur->id + " skeleton: " + e.what());
    }
    query_text.clear();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (in_query) {
      if (raw.empty() || std::isspace(static_cast<unsigned char>(raw[0]))) {
        query_text += raw + "\n";
        continue;
      }
      finish_query();
    }
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated template header");
      auto w = words(line.substr(1, line.size() - 2));
      if (w.size() != 2) fail(lineno, "header must be [ID slug]");
      out.emplace_back();
      header_lines.push_back(lineno);
      cur = &out.back();
      cur->id = w[0];
      cur->slug = w[1];
      continue;
    }
    if (!cur) fail(lineno, "field outside a template block");
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(lineno, "expected 'field: value'");
    const std::string key = line.substr(0, colon);
    const std::string value = trim(line.substr(colon + 1));
    if (key == "intent") {
      cur->intent = value;
    } else if (key == "target") {
      auto r = parse_role_ref(value);
      if (!r || *r == RoleRef::kActivity) fail(lineno, "bad target " + value);
      cur->target = *r;
    } else if (key == "placeholder") {
      cur->placeholders.push_back(parse_placeholder(value, lineno));
    } else if (key == "input") {
      auto w = words(value);
      if (w.size() != 2) fail(lineno, "input needs VAR KIND");
      auto r = parse_role_ref(w[1]);
      if (!r || *r == RoleRef::kTargetRole) fail(lineno, "bad input kind " + w[1]);
      if (cur->input) fail(lineno, "at most one input per template");
      cur->input = InputSpec{w[0], *r};
    } else if (key == "output") {
      cur->outputs.push_back(parse_output(value, lineno));
    } else if (key == "requires") {
      for (const auto& item : words(value)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value in requires");
        const auto k = item.substr(0, eq);
        const auto v = item.substr(eq + 1);
        if (k == "target") {
          cur->requires_target = kg::parse_kind(v);
          if (!cur->requires_target) fail(lineno, "bad target " + v);
        } else if (k == "attribute") {
          cur->requires_attributes.push_back(parse_attribute(v, lineno));
        } else {
          fail(lineno, "unknown requirement " + k);
        }
      }
    } else if (key == "query") {
      in_query = true;
      query_line = lineno + 1;
      query_text = value.empty() ? std::string() : value + "\n";
    } else {
      fail(lineno, "unknown field " + key);
    }
  }
  if (in_query) finish_query();

  std::set<std::string> ids;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& t = out[i];
    if (t.intent.empty()) fail(header_lines[i], t.id + " has no intent");
    if (t.skeleton.select.empty()) fail(header_lines[i], t.id + " has no query");
    if (!ids.insert(t.id).second) throw Error(ErrorCode::kDuplicateDefinition, "template id " + t.id + " repeated");
    check_template(t, header_lines[i]);
  }
  return out;
}

std::string_view bundled_catalog_text() {
  auto text = bundled_file("templates.catalog");
  if (!text) throw Error(ErrorCode::kInternal, "bundled catalog missing");
  return *text;
}

namespace {
const std::vector<std::shared_ptr<const QueryTemplate>>& shared_catalog() {
  static const auto table = [] {
    std::vector<std::shared_ptr<const QueryTemplate>> v;
    for (auto& t : parse_catalog(bundled_catalog_text())) {
      v.push_back(std::make_shared<const QueryTemplate>(std::move(t)));
    }
    return v;
  }();
  return table;
}
}  // namespace

const std::vector<QueryTemplate>& catalog() {
  static const auto table = [] {
    std::vector<QueryTemplate> v;
    for (const auto& t : shared_catalog()) v.push_back(*t);
    return v;
  }();
  return table;
}

std::shared_ptr<const QueryTemplate> shared_template(std::string_view id) {
  for (const auto& t : shared_catalog()) {
    if (t->id == id) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "no template with id " + std::string(id));
}

const QueryTemplate& find_template(std::string_view id) { return *shared_template(id); }

// ---------------------------------------------------------------------------
// Instantiation

namespace {

[[noreturn]] void kind_mismatch(const PlaceholderSpec& p, const std::string& expected, const std::string& got) {
  throw Error(ErrorCode::kKindMismatch,
              "placeholder " + p.name + ": expected " + expected + ", got \"" + got + "\"");
}

}  // namespace

TemplateInstance instantiate(std::shared_ptr<const QueryTemplate> tmpl, const Bindings& bindings) {
  const QueryTemplate& t = *tmpl;
  for (const auto& [name, value] : bindings) {
    if (!t.placeholder(name)) {
      throw Error(ErrorCode::kInvalidArgument, t.id + " has no placeholder named " + name);
    }
  }
  std::map<std::string, kg::Term> terms;
  std::map<std::string, sparql::Direction> directions;
  std::optional<kg::EntityKind> role;
  for (const auto& p : t.placeholders) {
    auto it = bindings.find(p.name);
    if (it == bindings.end()) throw Error(ErrorCode::kMissingBinding, t.id + ": missing binding for " + p.name);
    const std::string& v = it->second;
    switch (p.kind) {
      case PlaceholderKind::kCode:
        if (!kg::valid_code(*p.scheme, v)) {
          kind_mismatch(p, p.kind_text() + " (" + std::to_string(kg::scheme_digits(*p.scheme)) + " digits)", v);
        }
        terms[p.name] = kg::Literal::text(v);
        break;
      case PlaceholderKind::kResourceName:
      case PlaceholderKind::kEntityName:
        if (trim(v).empty()) kind_mismatch(p, "a non-empty name", v);
        terms[p.name] = kg::Literal::text(v);
        break;
      case PlaceholderKind::kEntityKind: {
        auto k = kg::parse_kind(v);
        if (!k || *k == kg::EntityKind::kResource) kind_mismatch(p, "Provider or Receiver", v);
        role = k;
        terms[p.name] = *k == kg::EntityKind::kProvider ? kg::vocab::provider() : kg::vocab::receiver();
        break;
      }
      case PlaceholderKind::kNumericObjective: {
        const auto l = lower(v);
        if (l == "minimize" || l == "asc") {
          directions[p.name] = sparql::Direction::kAsc;
        } else if (l == "maximize" || l == "desc") {
          directions[p.name] = sparql::Direction::kDesc;
        } else {
          kind_mismatch(p, "minimize or maximize", v);
        }
        break;
      }
    }
  }
  TemplateInstance inst;
  inst.query = sparql::substitute(t.skeleton, terms, directions);
  sparql::validate(inst.query);
  inst.bindings = bindings;
  inst.expected_output = t.outputs;
  for (auto& o : inst.expected_output) {
    if (o.role == OutputRole::kEntity && !o.entity_kind) o.entity_kind = role;
  }
  switch (t.target) {
    case RoleRef::kProvider: inst.target = kg::EntityKind::kProvider; break;
    case RoleRef::kReceiver: inst.target = kg::EntityKind::kReceiver; break;
    case RoleRef::kResource: inst.target = kg::EntityKind::kResource; break;
    case RoleRef::kTargetRole: inst.target = role; break;
    case RoleRef::kActivity: break;
  }
  inst.tmpl = std::move(tmpl);
  return inst;
}

TemplateInstance instantiate(const QueryTemplate& tmpl, const Bindings& bindings) {
  return instantiate(std::make_shared<const QueryTemplate>(tmpl), bindings);
}

}  // namespace circugraph::templates
