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

#include "kg/term.hpp"

#include <cctype>

#include "common/error.hpp"

namespace circugraph::kg {

const std::vector<Prefix>& builtin_prefixes() {
  static const std::vector<Prefix> table = {
      {"iskg", std::string(kIskgNamespace)},
      {"rdf", std::string(kRdfNamespace)},
      {"rdfs", std::string(kRdfsNamespace)},
      {"xsd", std::string(kXsdNamespace)},
  };
  return table;
}

std::optional<std::string> expand_prefixed(std::string_view name, const std::vector<Prefix>& prefixes) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view pfx = name.substr(0, colon);
  for (const auto& p : prefixes) {
    if (p.name == pfx) return p.ns + std::string(name.substr(colon + 1));
  }
  return std::nullopt;
}

Iri Iri::make(std::string_view absolute_or_prefixed) {
  if (absolute_or_prefixed.size() >= 2 && absolute_or_prefixed.front() == '<' &&
      absolute_or_prefixed.back() == '>') {
    absolute_or_prefixed = absolute_or_prefixed.substr(1, absolute_or_prefixed.size() - 2);
  }
  if (absolute_or_prefixed.empty()) throw Error(ErrorCode::kInvalidArgument, "empty IRI");
  if (auto expanded = expand_prefixed(absolute_or_prefixed, builtin_prefixes())) {
    // "http://..." also has a colon; only a known prefix expands.
    return Iri(std::move(*expanded));
  }
  return Iri(std::string(absolute_or_prefixed));
}

Iri Iri::absolute(std::string value) {
  if (value.empty()) throw Error(ErrorCode::kInvalidArgument, "empty IRI");
  return Iri(std::move(value));
}

namespace {
bool simple_local(std::string_view local) {
  if (local.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(local[0])) && local[0] != '_') return false;
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}
}  // namespace

std::string Iri::compact() const {
  for (const auto& p : builtin_prefixes()) {
    if (value_.size() > p.ns.size() && value_.compare(0, p.ns.size(), p.ns) == 0) {
      std::string_view local(value_.data() + p.ns.size(), value_.size() - p.ns.size());
      if (simple_local(local)) return p.name + ":" + std::string(local);
    }
  }
  return "<" + value_ + ">";
}

Literal Literal::text(std::string lexical) {
  Literal l;
  l.kind_ = LiteralKind::kText;
  l.lexical_ = std::move(lexical);
  return l;
}

Literal Literal::decimal(std::string lexical) {
  auto parsed = Decimal::parse(lexical);
  if (!parsed) throw Error(ErrorCode::kInvalidArgument, "not a decimal literal: " + lexical);
  Literal l;
  l.kind_ = LiteralKind::kDecimal;
  l.lexical_ = std::move(lexical);
  l.numeric_ = std::move(parsed);
  return l;
}

std::strong_ordering compare_terms(const Term& a, const Term& b) {
  auto rank = [](const Term& t) {
    if (is_iri(t)) return 0;
    return std::get<Literal>(t).is_decimal() ? 2 : 1;
  };
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra <=> rb;
  if (ra == 0) return std::get<Iri>(a).value().compare(std::get<Iri>(b).value()) <=> 0;
  return std::get<Literal>(a).lexical().compare(std::get<Literal>(b).lexical()) <=> 0;
}

std::string term_key(const Term& t) {
  if (is_iri(t)) return "I" + std::get<Iri>(t).value();
  const auto& l = std::get<Literal>(t);
  return (l.is_decimal() ? "D" : "T") + l.lexical();
}

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_ntriples(const Term& t) {
  if (is_iri(t)) return "<" + std::get<Iri>(t).value() + ">";
  const auto& l = std::get<Literal>(t);
  std::string out = "\"" + escape_string(l.lexical()) + "\"";
  if (l.is_decimal()) out += "^^<" + std::string(kXsdDecimal) + ">";
  return out;
}

std::string display(const Term& t) {
  if (is_iri(t)) return std::get<Iri>(t).value();
  return std::get<Literal>(t).lexical();
}

bool canonical_less(const Triple& a, const Triple& b) {
  if (a.subject != b.subject) return a.subject.value() < b.subject.value();
  if (a.predicate != b.predicate) return a.predicate.value() < b.predicate.value();
  return to_ntriples(a.object) < to_ntriples(b.object);
}

}  // namespace circugraph::kg
