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

#include "kg/validate.hpp"

#include <map>
#include <string>

#include "common/error.hpp"
#include "kg/ontology.hpp"

namespace circugraph::kg {

namespace {

std::string where(std::size_t line) { return line ? "line " + std::to_string(line) + ": " : ""; }

[[noreturn]] void duplicate(const Iri& subject, const char* what, std::size_t line) {
  throw Error(ErrorCode::kDuplicateDefinition,
              where(line) + subject.value() + ": second " + what + " definition");
}

bool is_activity(EntityKind k) { return k == EntityKind::kProvider || k == EntityKind::kReceiver; }

}  // namespace

void validate_graph(const std::vector<SourcedTriple>& triples) {
  std::map<std::string, EntityKind> kinds;
  std::map<std::string, std::string> labels, categories, gwps;

  for (const auto& [t, line] : triples) {
    const auto& s = t.subject;
    const auto& p = t.predicate;
    if (p == vocab::kind()) {
      if (!is_iri(t.object)) throw InvariantViolation(s.value(), "kind object must be an IRI", line);
      auto k = kind_from_iri(std::get<Iri>(t.object));
      if (!k) throw InvariantViolation(s.value(), "unknown kind " + display(t.object), line);
      auto [it, fresh] = kinds.emplace(s.value(), *k);
      if (!fresh && it->second != *k) {
        throw InvariantViolation(s.value(), "node carries more than one kind", line);
      }
    } else if (p == vocab::label() || p == vocab::category()) {
      const bool is_label = p == vocab::label();
      if (!is_literal(t.object) || is_decimal(t.object)) {
        throw InvariantViolation(s.value(), std::string(is_label ? "label" : "category") +
                                                " must be a text literal", line);
      }
      auto& seen = is_label ? labels : categories;
      auto [it, fresh] = seen.emplace(s.value(), std::get<Literal>(t.object).lexical());
      if (!fresh && it->second != std::get<Literal>(t.object).lexical()) {
        duplicate(s, is_label ? "label" : "category", line);
      }
    } else if (p == vocab::gwp100()) {
      if (!is_decimal(t.object)) {
        throw InvariantViolation(s.value(), "hasGwp100 must be a decimal literal", line);
      }
      const auto& lit = std::get<Literal>(t.object);
      if (lit.numeric()->negative() && !lit.numeric()->is_zero()) {
        throw InvariantViolation(s.value(), "hasGwp100 must be non-negative", line);
      }
      auto [it, fresh] = gwps.emplace(s.value(), lit.lexical());
      if (!fresh && it->second != lit.lexical()) duplicate(s, "hasGwp100", line);
    } else if (auto scheme = scheme_from_predicate(p)) {
      if (!is_literal(t.object) || is_decimal(t.object)) {
        throw InvariantViolation(s.value(), std::string(scheme_name(*scheme)) +
                                                " code must be a quoted string", line);
      }
      const auto& value = std::get<Literal>(t.object).lexical();
      if (!valid_code(*scheme, value)) {
        throw InvariantViolation(s.value(), std::string(scheme_name(*scheme)) + " code \"" + value +
                                                "\" must have " +
                                                std::to_string(scheme_digits(*scheme)) + " digits",
                                 line);
      }
    }
  }

  auto kind_of = [&kinds](const std::string& iri) -> std::optional<EntityKind> {
    auto it = kinds.find(iri);
    if (it == kinds.end()) return std::nullopt;
    return it->second;
  };

  for (const auto& [t, line] : triples) {
    const auto& p = t.predicate;
    const bool role_edge = p == vocab::provider() || p == vocab::receiver();
    if (!role_edge && p != vocab::resource()) continue;
    if (!is_iri(t.object)) {
      throw InvariantViolation(t.subject.value(), p.compact() + " object must be an IRI", line);
    }
    const auto subject_kind = kind_of(t.subject.value());
    const auto object_kind = kind_of(std::get<Iri>(t.object).value());
    if (role_edge) {
      if (subject_kind && *subject_kind != EntityKind::kResource) {
        throw InvariantViolation(t.subject.value(), p.compact() + " subject must be a Resource", line);
      }
      if (!object_kind || !is_activity(*object_kind)) {
        throw InvariantViolation(t.subject.value(),
                                 p.compact() + " must reference a typed Provider or Receiver", line);
      }
    } else {
      if (subject_kind && !is_activity(*subject_kind)) {
        throw InvariantViolation(t.subject.value(),
                                 "hasResource subject must be a Provider or Receiver", line);
      }
      if (object_kind != EntityKind::kResource) {
        throw InvariantViolation(t.subject.value(), "hasResource must reference a typed Resource",
                                 line);
      }
    }
  }
}

void validate_graph(const TripleStore& store) {
  std::vector<SourcedTriple> sourced;
  for (auto& t : store.triples()) sourced.push_back({std::move(t), 0});
  validate_graph(sourced);
}

}  // namespace circugraph::kg
