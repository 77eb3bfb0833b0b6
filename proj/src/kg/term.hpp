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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kg/decimal.hpp"

namespace circugraph::kg {

inline constexpr std::string_view kIskgNamespace = "http://circugraph.org/iskg#";
inline constexpr std::string_view kRdfNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNamespace = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsdNamespace = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";

struct Prefix {
  std::string name;  // without the trailing colon
  std::string ns;
};

// The fixed prefix table every parser starts from.
const std::vector<Prefix>& builtin_prefixes();

// Absolute IRI. Construct through make() to get prefix expansion and the
// non-empty check; equality is plain string equality on the expanded form.
class Iri {
 public:
  Iri() = default;
  static Iri make(std::string_view absolute_or_prefixed);
  static Iri absolute(std::string value);

  const std::string& value() const { return value_; }
  // Prefixed form if a builtin prefix matches and the local part is simple.
  std::string compact() const;

  friend auto operator<=>(const Iri&, const Iri&) = default;
  friend bool operator==(const Iri&, const Iri&) = default;

 private:
  explicit Iri(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

// Expands `pfx:local` against `prefixes`; nullopt when no prefix matches.
std::optional<std::string> expand_prefixed(std::string_view name, const std::vector<Prefix>& prefixes);

enum class LiteralKind { kText, kDecimal };

class Literal {
 public:
  Literal() = default;
  static Literal text(std::string lexical);
  // Throws Error(kInvalidArgument) when `lexical` is not a decimal.
  static Literal decimal(std::string lexical);
  static Literal decimal(const Decimal& value) { return decimal(value.canonical()); }

  LiteralKind kind() const { return kind_; }
  bool is_decimal() const { return kind_ == LiteralKind::kDecimal; }
  const std::string& lexical() const { return lexical_; }
  // Present iff is_decimal().
  const std::optional<Decimal>& numeric() const { return numeric_; }

  // RDF term identity: kind and lexical form. "0.50" and "0.5" are distinct
  // terms that compare equal numerically.
  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind_ == b.kind_ && a.lexical_ == b.lexical_;
  }

 private:
  LiteralKind kind_ = LiteralKind::kText;
  std::string lexical_;
  std::optional<Decimal> numeric_;
};

using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
inline bool is_decimal(const Term& t) { return is_literal(t) && std::get<Literal>(t).is_decimal(); }

// Total order: IRIs < text literals < decimal literals, then by lexical form.
std::strong_ordering compare_terms(const Term& a, const Term& b);

// Unique string key per term ("I..", "T..", "D.."), used for dictionaries.
std::string term_key(const Term& t);

// N-Triples rendering: <iri>, "text", "1.5"^^<xsd:decimal>.
std::string to_ntriples(const Term& t);
// Human-facing value: IRI string or literal lexical form.
std::string display(const Term& t);

// Escapes backslash, double quote, newline, carriage return and tab.
std::string escape_string(std::string_view s);

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Lexicographic by N-Triples form of S, P, O.
bool canonical_less(const Triple& a, const Triple& b);

}  // namespace circugraph::kg
