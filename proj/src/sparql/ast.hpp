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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kg/term.hpp"

namespace circugraph::sparql {

struct Var {
  std::string name;  // without '?'
  friend auto operator<=>(const Var&, const Var&) = default;
};

// `%name%` slot in a template skeleton. Never present in an executable query.
struct Placeholder {
  std::string name;
  friend auto operator<=>(const Placeholder&, const Placeholder&) = default;
};

using PatternTerm = std::variant<Var, kg::Iri, kg::Literal, Placeholder>;

struct TriplePattern {
  PatternTerm s;
  PatternTerm p;
  PatternTerm o;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

struct Filter {
  Var lhs;
  CompareOp op;
  PatternTerm rhs;
  friend bool operator==(const Filter&, const Filter&) = default;
};

// { triples  {alt} UNION {alt} ...  FILTER(...) }
struct GroupPattern {
  std::vector<TriplePattern> triples;
  std::vector<std::vector<GroupPattern>> unions;  // each entry: two or more alternatives
  std::vector<Filter> filters;
  friend bool operator==(const GroupPattern&, const GroupPattern&) = default;
};

enum class Direction { kAsc, kDesc };

struct OrderBy {
  Var var;
  std::variant<Direction, Placeholder> direction;
  friend bool operator==(const OrderBy&, const OrderBy&) = default;
};

struct Query {
  std::vector<Var> select;
  GroupPattern where;
  std::optional<OrderBy> order_by;
  std::optional<std::uint64_t> limit;
  friend bool operator==(const Query&, const Query&) = default;
};

bool valid_var_name(std::string_view name);
std::string_view op_symbol(CompareOp op);

// Variables that every solution of `g` binds: those in its triples plus
// those bound by every alternative of one of its unions.
std::set<std::string> certain_vars(const GroupPattern& g);
// Every variable mentioned anywhere in `g`.
std::set<std::string> all_vars(const GroupPattern& g);
std::set<std::string> placeholders(const Query& q);

// Structural checks: select non-empty with distinct valid names; select,
// order and filter variables certainly bound in their scope
// (UnboundVariable); ordering filters against non-decimal constants
// (TypeMismatch); limit > 0. Placeholders are allowed only if
// `allow_placeholders`.
void validate(const Query& q, bool allow_placeholders = false);

// Replaces placeholders; unknown names are left in place.
Query substitute(const Query& q, const std::map<std::string, kg::Term>& terms,
                 const std::map<std::string, Direction>& directions = {});

// Renames variables through `mapping`; names absent from it are unchanged.
Query rename_vars(const Query& q, const std::map<std::string, std::string>& mapping);
GroupPattern rename_vars(const GroupPattern& g, const std::map<std::string, std::string>& mapping);

}  // namespace circugraph::sparql
