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

#include "sparql/ast.hpp"

namespace circugraph::sparql {

// Grammar (keywords case-insensitive):
//
//   query   := ('PREFIX' pname ':' '<' iri '>')* 'SELECT' 'DISTINCT'? var+ 'WHERE'? group
//              ('ORDER' 'BY' ('ASC'|'DESC'|placeholder) '(' var ')')? ('LIMIT' integer)?
//   group   := '{' (triple '.'? | group ('UNION' group)+ | filter)* '}'
//   triple  := term term term
//   filter  := 'FILTER' '(' var op (var|term) ')'     op := = != < <= > >=
//   term    := ?var | <iri> | pname:local | "text" ('^^' datatype | '@' lang)?
//              | number | %placeholder%
//
// Bare numbers and xsd:decimal/xsd:integer typed literals are decimals.
// Throws SyntaxError(byte offset, expected).
Query parse_query(std::string_view text);

enum class Layout { kPretty, kCompact };

// Canonical text; parse_query(serialize(q)) == q. SELECT is always emitted as
// SELECT DISTINCT (the engine uses set semantics) with PREFIX lines for the
// builtin prefixes in use.
std::string serialize(const Query& q, Layout layout = Layout::kPretty);
std::string render_term(const PatternTerm& t);

}  // namespace circugraph::sparql
