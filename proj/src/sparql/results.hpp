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
#include <vector>

#include "kg/term.hpp"
#include "sparql/ast.hpp"

namespace circugraph::sparql {

using Row = std::vector<kg::Term>;

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  friend bool operator==(const ResultSet& a, const ResultSet& b) {
    return a.columns == b.columns && a.rows == b.rows;
  }
};

// Total order on values: IRIs < text < decimals; decimals numerically, with
// the lexical form breaking ties between equal values ("0.5" < "0.50").
std::strong_ordering value_order(const kg::Term& a, const kg::Term& b);
std::strong_ordering row_order(const Row& a, const Row& b);

struct KeyedRow {
  std::optional<kg::Term> key;  // ORDER BY value, when ordering
  Row row;
};

// Final solution-sequence rule shared by the evaluator and the remote client:
// sort by the ORDER BY key in `direction` (if any) and then by the whole row
// ascending, drop repeated rows keeping the first, truncate to `limit`.
std::vector<Row> finish_rows(std::vector<KeyedRow> rows, std::optional<Direction> direction,
                             std::optional<std::uint64_t> limit);

// SPARQL 1.1 Query Results JSON.
std::string to_sparql_json(const ResultSet& rs);
// Throws Error(kDecode) on anything that is not a results document.
ResultSet from_sparql_json(std::string_view text);

// Fixed-width text table for terminals.
std::string to_table(const ResultSet& rs);

}  // namespace circugraph::sparql
