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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "retrieval/question.hpp"
#include "sparql/results.hpp"
#include "templates/template.hpp"

namespace circugraph::pipeline {

struct RankedEntity {
  std::string entity;  // IRI, or the row's first cell when there is no entity column
  std::string gwp100;  // lexical form
  friend bool operator==(const RankedEntity&, const RankedEntity&) = default;
};

// Row indices ordered by ascending gwp100 (numeric), ties by the entity
// term, then by full row order. Rows whose gwp cell is not a decimal are
// left out.
std::vector<std::size_t> gwp_order(const sparql::ResultSet& rows, std::size_t gwp_column,
                                   std::optional<std::size_t> entity_column);

// The first min(k, ranked rows) entries of gwp_order. k == 0 throws
// Error(kInvalidArgument).
std::vector<RankedEntity> rank_by_gwp100(const sparql::ResultSet& rows, std::size_t gwp_column,
                                         std::optional<std::size_t> entity_column, std::size_t k);

// Output role of each result column; nullopt when unknown.
using ColumnRoles = std::vector<std::optional<templates::OutputSpec>>;

// Role guessed from a drafted query's column name (label, gwp100, category,
// scheme names, entity/e).
std::optional<templates::OutputSpec> infer_output(const std::string& column);

// Renders rows from their roles: requested attribute columns joined by
// "; ", else the gwp100 column for min/max questions, else the last label
// column, else every literal cell. Duplicate lines are dropped; lines are
// joined with "\n". Empty rows give an empty string.
std::string compose_answer(const sparql::ResultSet& rows, const ColumnRoles& roles, const retrieval::ParsedQuery& pq);

}  // namespace circugraph::pipeline

namespace circugraph::pipeline {

// Pieces of `text` that cannot be traced to `rows`: every "; "- or
// newline-separated segment must equal a cell's display form, and every
// number in the text must occur inside some cell. Empty when grounded.
std::vector<std::string> grounding_violations(const std::string& text, const sparql::ResultSet& rows);

// Replaces decimal numbers with a fractional part by "[value withheld]".
std::string redact_decimals(const std::string& text);

}  // namespace circugraph::pipeline
