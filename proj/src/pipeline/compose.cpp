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

#include "pipeline/compose.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "common/error.hpp"
#include "kg/decimal.hpp"

namespace circugraph::pipeline {

using templates::OutputRole;
using templates::OutputSpec;

std::vector<std::size_t> gwp_order(const sparql::ResultSet& rows, std::size_t gwp_column,
                                   std::optional<std::size_t> entity_column) {
  struct Item {
    std::size_t row;
    kg::Decimal gwp;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    const auto& cell = rows.rows[i].at(gwp_column);
    if (!kg::is_decimal(cell)) continue;
    auto d = kg::Decimal::parse(std::get<kg::Literal>(cell).lexical());
    if (d) items.push_back({i, *d});
  }
  std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    if (auto c = a.gwp <=> b.gwp; c != 0) return c < 0;
    if (entity_column) {
      if (auto c = kg::compare_terms(rows.rows[a.row][*entity_column], rows.rows[b.row][*entity_column]); c != 0) {
        return c < 0;
      }
    }
    return sparql::row_order(rows.rows[a.row], rows.rows[b.row]) < 0;
  });
  std::vector<std::size_t> out;
  for (const auto& it : items) out.push_back(it.row);
  return out;
}

std::vector<RankedEntity> rank_by_gwp100(const sparql::ResultSet& rows, std::size_t gwp_column,
                                         std::optional<std::size_t> entity_column, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  auto order = gwp_order(rows, gwp_column, entity_column);
  if (order.size() > k) order.resize(k);
  std::vector<RankedEntity> out;
  for (auto i : order) {
    const auto& row = rows.rows[i];
    out.push_back({kg::display(row.at(entity_column.value_or(0))), kg::display(row[gwp_column])});
  }
  return out;
}

std::optional<OutputSpec> infer_output(const std::string& column) {
  std::string c;
  for (char ch : column) c += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  // drop a compiled-name suffix such as "_3"
  if (auto us = c.rfind('_'); us != std::string::npos && us + 1 < c.size() &&
                              std::all_of(c.begin() + static_cast<long>(us) + 1, c.end(), ::isdigit)) {
    c.resize(us);
  }
  OutputSpec o;
  o.var = column;
  if (c.find("gwp") != std::string::npos) {
    o.role = OutputRole::kGwp100;
  } else if (c.find("label") != std::string::npos || c.find("name") != std::string::npos) {
    o.role = OutputRole::kLabel;
  } else if (c.find("categor") != std::string::npos) {
    o.role = OutputRole::kCategory;
  } else if (auto scheme = kg::parse_scheme(c)) {
    o.role = OutputRole::kCode;
    o.scheme = scheme;
  } else if (c == "e" || c == "entity" || c == "res" || c == "resource" || c == "provider" || c == "receiver") {
    o.role = OutputRole::kEntity;
  } else {
    return std::nullopt;
  }
  return o;
}

namespace {

std::string cell_text(const kg::Term& t) { return kg::display(t); }

std::vector<std::size_t> pick_columns(const ColumnRoles& roles, const retrieval::ParsedQuery& pq) {
  std::vector<std::size_t> cols;
  if (!pq.requested.empty()) {
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (!roles[i]) continue;
      for (const auto& a : pq.requested) {
        if (templates::output_provides(*roles[i], a)) {
          cols.push_back(i);
          break;
        }
      }
    }
    if (!cols.empty()) return cols;
  }
  if (pq.objective == retrieval::Objective::kMinimizeGwp100 || pq.objective == retrieval::Objective::kMaximizeGwp100) {
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i] && roles[i]->role == OutputRole::kGwp100) return {i};
    }
  }
  for (std::size_t i = roles.size(); i-- > 0;) {
    if (roles[i] && roles[i]->role == OutputRole::kLabel) return {i};
  }
  return {};
}

}  // namespace

std::string compose_answer(const sparql::ResultSet& rows, const ColumnRoles& roles, const retrieval::ParsedQuery& pq) {
  const auto cols = pick_columns(roles, pq);
  std::vector<std::string> lines;
  std::set<std::string> seen;
  for (const auto& row : rows.rows) {
    std::string line;
    auto append = [&](const kg::Term& t) {
      if (!line.empty()) line += "; ";
      line += cell_text(t);
    };
    if (cols.empty()) {
      for (const auto& t : row) {
        if (kg::is_literal(t)) append(t);
      }
    } else {
      for (auto c : cols) append(row.at(c));
    }
    if (!line.empty() && seen.insert(line).second) lines.push_back(line);
  }
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "\n";
    out += l;
  }
  return out;
}

}  // namespace circugraph::pipeline

namespace circugraph::pipeline {

namespace {

std::vector<std::string> numbers_in(const std::string& text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) ||
                               (text[j] == '.' && j + 1 < text.size() &&
                                std::isdigit(static_cast<unsigned char>(text[j + 1]))))) {
      ++j;
    }
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::vector<std::string> grounding_violations(const std::string& text, const sparql::ResultSet& rows) {
  std::set<std::string> cells;
  for (const auto& row : rows.rows) {
    for (const auto& t : row) cells.insert(kg::display(t));
  }
  std::vector<std::string> bad;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    std::size_t p = 0;
    while (p <= line.size()) {
      auto sep = line.find("; ", p);
      if (sep == std::string::npos) sep = line.size();
      auto seg = line.substr(p, sep - p);
      if (!seg.empty() && !cells.count(seg)) bad.push_back(seg);
      p = sep + 2;
    }
    pos = nl + 1;
  }
  for (const auto& n : numbers_in(text)) {
    bool found = false;
    for (const auto& c : cells) found = found || c.find(n) != std::string::npos;
    if (!found) bad.push_back(n);
  }
  return bad;
}

std::string redact_decimals(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        out += "[value withheld]";
      } else {
        out.append(text, i, j - i);
      }
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace circugraph::pipeline
