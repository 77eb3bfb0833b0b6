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

#include "sparql/results.hpp"

#include <algorithm>

#include <json.hpp>

#include "common/error.hpp"

namespace circugraph::sparql {

using nlohmann::json;

std::optional<std::size_t> ResultSet::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

std::strong_ordering value_order(const kg::Term& a, const kg::Term& b) {
  auto rank = [](const kg::Term& t) {
    if (kg::is_iri(t)) return 0;
    return std::get<kg::Literal>(t).is_decimal() ? 2 : 1;
  };
  if (auto c = rank(a) <=> rank(b); c != 0) return c;
  if (kg::is_decimal(a)) {
    const auto& la = std::get<kg::Literal>(a);
    const auto& lb = std::get<kg::Literal>(b);
    if (auto c = *la.numeric() <=> *lb.numeric(); c != 0) return c;
  }
  return kg::display(a) <=> kg::display(b);
}

std::strong_ordering row_order(const Row& a, const Row& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = value_order(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::vector<Row> finish_rows(std::vector<KeyedRow> rows, std::optional<Direction> direction,
                             std::optional<std::uint64_t> limit) {
  std::stable_sort(rows.begin(), rows.end(), [&](const KeyedRow& x, const KeyedRow& y) {
    if (direction && x.key && y.key) {
      auto c = value_order(*x.key, *y.key);
      if (c != 0) return *direction == Direction::kAsc ? c < 0 : c > 0;
    }
    return row_order(x.row, y.row) < 0;
  });
  std::vector<Row> out;
  // Rows with equal content are adjacent only when not ordering by key, so
  // deduplicate through a sorted index.
  std::vector<const Row*> seen;
  for (auto& kr : rows) {
    auto it = std::lower_bound(seen.begin(), seen.end(), &kr.row,
                               [](const Row* a, const Row* b) { return row_order(*a, *b) < 0; });
    if (it != seen.end() && row_order(**it, kr.row) == 0) continue;
    out.push_back(kr.row);
    seen.insert(it, &kr.row);
    if (limit && out.size() >= *limit) break;
  }
  return out;
}

std::string to_sparql_json(const ResultSet& rs) {
  json vars = json::array();
  for (const auto& c : rs.columns) vars.push_back(c);
  json bindings = json::array();
  for (const auto& row : rs.rows) {
    json b = json::object();
    for (std::size_t i = 0; i < rs.columns.size() && i < row.size(); ++i) {
      const auto& t = row[i];
      if (kg::is_iri(t)) {
        b[rs.columns[i]] = {{"type", "uri"}, {"value", std::get<kg::Iri>(t).value()}};
      } else {
        const auto& l = std::get<kg::Literal>(t);
        json v = {{"type", "literal"}, {"value", l.lexical()}};
        if (l.is_decimal()) v["datatype"] = std::string(kg::kXsdDecimal);
        b[rs.columns[i]] = std::move(v);
      }
    }
    bindings.push_back(std::move(b));
  }
  json doc = {{"head", {{"vars", vars}}}, {"results", {{"bindings", bindings}}}};
  return doc.dump();
}

ResultSet from_sparql_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kDecode, std::string("results body is not JSON: ") + e.what());
  }
  try {
    ResultSet rs;
    for (const auto& v : doc.at("head").at("vars")) rs.columns.push_back(v.get<std::string>());
    for (const auto& b : doc.at("results").at("bindings")) {
      Row row;
      for (const auto& c : rs.columns) {
        if (!b.contains(c)) throw Error(ErrorCode::kDecode, "solution leaves ?" + c + " unbound");
        const auto& v = b.at(c);
        const auto type = v.at("type").get<std::string>();
        const auto value = v.at("value").get<std::string>();
        if (type == "uri") {
          row.push_back(kg::Iri::absolute(value));
        } else if (type == "literal" || type == "typed-literal") {
          const std::string xsd(kg::kXsdNamespace);
          const auto dt = v.value("datatype", std::string());
          if ((dt == kg::kXsdDecimal || dt == xsd + "integer") && kg::Decimal::parse(value)) {
            row.push_back(kg::Literal::decimal(value));
          } else {
            row.push_back(kg::Literal::text(value));
          }
        } else {
          throw Error(ErrorCode::kDecode, "unsupported binding type " + type);
        }
      }
      rs.rows.push_back(std::move(row));
    }
    return rs;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("malformed results document: ") + e.what());
  }
}

std::string to_table(const ResultSet& rs) {
  std::vector<std::size_t> width;
  for (const auto& c : rs.columns) width.push_back(c.size() + 1);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rs.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(kg::is_iri(row[i]) ? std::get<kg::Iri>(row[i]).compact() : kg::display(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out += line[i];
      if (i + 1 < line.size()) out += std::string(width[i] - line[i].size() + 2, ' ');
    }
    out += "\n";
  };
  std::vector<std::string> head;
  for (const auto& c : rs.columns) head.push_back("?" + c);
  emit(head);
  for (const auto& line : cells) emit(line);
  return out;
}

}  // namespace circugraph::sparql
