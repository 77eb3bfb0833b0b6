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

#include "sparql/remote.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/http.hpp"
#include "sparql/syntax.hpp"

namespace circugraph::sparql {

ResultSet execute_remote(const Query& q, const Endpoint& endpoint) {
  validate(q);
  HttpRequest req;
  req.url = endpoint.url;
  req.body = serialize(q);
  req.content_type = "application/sparql-query";
  req.timeout = endpoint.timeout;
  req.headers.emplace_back("Accept", "application/sparql-results+json");
  if (endpoint.bearer_token) req.headers.emplace_back("Authorization", "Bearer " + *endpoint.bearer_token);

  auto resp = http_post(req);
  if (resp.status < 200 || resp.status >= 300) {
    throw ProtocolError(resp.status, resp.body.substr(0, 200));
  }
  auto rs = from_sparql_json(resp.body);

  std::vector<std::string> expected;
  for (const auto& v : q.select) expected.push_back(v.name);
  if (rs.columns != expected) throw Error(ErrorCode::kDecode, "endpoint returned different columns");

  std::optional<std::size_t> key_col;
  std::optional<Direction> direction;
  if (q.order_by) {
    key_col = rs.column(q.order_by->var.name);
    if (key_col) direction = std::get<Direction>(q.order_by->direction);
  }
  std::vector<KeyedRow> keyed;
  for (auto& row : rs.rows) {
    KeyedRow kr;
    if (key_col) kr.key = row[*key_col];
    kr.row = std::move(row);
    keyed.push_back(std::move(kr));
  }
  if (q.order_by && !key_col) {
    // Ordering key not projected: keep the endpoint's order, only drop repeats.
    std::vector<Row> out;
    for (auto& kr : keyed) {
      if (std::find(out.begin(), out.end(), kr.row) == out.end()) out.push_back(std::move(kr.row));
    }
    rs.rows = std::move(out);
    return rs;
  }
  rs.rows = finish_rows(std::move(keyed), direction, q.limit);
  return rs;
}

}  // namespace circugraph::sparql
