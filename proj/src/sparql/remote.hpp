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

#include <chrono>
#include <optional>
#include <string>

#include "sparql/ast.hpp"
#include "sparql/results.hpp"

namespace circugraph::sparql {

struct Endpoint {
  std::string url;
  std::optional<std::string> bearer_token;
  std::chrono::milliseconds timeout{30000};
};

// SPARQL 1.1 protocol: POST application/sparql-query, Accept
// application/sparql-results+json. The decoded rows are put through
// finish_rows so the result obeys the same ordering and set rules as a local
// evaluation. Throws Error(kTransport), ProtocolError, Error(kDecode).
ResultSet execute_remote(const Query& q, const Endpoint& endpoint);

}  // namespace circugraph::sparql
