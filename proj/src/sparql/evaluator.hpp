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

#include "kg/triple_store.hpp"
#include "sparql/ast.hpp"
#include "sparql/results.hpp"

namespace circugraph::sparql {

// Set-semantics evaluation. Basic graph patterns are joined with hash joins,
// cheapest pattern first; UNION alternatives are joined with
// partial-mapping compatibility; FILTER errors (numeric comparison over a
// non-decimal value) eliminate the solution. Rows come out in finish_rows
// order.
//
// Throws UnboundVariable / TypeMismatch / InvalidArgument from validate().
ResultSet evaluate(const Query& q, const kg::TripleStore& store);

}  // namespace circugraph::sparql
