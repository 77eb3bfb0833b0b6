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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kg/triple_store.hpp"
#include "kg/validate.hpp"

namespace circugraph::kg {

enum class GraphFormat { kNTriples, kFixture };

// N-Triples subset: IRIs, plain/typed literals; xsd:decimal literals become
// decimals, every other datatype or language tag is read as text. Blank nodes
// are rejected.
std::vector<SourcedTriple> parse_ntriples(std::string_view text);

// Line-oriented fixture format:
//
//   # comment
//   @prefix ex: <http://example.org/> .
//   iskg:res_waste_paint iskg:kind iskg:Resource
//       rdfs:label "Waste paint"
//       iskg:hasEwcCode "080121"
//       iskg:hasGwp100 0.0123
//
// A line starting in column 0 names a subject and may carry one predicate and
// object; indented lines add predicate/object pairs to the last subject.
// Bare numbers are decimals, quoted strings are text.
std::vector<SourcedTriple> parse_fixture_format(std::string_view text);

// Parses and validates; duplicates collapse to one triple.
TripleStore load_graph_text(std::string_view text, GraphFormat format);
// Format from extension (.nt / .kg), otherwise sniffed from content.
TripleStore load_graph(const std::filesystem::path& path);

// Canonical, byte-deterministic renderings (triples sorted by S, P, O).
std::string write_ntriples(const TripleStore& store);
std::string write_fixture_format(const TripleStore& store);
void save_graph(const TripleStore& store, const std::filesystem::path& path);

}  // namespace circugraph::kg
