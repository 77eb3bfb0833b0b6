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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kg/ontology.hpp"
#include "kg/triple_store.hpp"
#include "retrieval/embedding.hpp"

namespace circugraph::retrieval {

struct Scored {
  std::string key;
  double score = 0;
  friend bool operator==(const Scored&, const Scored&) = default;
};

// Flat inner-product index. Keys are entity IRIs for the role indexes and
// chunk ids for the text-chunk index (role empty).
class VectorIndex {
 public:
  explicit VectorIndex(std::optional<kg::EntityKind> role = std::nullopt, std::size_t dimension = kEmbeddingDim);

  // Throws kInvalidArgument on a dimension mismatch, kDuplicateDefinition on a repeated key.
  void add(std::string key, EmbeddingVector vec);

  std::optional<kg::EntityKind> role() const { return role_; }
  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return keys_.size(); }
  const std::string& key(std::size_t i) const { return keys_[i]; }
  EmbeddingVector vector(std::size_t i) const;

  // Descending score, ties by key ascending. Throws kEmptyIndex on an empty
  // index and kInvalidArgument when k == 0.
  std::vector<Scored> top_k(const EmbeddingVector& query, std::size_t k) const;

  // Binary layout, all little-endian:
  //   "CGRVIDX1" | u32 dimension | u64 count | u8 role (0 Provider, 1 Receiver, 255 none)
  //   | count*dimension f32 | count * (u32 length, key bytes)
  void save(std::ostream& out) const;
  static VectorIndex load(std::istream& in);  // kDecode on malformed input
  void save_file(const std::string& path) const;
  static VectorIndex load_file(const std::string& path);

  friend bool operator==(const VectorIndex&, const VectorIndex&) = default;

 private:
  std::optional<kg::EntityKind> role_;
  std::size_t dim_;
  std::vector<std::string> keys_;
  std::vector<float> data_;  // row-major
};

// Entities playing `role` (Provider: objects of hasProvider or nodes typed
// Provider; Receiver likewise), embedded by label, falling back to the IRI.
VectorIndex build_role_index(const kg::TripleStore& store, kg::EntityKind role,
                             const Embedder& embedder = default_embedder());

}  // namespace circugraph::retrieval
