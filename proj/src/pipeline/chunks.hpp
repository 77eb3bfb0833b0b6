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
#include <vector>

#include "kg/triple_store.hpp"
#include "retrieval/embedding.hpp"
#include "retrieval/vector_index.hpp"

namespace circugraph::pipeline {

// One sentence-style passage per labelled node.
struct TextChunk {
  std::string id;     // node IRI
  std::string title;  // node label
  std::string text;
};

std::vector<TextChunk> render_chunks(const kg::TripleStore& store);

// Unstructured passage retrieval for the text-chunk baseline.
class ChunkIndex {
 public:
  ChunkIndex() = default;
  static ChunkIndex build(const kg::TripleStore& store,
                          const retrieval::Embedder& embedder = retrieval::default_embedder());
  std::size_t size() const { return chunks_.size(); }
  // Best `k` passages for `question`; empty when the index or question is empty.
  std::vector<std::pair<const TextChunk*, double>> search(const std::string& question, std::size_t k,
                                                          const retrieval::Embedder& embedder =
                                                              retrieval::default_embedder()) const;

 private:
  std::vector<TextChunk> chunks_;
  retrieval::VectorIndex index_;
};

}  // namespace circugraph::pipeline
