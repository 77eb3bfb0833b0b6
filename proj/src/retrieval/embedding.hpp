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
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace circugraph::retrieval {

inline constexpr std::size_t kEmbeddingDim = 384;

struct EmbeddingVector {
  std::vector<float> components;
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

// Inner product accumulated in double, in index order.
double dot(const EmbeddingVector& a, const EmbeddingVector& b);
double l2_norm(const EmbeddingVector& v);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dimension() const = 0;
  // Unit-norm vector. Throws Error(kEmptyInput) when `text` has no features.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

// Signed feature hashing of lowercase word unigrams and character 3-grams
// of each padded word, FNV-1a keyed by `seed`.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::uint64_t seed = 0, std::size_t dimension = kEmbeddingDim);
  std::size_t dimension() const override { return dim_; }
  EmbeddingVector embed(std::string_view text) const override;

 private:
  std::uint64_t seed_;
  std::size_t dim_;
};

const Embedder& default_embedder();
inline EmbeddingVector embed(std::string_view text) { return default_embedder().embed(text); }

}  // namespace circugraph::retrieval
