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

#include "retrieval/embedding.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "common/error.hpp"

namespace circugraph::retrieval {

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.components.size() != b.components.size()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimensions differ");
  }
  double s = 0;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    s += static_cast<double>(a.components[i]) * static_cast<double>(b.components[i]);
  }
  return s;
}

double l2_norm(const EmbeddingVector& v) { return std::sqrt(dot(v, v)); }

HashingEmbedder::HashingEmbedder(std::uint64_t seed, std::size_t dimension) : seed_(seed), dim_(dimension) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be positive");
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // final avalanche so bucket and sign bits are independent
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

EmbeddingVector HashingEmbedder::embed(std::string_view text) const {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  if (tokens.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to embed");

  std::vector<double> acc(dim_, 0.0);
  auto add = [&](std::string_view feature, double weight) {
    const auto h = fnv1a(feature, seed_);
    const double sign = (h >> 63) ? -1.0 : 1.0;
    acc[h % dim_] += sign * weight;
  };
  for (const auto& t : tokens) {
    add("w:" + t, 1.0);
    const std::string padded = "<" + t + ">";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) add(std::string_view(padded).substr(i, 3), 0.5);
  }
  double norm = 0;
  for (double x : acc) norm += x * x;
  norm = std::sqrt(norm);
  EmbeddingVector v;
  v.components.resize(dim_);
  if (norm == 0) {
    // every feature cancelled out; fall back to a fixed unit direction
    v.components[fnv1a(text, seed_) % dim_] = 1.0f;
    return v;
  }
  for (std::size_t i = 0; i < dim_; ++i) v.components[i] = static_cast<float>(acc[i] / norm);
  return v;
}

const Embedder& default_embedder() {
  static const HashingEmbedder e(0);
  return e;
}

}  // namespace circugraph::retrieval
