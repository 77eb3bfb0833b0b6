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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "retrieval/embedding.hpp"

namespace circugraph::eval {

// Lowercase; whitespace and ASCII punctuation separate tokens.
std::vector<std::string> tokenize(std::string_view text);

struct Rouge {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);
// beta = 1. An empty side gives all zeros.
Rouge rouge_l(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);
inline Rouge rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(tokenize(candidate), tokenize(reference));
}

// Lowercase, drop ASCII and typographic punctuation, drop the articles
// a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view text);
int exact_match(std::string_view candidate, std::string_view reference);

class TokenEmbedder {
 public:
  virtual ~TokenEmbedder() = default;
  virtual retrieval::EmbeddingVector embed(const std::string& token) const = 0;
};

// Unsigned character 3-gram counts of "<token>", so cosines lie in [0, 1].
class NgramTokenEmbedder final : public TokenEmbedder {
 public:
  explicit NgramTokenEmbedder(std::size_t dimension = retrieval::kEmbeddingDim) : dim_(dimension) {}
  retrieval::EmbeddingVector embed(const std::string& token) const override;

 private:
  std::size_t dim_;
};

const TokenEmbedder& default_token_embedder();

// Symmetric greedy-max average of token cosines. Throws
// Error(kEmptySequence) when either list is empty. A zero vector has cosine
// 0 with everything.
double bert_style_score(const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
                        const TokenEmbedder& embedder = default_token_embedder());

// Mean of 0/1 outcomes. Throws Error(kEmptyRounds) on an empty list and
// Error(kInvalidArgument) on values other than 0 and 1.
double round_accuracy(const std::vector<int>& outcomes);

}  // namespace circugraph::eval
