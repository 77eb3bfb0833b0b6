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

#include "eval/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "common/error.hpp"

namespace circugraph::eval {

namespace {

bool separator(unsigned char c) { return std::isspace(c) || (c < 0x80 && std::ispunct(c)); }

// UTF-8 quotes, dashes and ellipsis; replaced by spaces before tokenizing.
constexpr std::string_view kTypographic[] = {"\u201c", "\u201d", "\u2018", "\u2019", "\u2013", "\u2014", "\u2026"};

std::string strip_typographic(std::string_view text) {
  std::string s(text);
  for (auto mark : kTypographic) {
    for (auto at = s.find(mark); at != std::string::npos; at = s.find(mark, at)) s.replace(at, mark.size(), " ");
  }
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const auto s = strip_typographic(text);
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (separator(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Rouge rouge_l(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  Rouge r;
  r.precision = lcs / static_cast<double>(candidate.size());
  r.recall = lcs / static_cast<double>(reference.size());
  if (lcs > 0) r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::string normalize_answer(std::string_view text) {
  const auto s = strip_typographic(text);
  std::string cleaned;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      cleaned += ' ';
    } else if (c < 0x80 && std::ispunct(c)) {
      continue;
    } else {
      cleaned += static_cast<char>(std::tolower(c));
    }
  }
  std::string out;
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    auto end = cleaned.find(' ', pos);
    if (end == std::string::npos) end = cleaned.size();
    auto word = cleaned.substr(pos, end - pos);
    if (!word.empty() && word != "a" && word != "an" && word != "the") {
      if (!out.empty()) out += ' ';
      out += word;
    }
    pos = end + 1;
  }
  return out;
}

int exact_match(std::string_view candidate, std::string_view reference) {
  return normalize_answer(candidate) == normalize_answer(reference) ? 1 : 0;
}

retrieval::EmbeddingVector NgramTokenEmbedder::embed(const std::string& token) const {
  retrieval::EmbeddingVector v;
  v.components.assign(dim_, 0.0f);
  const std::string padded = "<" + token + ">";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t k = i; k < i + 3; ++k) {
      h ^= static_cast<unsigned char>(padded[k]);
      h *= 1099511628211ull;
    }
    v.components[h % dim_] += 1.0f;
  }
  return v;
}

const TokenEmbedder& default_token_embedder() {
  static const NgramTokenEmbedder e;
  return e;
}

namespace {

double cosine(const retrieval::EmbeddingVector& a, const retrieval::EmbeddingVector& b) {
  const double na = retrieval::l2_norm(a), nb = retrieval::l2_norm(b);
  if (na == 0 || nb == 0) return 0;
  return retrieval::dot(a, b) / (na * nb);
}

}  // namespace

double bert_style_score(const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
                        const TokenEmbedder& embedder) {
  if (candidate.empty() || reference.empty()) throw Error(ErrorCode::kEmptySequence, "token list is empty");
  std::vector<retrieval::EmbeddingVector> c, r;
  for (const auto& t : candidate) c.push_back(embedder.embed(t));
  for (const auto& t : reference) r.push_back(embedder.embed(t));
  std::vector<std::vector<double>> sim(c.size(), std::vector<double>(r.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) sim[i][j] = cosine(c[i], r[j]);
  }
  double forward = 0, backward = 0;
  for (std::size_t i = 0; i < c.size(); ++i) forward += *std::max_element(sim[i].begin(), sim[i].end());
  for (std::size_t j = 0; j < r.size(); ++j) {
    double best = sim[0][j];
    for (std::size_t i = 1; i < c.size(); ++i) best = std::max(best, sim[i][j]);
    backward += best;
  }
  return 0.5 * (forward / static_cast<double>(c.size()) + backward / static_cast<double>(r.size()));
}

double round_accuracy(const std::vector<int>& outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::kEmptyRounds, "no rounds");
  double sum = 0;
  for (int o : outcomes) {
    if (o != 0 && o != 1) throw Error(ErrorCode::kInvalidArgument, "round outcome must be 0 or 1");
    sum += o;
  }
  return sum / static_cast<double>(outcomes.size());
}

}  // namespace circugraph::eval
