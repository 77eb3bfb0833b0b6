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

#include "pipeline/chunks.hpp"

#include <map>

#include "common/error.hpp"
#include "kg/ontology.hpp"

namespace circugraph::pipeline {

std::vector<TextChunk> render_chunks(const kg::TripleStore& store) {
  std::map<std::string, std::vector<kg::Triple>> by_subject;
  for (auto& t : store.triples()) by_subject[t.subject.value()].push_back(t);

  auto name_of = [&](const kg::Term& t) {
    if (auto iri = std::get_if<kg::Iri>(&t)) {
      if (auto l = store.label_of(*iri)) return *l;
      return iri->compact();
    }
    return kg::display(t);
  };

  std::vector<TextChunk> out;
  for (const auto& [subject, triples] : by_subject) {
    const auto label = store.label_of(kg::Iri::absolute(subject));
    if (!label) continue;
    std::string text = *label + ".";
    for (const auto& t : triples) {
      if (t.predicate == kg::vocab::label()) continue;
      if (t.predicate == kg::vocab::kind()) {
        text += " It is a " + name_of(t.object) + ".";
      } else if (t.predicate == kg::vocab::category()) {
        text += " Category: " + name_of(t.object) + ".";
      } else if (t.predicate == kg::vocab::gwp100()) {
        text += " GWP100: " + name_of(t.object) + ".";
      } else if (t.predicate == kg::vocab::provider()) {
        text += " Provided by " + name_of(t.object) + ".";
      } else if (t.predicate == kg::vocab::receiver()) {
        text += " Received by " + name_of(t.object) + ".";
      } else if (t.predicate == kg::vocab::resource()) {
        text += " Handles " + name_of(t.object) + ".";
      } else if (auto scheme = kg::scheme_from_predicate(t.predicate)) {
        text += " " + std::string(kg::scheme_name(*scheme)) + " code " + name_of(t.object) + ".";
      }
    }
    out.push_back({subject, *label, text});
  }
  return out;
}

ChunkIndex ChunkIndex::build(const kg::TripleStore& store, const retrieval::Embedder& embedder) {
  ChunkIndex ci;
  ci.chunks_ = render_chunks(store);
  ci.index_ = retrieval::VectorIndex(std::nullopt, embedder.dimension());
  for (const auto& c : ci.chunks_) ci.index_.add(c.id, embedder.embed(c.text));
  return ci;
}

std::vector<std::pair<const TextChunk*, double>> ChunkIndex::search(const std::string& question, std::size_t k,
                                                                    const retrieval::Embedder& embedder) const {
  std::vector<std::pair<const TextChunk*, double>> out;
  if (chunks_.empty() || k == 0) return out;
  retrieval::EmbeddingVector q;
  try {
    q = embedder.embed(question);
  } catch (const Error&) {
    return out;
  }
  std::map<std::string, const TextChunk*> by_id;
  for (const auto& c : chunks_) by_id[c.id] = &c;
  for (const auto& s : index_.top_k(q, k)) out.emplace_back(by_id.at(s.key), s.score);
  return out;
}

}  // namespace circugraph::pipeline
