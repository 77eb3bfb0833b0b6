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

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kg/ontology.hpp"
#include "kg/term.hpp"

namespace circugraph::kg {

// Dense dictionary id. 0 is reserved and never names a term.
using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = 0;

struct IdTriple {
  TermId s;
  TermId p;
  TermId o;
  friend bool operator==(const IdTriple&, const IdTriple&) = default;
};

// Immutable, deduplicated set of triples with subject, predicate and
// (predicate, object) indexes. Built once, then shared read-only.
class TripleStore {
 public:
  TripleStore();
  TripleStore(TripleStore&&) noexcept = default;
  TripleStore& operator=(TripleStore&&) noexcept = default;
  TripleStore(const TripleStore&) = delete;
  TripleStore& operator=(const TripleStore&) = delete;

  // Deduplicates; performs no schema validation (see validate_graph).
  static TripleStore from_triples(const std::vector<Triple>& triples);

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  std::size_t term_count() const { return terms_.size() - 1; }

  const Term& term(TermId id) const { return terms_.at(id); }
  std::optional<TermId> find(const Term& t) const;

  // Raw access for the evaluator. Every call counts as one graph read.
  std::span<const IdTriple> all() const;
  std::span<const std::uint32_t> with_subject(TermId s) const;
  std::span<const std::uint32_t> with_predicate(TermId p) const;
  std::span<const std::uint32_t> with_predicate_object(TermId p, TermId o) const;
  const IdTriple& at(std::uint32_t index) const { return triples_[index]; }

  // Pattern lookup through the most selective index; nullopt is a wildcard.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  // Same contract as match(), answered by scanning every triple.
  std::vector<Triple> scan(const std::optional<Term>& s, const std::optional<Term>& p,
                           const std::optional<Term>& o) const;

  // Sorted by canonical_less.
  std::vector<Triple> triples() const;

  // Schema helpers.
  std::optional<EntityKind> kind_of(const Iri& node) const;
  std::optional<std::string> label_of(const Iri& node) const;
  std::vector<Iri> subjects_with(const Iri& predicate, const Term& object) const;
  std::vector<Iri> nodes_of_kind(EntityKind kind) const;

  // Number of index/scan accesses served so far (instrumentation only).
  std::uint64_t read_count() const { return reads_->load(std::memory_order_relaxed); }

 private:
  Triple materialize(const IdTriple& t) const;
  void count_read() const { reads_->fetch_add(1, std::memory_order_relaxed); }

  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> ids_;
  std::vector<IdTriple> triples_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_subject_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_predicate_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_predicate_object_;
  std::unique_ptr<std::atomic<std::uint64_t>> reads_;
};

}  // namespace circugraph::kg
