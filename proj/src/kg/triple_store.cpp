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

#include "kg/triple_store.hpp"

#include <algorithm>
#include <unordered_set>

namespace circugraph::kg {

namespace {

std::uint64_t pack(TermId a, TermId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

struct IdTripleHash {
  std::size_t operator()(const IdTriple& t) const noexcept {
    std::uint64_t h = t.s;
    h = h * 0x9E3779B97F4A7C15ULL ^ t.p;
    h = h * 0x9E3779B97F4A7C15ULL ^ t.o;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

const std::vector<std::uint32_t> kEmptyPostings;

}  // namespace

TripleStore::TripleStore() : terms_(1), reads_(std::make_unique<std::atomic<std::uint64_t>>(0)) {}

TripleStore TripleStore::from_triples(const std::vector<Triple>& triples) {
  TripleStore store;
  auto intern = [&store](const Term& t) {
    auto key = term_key(t);
    auto it = store.ids_.find(key);
    if (it != store.ids_.end()) return it->second;
    const auto id = static_cast<TermId>(store.terms_.size());
    store.terms_.push_back(t);
    store.ids_.emplace(std::move(key), id);
    return id;
  };

  // Canonical order first so ids and postings do not depend on input order.
  std::vector<Triple> sorted = triples;
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  store.triples_.reserve(sorted.size());
  for (const auto& t : sorted) {
    store.triples_.push_back(IdTriple{intern(t.subject), intern(t.predicate), intern(t.object)});
  }
  for (std::uint32_t i = 0; i < store.triples_.size(); ++i) {
    const auto& t = store.triples_[i];
    store.by_subject_[t.s].push_back(i);
    store.by_predicate_[t.p].push_back(i);
    store.by_predicate_object_[pack(t.p, t.o)].push_back(i);
  }
  return store;
}

std::optional<TermId> TripleStore::find(const Term& t) const {
  auto it = ids_.find(term_key(t));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const IdTriple> TripleStore::all() const {
  count_read();
  return triples_;
}

std::span<const std::uint32_t> TripleStore::with_subject(TermId s) const {
  count_read();
  auto it = by_subject_.find(s);
  return it == by_subject_.end() ? std::span<const std::uint32_t>(kEmptyPostings) : std::span(it->second);
}

std::span<const std::uint32_t> TripleStore::with_predicate(TermId p) const {
  count_read();
  auto it = by_predicate_.find(p);
  return it == by_predicate_.end() ? std::span<const std::uint32_t>(kEmptyPostings) : std::span(it->second);
}

std::span<const std::uint32_t> TripleStore::with_predicate_object(TermId p, TermId o) const {
  count_read();
  auto it = by_predicate_object_.find(pack(p, o));
  return it == by_predicate_object_.end() ? std::span<const std::uint32_t>(kEmptyPostings)
                                          : std::span(it->second);
}

Triple TripleStore::materialize(const IdTriple& t) const {
  return Triple{std::get<Iri>(terms_[t.s]), std::get<Iri>(terms_[t.p]), terms_[t.o]};
}

std::vector<Triple> TripleStore::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                       const std::optional<Term>& o) const {
  auto resolve = [this](const std::optional<Term>& t) -> std::optional<std::optional<TermId>> {
    if (!t) return std::optional<TermId>{};
    auto id = find(*t);
    if (!id) return std::nullopt;  // constant absent from the store: no match possible
    return std::optional<TermId>{*id};
  };
  auto rs = resolve(s);
  auto rp = resolve(p);
  auto ro = resolve(o);
  std::vector<Triple> out;
  if (!rs || !rp || !ro) return out;
  const auto& sid = *rs;
  const auto& pid = *rp;
  const auto& oid = *ro;

  std::span<const std::uint32_t> candidates;
  std::vector<std::uint32_t> everything;
  if (pid && oid) {
    candidates = with_predicate_object(*pid, *oid);
  } else if (sid) {
    candidates = with_subject(*sid);
  } else if (pid) {
    candidates = with_predicate(*pid);
  } else {
    auto span = all();
    everything.resize(span.size());
    for (std::uint32_t i = 0; i < span.size(); ++i) everything[i] = i;
    candidates = everything;
  }
  for (auto idx : candidates) {
    const auto& t = triples_[idx];
    if ((sid && t.s != *sid) || (pid && t.p != *pid) || (oid && t.o != *oid)) continue;
    out.push_back(materialize(t));
  }
  return out;
}

std::vector<Triple> TripleStore::scan(const std::optional<Term>& s, const std::optional<Term>& p,
                                      const std::optional<Term>& o) const {
  std::vector<Triple> out;
  for (const auto& idt : all()) {
    Triple t = materialize(idt);
    if (s && term_key(Term(t.subject)) != term_key(*s)) continue;
    if (p && term_key(Term(t.predicate)) != term_key(*p)) continue;
    if (o && term_key(t.object) != term_key(*o)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Triple> TripleStore::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (const auto& t : triples_) out.push_back(materialize(t));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::optional<EntityKind> TripleStore::kind_of(const Iri& node) const {
  for (const auto& t : match(Term(node), Term(vocab::kind()), std::nullopt)) {
    if (is_iri(t.object)) return kind_from_iri(std::get<Iri>(t.object));
  }
  return std::nullopt;
}

std::optional<std::string> TripleStore::label_of(const Iri& node) const {
  for (const auto& t : match(Term(node), Term(vocab::label()), std::nullopt)) {
    if (is_literal(t.object)) return std::get<Literal>(t.object).lexical();
  }
  return std::nullopt;
}

std::vector<Iri> TripleStore::subjects_with(const Iri& predicate, const Term& object) const {
  std::vector<Iri> out;
  for (const auto& t : match(std::nullopt, Term(predicate), object)) out.push_back(t.subject);
  return out;
}

std::vector<Iri> TripleStore::nodes_of_kind(EntityKind kind) const {
  return subjects_with(vocab::kind(), Term(kind_iri(kind)));
}

}  // namespace circugraph::kg
