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

#include "sparql/evaluator.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "common/error.hpp"

namespace circugraph::sparql {

namespace {

using kg::TermId;
using Solution = std::vector<TermId>;  // indexed by variable slot, kg::kNoTerm = unbound

struct SlotTerm {
  bool is_var = false;
  std::size_t slot = 0;
  TermId id = kg::kNoTerm;  // constant; kNoTerm when absent from the store
};

struct VecHash {
  std::size_t operator()(const std::vector<TermId>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

class Evaluator {
 public:
  Evaluator(const Query& q, const kg::TripleStore& store) : q_(q), store_(store) {
    for (const auto& name : all_vars(q.where)) {
      slots_.emplace(name, slots_.size());
    }
  }

  ResultSet run() {
    auto solutions = group(q_.where);
    ResultSet rs;
    for (const auto& v : q_.select) rs.columns.push_back(v.name);
    std::vector<KeyedRow> keyed;
    keyed.reserve(solutions.size());
    std::optional<std::size_t> order_slot;
    std::optional<Direction> direction;
    if (q_.order_by) {
      order_slot = slots_.at(q_.order_by->var.name);
      direction = std::get<Direction>(q_.order_by->direction);
    }
    for (const auto& s : solutions) {
      KeyedRow kr;
      for (const auto& v : q_.select) kr.row.push_back(store_.term(s[slots_.at(v.name)]));
      if (order_slot) kr.key = store_.term(s[*order_slot]);
      keyed.push_back(std::move(kr));
    }
    rs.rows = finish_rows(std::move(keyed), direction, q_.limit);
    return rs;
  }

 private:
  SlotTerm resolve(const PatternTerm& t) const {
    SlotTerm st;
    if (const auto* v = std::get_if<Var>(&t)) {
      st.is_var = true;
      st.slot = slots_.at(v->name);
      return st;
    }
    kg::Term term = std::holds_alternative<kg::Iri>(t) ? kg::Term(std::get<kg::Iri>(t))
                                                        : kg::Term(std::get<kg::Literal>(t));
    st.id = store_.find(term).value_or(kg::kNoTerm);
    return st;
  }

  // Matches of one pattern, as solutions binding only its variables.
  std::vector<Solution> pattern_matches(const TriplePattern& tp) const {
    const SlotTerm pos[3] = {resolve(tp.s), resolve(tp.p), resolve(tp.o)};
    for (const auto& p : pos) {
      if (!p.is_var && p.id == kg::kNoTerm) return {};
    }
    std::vector<Solution> out;
    auto consider = [&](const kg::IdTriple& t) {
      const TermId ids[3] = {t.s, t.p, t.o};
      Solution s(slots_.size(), kg::kNoTerm);
      for (int i = 0; i < 3; ++i) {
        if (!pos[i].is_var) {
          if (ids[i] != pos[i].id) return;
          continue;
        }
        auto& cell = s[pos[i].slot];
        if (cell != kg::kNoTerm && cell != ids[i]) return;  // repeated variable
        cell = ids[i];
      }
      out.push_back(std::move(s));
    };
    if (!pos[1].is_var && !pos[2].is_var) {
      for (auto i : store_.with_predicate_object(pos[1].id, pos[2].id)) consider(store_.at(i));
    } else if (!pos[0].is_var) {
      for (auto i : store_.with_subject(pos[0].id)) consider(store_.at(i));
    } else if (!pos[1].is_var) {
      for (auto i : store_.with_predicate(pos[1].id)) consider(store_.at(i));
    } else {
      for (const auto& t : store_.all()) consider(t);
    }
    return out;
  }

  static std::vector<std::size_t> bound_in_all(const std::vector<Solution>& rows, std::size_t width) {
    std::vector<std::size_t> out;
    for (std::size_t slot = 0; slot < width; ++slot) {
      if (std::all_of(rows.begin(), rows.end(), [slot](const Solution& s) { return s[slot] != kg::kNoTerm; })) {
        out.push_back(slot);
      }
    }
    return out;
  }

  // Compatibility join: hash on variables bound in every row of both sides,
  // then check the remaining shared bindings row by row.
  std::vector<Solution> join(const std::vector<Solution>& left, const std::vector<Solution>& right) const {
    if (left.empty() || right.empty()) return {};
    const auto width = slots_.size();
    const auto lb = bound_in_all(left, width);
    const auto rb = bound_in_all(right, width);
    std::vector<std::size_t> key;
    std::set_intersection(lb.begin(), lb.end(), rb.begin(), rb.end(), std::back_inserter(key));

    const bool build_left = left.size() < right.size();
    const auto& build = build_left ? left : right;
    const auto& probe = build_left ? right : left;
    std::unordered_map<std::vector<TermId>, std::vector<std::size_t>, VecHash> table;
    std::vector<TermId> k(key.size());
    for (std::size_t i = 0; i < build.size(); ++i) {
      for (std::size_t j = 0; j < key.size(); ++j) k[j] = build[i][key[j]];
      table[k].push_back(i);
    }
    std::vector<Solution> out;
    for (const auto& p : probe) {
      for (std::size_t j = 0; j < key.size(); ++j) k[j] = p[key[j]];
      auto it = table.find(k);
      if (it == table.end()) continue;
      for (auto bi : it->second) {
        const auto& b = build[bi];
        Solution merged = p;
        bool ok = true;
        for (std::size_t slot = 0; slot < width && ok; ++slot) {
          if (b[slot] == kg::kNoTerm) continue;
          if (merged[slot] == kg::kNoTerm) {
            merged[slot] = b[slot];
          } else if (merged[slot] != b[slot]) {
            ok = false;
          }
        }
        if (ok) out.push_back(std::move(merged));
      }
    }
    return out;
  }

  std::vector<Solution> bgp(const std::vector<TriplePattern>& triples) const {
    std::vector<Solution> acc{Solution(slots_.size(), kg::kNoTerm)};
    if (triples.empty()) return acc;
    struct Item {
      std::vector<Solution> rows;
      std::vector<std::size_t> vars;
    };
    std::vector<Item> items;
    for (const auto& tp : triples) {
      Item it;
      it.rows = pattern_matches(tp);
      if (it.rows.empty()) return {};
      for (const auto* t : {&tp.s, &tp.p, &tp.o}) {
        if (const auto* v = std::get_if<Var>(t)) it.vars.push_back(slots_.at(v->name));
      }
      items.push_back(std::move(it));
    }
    // Cheapest first; afterwards prefer patterns connected to what is bound.
    std::vector<bool> used(items.size(), false);
    std::vector<bool> bound(slots_.size(), false);
    for (std::size_t step = 0; step < items.size(); ++step) {
      std::optional<std::size_t> best;
      bool best_connected = false;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (used[i]) continue;
        const bool connected =
            std::any_of(items[i].vars.begin(), items[i].vars.end(), [&](std::size_t s) { return bound[s]; });
        if (!best || (connected && !best_connected) ||
            (connected == best_connected && items[i].rows.size() < items[*best].rows.size())) {
          best = i;
          best_connected = connected;
        }
      }
      used[*best] = true;
      for (auto s : items[*best].vars) bound[s] = true;
      acc = join(acc, items[*best].rows);
      if (acc.empty()) return acc;
    }
    return acc;
  }

  bool passes(const Filter& f, const Solution& s) const {
    const auto lid = s[slots_.at(f.lhs.name)];
    if (lid == kg::kNoTerm) return false;
    const kg::Term& lhs = store_.term(lid);
    kg::Term rhs_storage;
    const kg::Term* rhs = nullptr;
    if (const auto* v = std::get_if<Var>(&f.rhs)) {
      const auto rid = s[slots_.at(v->name)];
      if (rid == kg::kNoTerm) return false;
      rhs = &store_.term(rid);
    } else if (const auto* iri = std::get_if<kg::Iri>(&f.rhs)) {
      rhs_storage = *iri;
      rhs = &rhs_storage;
    } else {
      rhs_storage = std::get<kg::Literal>(f.rhs);
      rhs = &rhs_storage;
    }
    const bool numeric = kg::is_decimal(lhs) && kg::is_decimal(*rhs);
    auto ord = numeric ? (*std::get<kg::Literal>(lhs).numeric() <=> *std::get<kg::Literal>(*rhs).numeric())
                       : std::strong_ordering::equal;
    switch (f.op) {
      case CompareOp::kEq: return numeric ? ord == 0 : kg::term_key(lhs) == kg::term_key(*rhs);
      case CompareOp::kNe: return numeric ? ord != 0 : kg::term_key(lhs) != kg::term_key(*rhs);
      case CompareOp::kLt: return numeric && ord < 0;
      case CompareOp::kLe: return numeric && ord <= 0;
      case CompareOp::kGt: return numeric && ord > 0;
      case CompareOp::kGe: return numeric && ord >= 0;
    }
    return false;
  }

  std::vector<Solution> group(const GroupPattern& g) const {
    auto acc = bgp(g.triples);
    for (const auto& u : g.unions) {
      if (acc.empty()) break;
      std::vector<Solution> alts;
      for (const auto& alt : u) {
        auto rows = group(alt);
        alts.insert(alts.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
      }
      acc = join(acc, alts);
    }
    if (!g.filters.empty()) {
      std::erase_if(acc, [&](const Solution& s) {
        return !std::all_of(g.filters.begin(), g.filters.end(), [&](const Filter& f) { return passes(f, s); });
      });
    }
    return acc;
  }

  const Query& q_;
  const kg::TripleStore& store_;
  std::map<std::string, std::size_t> slots_;
};

}  // namespace

ResultSet evaluate(const Query& q, const kg::TripleStore& store) {
  validate(q);
  return Evaluator(q, store).run();
}

}  // namespace circugraph::sparql
