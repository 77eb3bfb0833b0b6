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

#include "sparql_oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "common/error.hpp"

namespace circugraph::testing {

using sparql::CompareOp;
using sparql::Direction;
using sparql::Filter;
using sparql::GroupPattern;
using sparql::PatternTerm;
using sparql::Query;
using sparql::ResultSet;
using sparql::TriplePattern;
using sparql::Var;

namespace {

using Binding = std::map<std::string, kg::Term>;

bool same_term(const kg::Term& a, const kg::Term& b) { return kg::term_key(a) == kg::term_key(b); }

bool unify(const PatternTerm& pt, const kg::Term& value, Binding& b) {
  if (const auto* v = std::get_if<Var>(&pt)) {
    auto it = b.find(v->name);
    if (it == b.end()) {
      b.emplace(v->name, value);
      return true;
    }
    return same_term(it->second, value);
  }
  if (const auto* iri = std::get_if<kg::Iri>(&pt)) return same_term(kg::Term(*iri), value);
  return same_term(kg::Term(std::get<kg::Literal>(pt)), value);
}

bool compatible(const Binding& a, const Binding& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && !same_term(it->second, v)) return false;
  }
  return true;
}

bool filter_holds(const Filter& f, const Binding& b) {
  auto l = b.find(f.lhs.name);
  if (l == b.end()) return false;
  std::optional<kg::Term> r;
  if (const auto* v = std::get_if<Var>(&f.rhs)) {
    auto it = b.find(v->name);
    if (it == b.end()) return false;
    r = it->second;
  } else if (const auto* iri = std::get_if<kg::Iri>(&f.rhs)) {
    r = *iri;
  } else {
    r = std::get<kg::Literal>(f.rhs);
  }
  const bool both_decimal = kg::is_decimal(l->second) && kg::is_decimal(*r);
  if (f.op == CompareOp::kEq || f.op == CompareOp::kNe) {
    bool eq = both_decimal ? *std::get<kg::Literal>(l->second).numeric() == *std::get<kg::Literal>(*r).numeric()
                           : same_term(l->second, *r);
    return f.op == CompareOp::kEq ? eq : !eq;
  }
  if (!both_decimal) return false;
  const auto& x = *std::get<kg::Literal>(l->second).numeric();
  const auto& y = *std::get<kg::Literal>(*r).numeric();
  switch (f.op) {
    case CompareOp::kLt: return x < y;
    case CompareOp::kLe: return x <= y;
    case CompareOp::kGt: return x > y;
    case CompareOp::kGe: return x >= y;
    default: return false;
  }
}

std::vector<Binding> eval_group(const GroupPattern& g, const std::vector<kg::Triple>& all) {
  std::vector<Binding> sols{Binding{}};
  for (const auto& tp : g.triples) {
    std::vector<Binding> next;
    for (const auto& s : sols) {
      for (const auto& t : all) {
        Binding b = s;
        if (unify(tp.s, t.subject, b) && unify(tp.p, t.predicate, b) && unify(tp.o, t.object, b)) {
          next.push_back(std::move(b));
        }
      }
    }
    sols = std::move(next);
  }
  for (const auto& u : g.unions) {
    std::vector<Binding> alt_rows;
    for (const auto& alt : u) {
      auto rows = eval_group(alt, all);
      alt_rows.insert(alt_rows.end(), rows.begin(), rows.end());
    }
    std::vector<Binding> next;
    for (const auto& a : sols) {
      for (const auto& b : alt_rows) {
        if (!compatible(a, b)) continue;
        Binding m = a;
        m.insert(b.begin(), b.end());
        next.push_back(std::move(m));
      }
    }
    sols = std::move(next);
  }
  std::vector<Binding> kept;
  for (auto& s : sols) {
    bool ok = true;
    for (const auto& f : g.filters) ok = ok && filter_holds(f, s);
    if (ok) kept.push_back(std::move(s));
  }
  return kept;
}

// Reference ordering written out longhand: kind rank, then decimal value,
// then lexical text.
int compare_value(const kg::Term& a, const kg::Term& b) {
  auto rank = [](const kg::Term& t) { return kg::is_iri(t) ? 0 : (kg::is_decimal(t) ? 2 : 1); };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  if (rank(a) == 2) {
    const auto& x = *std::get<kg::Literal>(a).numeric();
    const auto& y = *std::get<kg::Literal>(b).numeric();
    if (x < y) return -1;
    if (y < x) return 1;
  }
  const auto sa = kg::display(a), sb = kg::display(b);
  return sa < sb ? -1 : (sa == sb ? 0 : 1);
}

int compare_rows(const sparql::Row& a, const sparql::Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare_value(a[i], b[i])) return c;
  }
  return 0;
}

}  // namespace

ResultSet nested_loop_evaluate(const Query& q, const kg::TripleStore& store) {
  const auto all = store.triples();
  const auto sols = eval_group(q.where, all);
  struct Keyed {
    std::optional<kg::Term> key;
    sparql::Row row;
  };
  std::vector<Keyed> keyed;
  for (const auto& s : sols) {
    Keyed k;
    for (const auto& v : q.select) k.row.push_back(s.at(v.name));
    if (q.order_by) k.key = s.at(q.order_by->var.name);
    keyed.push_back(std::move(k));
  }
  // Insertion sort: slow, obviously stable, obviously correct.
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      auto& a = keyed[j - 1];
      auto& b = keyed[j];
      int c = 0;
      if (q.order_by) {
        c = compare_value(*a.key, *b.key);
        if (std::get<Direction>(q.order_by->direction) == Direction::kDesc) c = -c;
      }
      if (c == 0) c = compare_rows(a.row, b.row);
      if (c <= 0) break;
      std::swap(a, b);
    }
  }
  ResultSet rs;
  for (const auto& v : q.select) rs.columns.push_back(v.name);
  for (const auto& k : keyed) {
    bool dup = false;
    for (const auto& r : rs.rows) dup = dup || compare_rows(r, k.row) == 0;
    if (dup) continue;
    if (q.limit && rs.rows.size() >= *q.limit) break;
    rs.rows.push_back(k.row);
  }
  return rs;
}

RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  RandomGraph g;
  const std::string ns = "http://example.org/t#";
  for (int i = 0; i < 8; ++i) g.nodes.push_back(kg::Iri::absolute(ns + "n" + std::to_string(i)));
  for (int i = 0; i < 4; ++i) g.predicates.push_back(kg::Iri::absolute(ns + "p" + std::to_string(i)));
  for (const char* t : {"a", "b", "c"}) g.literals.push_back(kg::Literal::text(t));
  for (const char* d : {"0.5", "0.50", "1", "2.25", "-3", "10"}) g.literals.push_back(kg::Literal::decimal(std::string(d)));

  std::uniform_int_distribution<std::size_t> count(0, max_triples);
  const auto n = count(rng);
  std::vector<kg::Triple> triples;
  for (std::size_t i = 0; i < n; ++i) {
    kg::Triple t;
    t.subject = g.nodes[rng() % g.nodes.size()];
    t.predicate = g.predicates[rng() % g.predicates.size()];
    if (rng() % 2) {
      t.object = g.nodes[rng() % g.nodes.size()];
    } else {
      t.object = g.literals[rng() % g.literals.size()];
    }
    triples.push_back(std::move(t));
  }
  g.store = kg::TripleStore::from_triples(triples);
  return g;
}

namespace {

PatternTerm random_position(std::mt19937_64& rng, const RandomGraph& g, int position) {
  static const char* kVars[] = {"a", "b", "c", "d"};
  if (rng() % 100 < 55) return Var{kVars[rng() % 4]};
  if (position == 1) return g.predicates[rng() % g.predicates.size()];
  if (position == 0 || rng() % 2) return g.nodes[rng() % g.nodes.size()];
  return g.literals[rng() % g.literals.size()];
}

std::vector<TriplePattern> random_patterns(std::mt19937_64& rng, const RandomGraph& g, std::size_t n) {
  std::vector<TriplePattern> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({random_position(rng, g, 0), random_position(rng, g, 1), random_position(rng, g, 2)});
  }
  return out;
}

}  // namespace

Query random_query(std::mt19937_64& rng, const RandomGraph& g, const QueryShape& shape) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Query q;
    const std::size_t total = 1 + rng() % shape.max_patterns;
    std::size_t main = total;
    if (shape.allow_union && total >= 2 && rng() % 3 == 0) {
      // Split the pattern budget between the outer group and two branches.
      const std::size_t in_union = 2 + rng() % (total - 1);
      main = total - in_union;
      const std::size_t left = 1 + rng() % (in_union - 1);
      GroupPattern a, b;
      a.triples = random_patterns(rng, g, left);
      b.triples = random_patterns(rng, g, in_union - left);
      q.where.unions.push_back({a, b});
    }
    q.where.triples = random_patterns(rng, g, main);
    auto bound = sparql::certain_vars(q.where);
    if (bound.empty()) continue;
    std::vector<std::string> vars(bound.begin(), bound.end());
    if (shape.allow_filter && rng() % 2) {
      Filter f;
      f.lhs = Var{vars[rng() % vars.size()]};
      f.op = static_cast<CompareOp>(rng() % 6);
      if (rng() % 3 == 0) {
        f.rhs = Var{vars[rng() % vars.size()]};
      } else if (f.op == CompareOp::kEq || f.op == CompareOp::kNe) {
        f.rhs = g.literals[rng() % g.literals.size()];
      } else {
        f.rhs = g.literals[3 + rng() % (g.literals.size() - 3)];
      }
      q.where.filters.push_back(f);
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    const std::size_t width = 1 + rng() % vars.size();
    for (std::size_t i = 0; i < width; ++i) q.select.push_back(Var{vars[i]});
    if (shape.allow_order && rng() % 2) {
      q.order_by = sparql::OrderBy{Var{vars[rng() % vars.size()]},
                                   rng() % 2 ? Direction::kAsc : Direction::kDesc};
    }
    if (shape.allow_order && rng() % 3 == 0) q.limit = 1 + rng() % 5;
    try {
      sparql::validate(q);
      return q;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::kInternal, "could not generate a valid random query");
}

}  // namespace circugraph::testing
