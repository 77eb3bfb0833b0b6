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

#include "sparql/ast.hpp"

#include <cctype>

#include "common/error.hpp"

namespace circugraph::sparql {

namespace {

void collect_term_vars(const PatternTerm& t, std::set<std::string>& out) {
  if (const auto* v = std::get_if<Var>(&t)) out.insert(v->name);
}

void collect_placeholders(const PatternTerm& t, std::set<std::string>& out) {
  if (const auto* p = std::get_if<Placeholder>(&t)) out.insert(p->name);
}

void collect_placeholders(const GroupPattern& g, std::set<std::string>& out) {
  for (const auto& tp : g.triples) {
    collect_placeholders(tp.s, out);
    collect_placeholders(tp.p, out);
    collect_placeholders(tp.o, out);
  }
  for (const auto& u : g.unions) {
    for (const auto& alt : u) collect_placeholders(alt, out);
  }
  for (const auto& f : g.filters) collect_placeholders(f.rhs, out);
}

bool ordering_op(CompareOp op) {
  return op == CompareOp::kLt || op == CompareOp::kLe || op == CompareOp::kGt || op == CompareOp::kGe;
}

void validate_group(const GroupPattern& g) {
  for (const auto& u : g.unions) {
    if (u.size() < 2) throw Error(ErrorCode::kInvalidArgument, "UNION needs two alternatives");
    for (const auto& alt : u) validate_group(alt);
  }
  const auto bound = certain_vars(g);
  for (const auto& f : g.filters) {
    if (!bound.count(f.lhs.name)) {
      throw Error(ErrorCode::kUnboundVariable, "FILTER variable ?" + f.lhs.name + " is not bound");
    }
    if (const auto* v = std::get_if<Var>(&f.rhs); v && !bound.count(v->name)) {
      throw Error(ErrorCode::kUnboundVariable, "FILTER variable ?" + v->name + " is not bound");
    }
    if (ordering_op(f.op)) {
      const bool non_decimal_constant =
          std::holds_alternative<kg::Iri>(f.rhs) ||
          (std::holds_alternative<kg::Literal>(f.rhs) && !std::get<kg::Literal>(f.rhs).is_decimal());
      if (non_decimal_constant) {
        throw Error(ErrorCode::kTypeMismatch,
                    "numeric comparison " + std::string(op_symbol(f.op)) + " against a non-decimal");
      }
    }
  }
}

PatternTerm rename_term(const PatternTerm& t, const std::map<std::string, std::string>& mapping) {
  if (const auto* v = std::get_if<Var>(&t)) {
    auto it = mapping.find(v->name);
    if (it != mapping.end()) return Var{it->second};
  }
  return t;
}

Var rename_var(const Var& v, const std::map<std::string, std::string>& mapping) {
  auto it = mapping.find(v.name);
  return it == mapping.end() ? v : Var{it->second};
}

PatternTerm substitute_term(const PatternTerm& t, const std::map<std::string, kg::Term>& terms) {
  if (const auto* p = std::get_if<Placeholder>(&t)) {
    auto it = terms.find(p->name);
    if (it != terms.end()) {
      return std::visit([](const auto& x) -> PatternTerm { return x; }, it->second);
    }
  }
  return t;
}

GroupPattern substitute_group(const GroupPattern& g, const std::map<std::string, kg::Term>& terms) {
  GroupPattern out;
  for (const auto& tp : g.triples) {
    out.triples.push_back(
        {substitute_term(tp.s, terms), substitute_term(tp.p, terms), substitute_term(tp.o, terms)});
  }
  for (const auto& u : g.unions) {
    std::vector<GroupPattern> alts;
    for (const auto& alt : u) alts.push_back(substitute_group(alt, terms));
    out.unions.push_back(std::move(alts));
  }
  for (const auto& f : g.filters) out.filters.push_back({f.lhs, f.op, substitute_term(f.rhs, terms)});
  return out;
}

}  // namespace

bool valid_var_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string_view op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

std::set<std::string> certain_vars(const GroupPattern& g) {
  std::set<std::string> out;
  for (const auto& tp : g.triples) {
    collect_term_vars(tp.s, out);
    collect_term_vars(tp.p, out);
    collect_term_vars(tp.o, out);
  }
  for (const auto& u : g.unions) {
    if (u.empty()) continue;
    auto common = certain_vars(u.front());
    for (std::size_t i = 1; i < u.size(); ++i) {
      auto other = certain_vars(u[i]);
      std::set<std::string> keep;
      for (const auto& v : common) {
        if (other.count(v)) keep.insert(v);
      }
      common = std::move(keep);
    }
    out.insert(common.begin(), common.end());
  }
  return out;
}

std::set<std::string> all_vars(const GroupPattern& g) {
  std::set<std::string> out;
  for (const auto& tp : g.triples) {
    collect_term_vars(tp.s, out);
    collect_term_vars(tp.p, out);
    collect_term_vars(tp.o, out);
  }
  for (const auto& u : g.unions) {
    for (const auto& alt : u) {
      auto inner = all_vars(alt);
      out.insert(inner.begin(), inner.end());
    }
  }
  for (const auto& f : g.filters) {
    out.insert(f.lhs.name);
    collect_term_vars(f.rhs, out);
  }
  return out;
}

std::set<std::string> placeholders(const Query& q) {
  std::set<std::string> out;
  collect_placeholders(q.where, out);
  if (q.order_by) {
    if (const auto* p = std::get_if<Placeholder>(&q.order_by->direction)) out.insert(p->name);
  }
  return out;
}

void validate(const Query& q, bool allow_placeholders) {
  if (q.select.empty()) throw Error(ErrorCode::kInvalidArgument, "SELECT needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : q.select) {
    if (!valid_var_name(v.name)) throw Error(ErrorCode::kInvalidArgument, "bad variable name " + v.name);
    if (!seen.insert(v.name).second) {
      throw Error(ErrorCode::kInvalidArgument, "variable ?" + v.name + " selected twice");
    }
  }
  validate_group(q.where);
  const auto bound = certain_vars(q.where);
  for (const auto& v : q.select) {
    if (!bound.count(v.name)) {
      throw Error(ErrorCode::kUnboundVariable, "selected variable ?" + v.name + " is not bound");
    }
  }
  if (q.order_by && !bound.count(q.order_by->var.name)) {
    throw Error(ErrorCode::kUnboundVariable, "ORDER BY variable ?" + q.order_by->var.name + " is not bound");
  }
  if (q.limit && *q.limit == 0) throw Error(ErrorCode::kInvalidArgument, "LIMIT must be positive");
  if (!allow_placeholders) {
    auto ph = placeholders(q);
    if (!ph.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "unbound placeholder %" + *ph.begin() + "%");
    }
  }
}

Query substitute(const Query& q, const std::map<std::string, kg::Term>& terms,
                 const std::map<std::string, Direction>& directions) {
  Query out = q;
  out.where = substitute_group(q.where, terms);
  if (out.order_by) {
    if (const auto* p = std::get_if<Placeholder>(&out.order_by->direction)) {
      auto it = directions.find(p->name);
      if (it != directions.end()) out.order_by->direction = it->second;
    }
  }
  return out;
}

GroupPattern rename_vars(const GroupPattern& g, const std::map<std::string, std::string>& mapping) {
  GroupPattern out;
  for (const auto& tp : g.triples) {
    out.triples.push_back(
        {rename_term(tp.s, mapping), rename_term(tp.p, mapping), rename_term(tp.o, mapping)});
  }
  for (const auto& u : g.unions) {
    std::vector<GroupPattern> alts;
    for (const auto& alt : u) alts.push_back(rename_vars(alt, mapping));
    out.unions.push_back(std::move(alts));
  }
  for (const auto& f : g.filters) {
    out.filters.push_back({rename_var(f.lhs, mapping), f.op, rename_term(f.rhs, mapping)});
  }
  return out;
}

Query rename_vars(const Query& q, const std::map<std::string, std::string>& mapping) {
  Query out = q;
  for (auto& v : out.select) v = rename_var(v, mapping);
  out.where = rename_vars(q.where, mapping);
  if (out.order_by) out.order_by->var = rename_var(out.order_by->var, mapping);
  return out;
}

}  // namespace circugraph::sparql
