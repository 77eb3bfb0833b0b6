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

#include "merge/plan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "common/error.hpp"

namespace circugraph::merge {

using templates::OutputRole;
using templates::OutputSpec;
using templates::TemplateInstance;

NodePtr leaf_node(std::size_t index) {
  auto n = std::make_shared<PlanNode>();
  n->kind = MergeKind::kLeaf;
  n->leaf = index;
  return n;
}

NodePtr intersection_node(NodePtr l, NodePtr r, std::vector<std::string> shared) {
  auto n = std::make_shared<PlanNode>();
  n->kind = MergeKind::kIntersection;
  n->left = std::move(l);
  n->right = std::move(r);
  n->shared = std::move(shared);
  return n;
}

NodePtr chain_node(NodePtr l, NodePtr r, Wiring w) {
  auto n = std::make_shared<PlanNode>();
  n->kind = MergeKind::kChain;
  n->left = std::move(l);
  n->right = std::move(r);
  n->wiring = std::move(w);
  return n;
}

NodePtr union_node(NodePtr l, NodePtr r) {
  auto n = std::make_shared<PlanNode>();
  n->kind = MergeKind::kUnion;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

namespace {

std::string node_text(const PlanNode& n, const std::vector<TemplateInstance>& leaves) {
  switch (n.kind) {
    case MergeKind::kLeaf:
      return n.leaf < leaves.size() ? leaves[n.leaf].template_id() : "?" + std::to_string(n.leaf);
    case MergeKind::kIntersection:
      return "(" + node_text(*n.left, leaves) + " ∩ " + node_text(*n.right, leaves) + ")";
    case MergeKind::kChain:
      return "(" + node_text(*n.left, leaves) + " -> " + node_text(*n.right, leaves) + ")";
    case MergeKind::kUnion:
      return "(" + node_text(*n.left, leaves) + " ∪ " + node_text(*n.right, leaves) + ")";
  }
  return "?";
}

const OutputSpec* find_output(const std::vector<OutputSpec>& outs, std::string_view name) {
  for (const auto& o : outs) {
    if (o.var == name) return &o;
  }
  return nullptr;
}

const OutputSpec* entity_output(const std::vector<OutputSpec>& outs) {
  for (const auto& o : outs) {
    if (o.role == OutputRole::kEntity) return &o;
  }
  return nullptr;
}

bool same_meaning(const OutputSpec& a, const OutputSpec& b) {
  if (a.role != b.role) return false;
  if (a.role == OutputRole::kEntity && a.entity_kind && b.entity_kind && a.entity_kind != b.entity_kind) return false;
  if (a.role == OutputRole::kCode && a.scheme != b.scheme) return false;
  return true;
}

// Output shape of a subtree, at the template-name level.
std::vector<OutputSpec> shape(const PlanNode& n, const std::vector<TemplateInstance>& leaves) {
  switch (n.kind) {
    case MergeKind::kLeaf: return leaves.at(n.leaf).expected_output;
    case MergeKind::kIntersection: {
      auto out = shape(*n.left, leaves);
      for (const auto& o : shape(*n.right, leaves)) {
        if (!find_output(out, o.var)) out.push_back(o);
      }
      return out;
    }
    case MergeKind::kChain: return shape(*n.right, leaves);
    case MergeKind::kUnion: return shape(*n.left, leaves);
  }
  return {};
}

std::vector<std::string> common_names(const std::vector<OutputSpec>& a, const std::vector<OutputSpec>& b) {
  std::vector<std::string> out;
  for (const auto& o : b) {
    if (find_output(a, o.var)) out.push_back(o.var);
  }
  return out;
}

bool has_input_only_template(const TemplateInstance& t) { return t.tmpl->placeholders.empty() && t.tmpl->input; }

std::optional<Wiring> chain_wiring(const std::vector<OutputSpec>& left, const TemplateInstance& right) {
  if (!right.tmpl->input) return std::nullopt;
  const auto* src = entity_output(left);
  if (!src) return std::nullopt;
  if (src->entity_kind && !templates::role_accepts(right.tmpl->input->kind, *src->entity_kind)) return std::nullopt;
  return Wiring{src->var, right.tmpl->input->var};
}

}  // namespace

std::string MergePlan::text() const { return root ? node_text(*root, leaves) : std::string(); }

MergePlan plan_merge(const std::vector<TemplateInstance>& instances, const retrieval::ParsedQuery& pq) {
  if (instances.empty()) throw Error(ErrorCode::kInvalidPlan, "nothing to merge");
  MergePlan plan;
  plan.leaves = instances;
  NodePtr root = leaf_node(0);
  auto outs = instances[0].expected_output;
  for (std::size_t k = 1; k < instances.size(); ++k) {
    const auto& inst = instances[k];
    auto leaf = leaf_node(k);
    if (has_input_only_template(inst)) {
      auto w = chain_wiring(outs, inst);
      if (!w) throw Error(ErrorCode::kIncompatibleOutputs, "cannot feed " + inst.template_id());
      root = chain_node(root, leaf, *w);
      outs = inst.expected_output;
      continue;
    }
    if (pq.disjunctive) {
      root = union_node(root, leaf);
      continue;
    }
    if (pq.objective == retrieval::Objective::kSynergyChain) {
      if (auto w = chain_wiring(outs, inst)) {
        root = chain_node(root, leaf, *w);
        outs = inst.expected_output;
        continue;
      }
    }
    const auto* a = entity_output(outs);
    const auto* b = entity_output(inst.expected_output);
    if (a && b && a->var == b->var && same_meaning(*a, *b)) {
      auto shared = common_names(outs, inst.expected_output);
      root = intersection_node(root, leaf, shared);
      for (const auto& o : inst.expected_output) {
        if (!find_output(outs, o.var)) outs.push_back(o);
      }
      continue;
    }
    if (auto w = chain_wiring(outs, inst)) {
      root = chain_node(root, leaf, *w);
      outs = inst.expected_output;
      continue;
    }
    throw Error(ErrorCode::kIncompatibleOutputs,
                "no shared output and no chain wiring between the plan so far and " + inst.template_id());
  }
  plan.root = root;
  for (const auto& o : outs) plan.final_select.push_back(o.var);
  return plan;
}

// ---------------------------------------------------------------------------
// Canonical text parsing

namespace {

class PlanParser {
 public:
  PlanParser(std::string_view s, const std::vector<TemplateInstance>& inst) : s_(s), inst_(inst), used_(inst.size()) {}

  MergePlan run() {
    MergePlan plan;
    plan.leaves = inst_;
    plan.root = node();
    skip_ws();
    if (pos_ != s_.size()) bad("trailing text");
    if (std::find(used_.begin(), used_.end(), false) != used_.end()) bad("not every instance is used");
    for (const auto& o : shape(*plan.root, inst_)) plan.final_select.push_back(o.var);
    return plan;
  }

 private:
  [[noreturn]] void bad(const std::string& what) {
    throw Error(ErrorCode::kInvalidPlan, "plan text at " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  NodePtr node() {
    skip_ws();
    if (eat("(")) {
      auto l = node();
      MergeKind kind;
      if (eat("∩") || eat("&")) kind = MergeKind::kIntersection;
      else if (eat("∪") || eat("|")) kind = MergeKind::kUnion;
      else if (eat("->") || eat("→")) kind = MergeKind::kChain;
      else bad("expected an operator");
      auto r = node();
      if (!eat(")")) bad("expected ')'");
      const auto lo = shape(*l, inst_);
      if (kind == MergeKind::kIntersection) return intersection_node(l, r, common_names(lo, shape(*r, inst_)));
      if (kind == MergeKind::kUnion) return union_node(l, r);
      if (r->kind != MergeKind::kLeaf) bad("chain target must be a single template");
      auto w = chain_wiring(lo, inst_[r->leaf]);
      if (!w) bad("cannot wire into " + inst_[r->leaf].template_id());
      return chain_node(l, r, *w);
    }
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) ++pos_;
    if (b == pos_) bad("expected a template id or '('");
    const std::string id(s_.substr(b, pos_ - b));
    for (std::size_t i = 0; i < inst_.size(); ++i) {
      if (!used_[i] && inst_[i].template_id() == id) {
        used_[i] = true;
        return leaf_node(i);
      }
    }
    bad("no unused instance of " + id);
  }

  std::string_view s_;
  const std::vector<TemplateInstance>& inst_;
  std::vector<bool> used_;
  std::size_t pos_ = 0;
};

}  // namespace

MergePlan parse_plan(std::string_view text, const std::vector<TemplateInstance>& instances) {
  if (instances.empty()) throw Error(ErrorCode::kInvalidPlan, "no instances");
  return PlanParser(text, instances).run();
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct Out {
  OutputSpec spec;   // spec.var is the template-level name
  std::string var;   // compiled variable
};

struct Partial {
  sparql::GroupPattern group;
  std::vector<Out> outputs;
  std::optional<sparql::OrderBy> order;
  std::optional<std::uint64_t> limit;
};

const Out* find_out(const std::vector<Out>& outs, std::string_view name) {
  for (const auto& o : outs) {
    if (o.spec.var == name) return &o;
  }
  return nullptr;
}

void append(sparql::GroupPattern& into, const sparql::GroupPattern& from) {
  for (const auto& t : from.triples) {
    // unified leaves often repeat a pattern verbatim
    if (std::find(into.triples.begin(), into.triples.end(), t) == into.triples.end()) into.triples.push_back(t);
  }
  into.unions.insert(into.unions.end(), from.unions.begin(), from.unions.end());
  into.filters.insert(into.filters.end(), from.filters.begin(), from.filters.end());
}

void rename_partial(Partial& p, const std::map<std::string, std::string>& m) {
  p.group = sparql::rename_vars(p.group, m);
  for (auto& o : p.outputs) {
    if (auto it = m.find(o.var); it != m.end()) o.var = it->second;
  }
  if (p.order) {
    if (auto it = m.find(p.order->var.name); it != m.end()) p.order->var.name = it->second;
  }
}

class Compiler {
 public:
  explicit Compiler(const MergePlan& plan) : plan_(plan), used_(plan.leaves.size(), false) {}

  FinalQuery run() {
    if (!plan_.root) throw Error(ErrorCode::kInvalidPlan, "plan has no tree");
    auto p = build(*plan_.root);
    if (std::find(used_.begin(), used_.end(), false) != used_.end()) {
      throw Error(ErrorCode::kInvalidPlan, "a leaf is never used");
    }
    FinalQuery fq;
    fq.query.where = std::move(p.group);
    std::vector<std::string> names = plan_.final_select;
    if (names.empty()) {
      for (const auto& o : p.outputs) names.push_back(o.spec.var);
    }
    for (const auto& n : names) {
      const auto* o = find_out(p.outputs, n);
      if (!o) throw Error(ErrorCode::kInvalidPlan, "final select names unknown output " + n);
      fq.query.select.push_back(sparql::Var{o->var});
      auto spec = o->spec;
      spec.var = o->var;
      fq.outputs.push_back(spec);
    }
    fq.query.order_by = p.order;
    fq.query.limit = p.limit;
    sparql::validate(fq.query);
    return fq;
  }

 private:
  Partial build(const PlanNode& n) {
    switch (n.kind) {
      case MergeKind::kLeaf: return leaf(n.leaf);
      case MergeKind::kIntersection: return intersect(n);
      case MergeKind::kChain: return chain(n);
      case MergeKind::kUnion: return unite(n);
    }
    throw Error(ErrorCode::kInvalidPlan, "unknown node");
  }

  static void no_order(const Partial& p, const char* where) {
    if (p.order || p.limit) {
      throw Error(ErrorCode::kInvalidPlan, std::string("ORDER BY/LIMIT may only come from the last leaf, not the ") + where);
    }
  }

  Partial leaf(std::size_t i) {
    if (i >= plan_.leaves.size()) throw Error(ErrorCode::kInvalidPlan, "leaf index out of range");
    if (used_[i]) throw Error(ErrorCode::kInvalidPlan, "leaf " + std::to_string(i) + " used twice");
    used_[i] = true;
    const auto& inst = plan_.leaves[i];
    std::map<std::string, std::string> m;
    const std::string suffix = "_" + std::to_string(i + 1);
    for (const auto& v : sparql::all_vars(inst.query.where)) m[v] = v + suffix;
    Partial p;
    p.group = sparql::rename_vars(inst.query.where, m);
    for (const auto& o : inst.expected_output) p.outputs.push_back({o, m.count(o.var) ? m[o.var] : o.var + suffix});
    if (inst.query.order_by) {
      p.order = inst.query.order_by;
      p.order->var.name = m.count(p.order->var.name) ? m[p.order->var.name] : p.order->var.name + suffix;
    }
    p.limit = inst.query.limit;
    return p;
  }

  Partial intersect(const PlanNode& n) {
    auto l = build(*n.left);
    auto r = build(*n.right);
    no_order(l, "left side of an intersection");
    if (n.shared.empty()) throw Error(ErrorCode::kIncompatibleOutputs, "intersection shares no variable");
    std::map<std::string, std::string> m;
    for (const auto& name : n.shared) {
      const auto* a = find_out(l.outputs, name);
      const auto* b = find_out(r.outputs, name);
      if (!a || !b) throw Error(ErrorCode::kInvalidPlan, "shared variable " + name + " missing on one side");
      if (!same_meaning(a->spec, b->spec)) {
        throw Error(ErrorCode::kVariableCapture, "output " + name + " means different things on the two sides");
      }
      m[b->var] = a->var;
    }
    // Unshared outputs with equal names would be silently conflated later.
    for (const auto& o : r.outputs) {
      if (find_out(l.outputs, o.spec.var) &&
          std::find(n.shared.begin(), n.shared.end(), o.spec.var) == n.shared.end()) {
        throw Error(ErrorCode::kVariableCapture, "output " + o.spec.var + " appears on both sides but is not shared");
      }
    }
    rename_partial(r, m);
    Partial out;
    out.group = std::move(l.group);
    append(out.group, r.group);
    out.outputs = l.outputs;
    for (const auto& o : r.outputs) {
      if (!find_out(out.outputs, o.spec.var)) out.outputs.push_back(o);
    }
    out.order = r.order;
    out.limit = r.limit;
    return out;
  }

  Partial chain(const PlanNode& n) {
    if (!n.wiring) throw Error(ErrorCode::kInvalidPlan, "chain without wiring");
    if (n.right->kind != MergeKind::kLeaf) throw Error(ErrorCode::kInvalidPlan, "chain target must be a leaf");
    auto l = build(*n.left);
    no_order(l, "source of a chain");
    const auto& target = plan_.leaves.at(n.right->leaf);
    const auto* src = find_out(l.outputs, n.wiring->source_var);
    if (!src) throw Error(ErrorCode::kInvalidPlan, "wiring source ?" + n.wiring->source_var + " is not an output");
    if (!target.tmpl->input || target.tmpl->input->var != n.wiring->target_var) {
      throw Error(ErrorCode::kInvalidPlan,
                  "wiring target ?" + n.wiring->target_var + " is not an input of " + target.template_id());
    }
    if (src->spec.role == OutputRole::kEntity && src->spec.entity_kind &&
        !templates::role_accepts(target.tmpl->input->kind, *src->spec.entity_kind)) {
      throw Error(ErrorCode::kInvalidPlan, "cannot wire a " + std::string(kg::kind_name(*src->spec.entity_kind)) +
                                               " into " + target.template_id());
    }
    auto r = leaf(n.right->leaf);
    const std::string target_var = n.wiring->target_var + "_" + std::to_string(n.right->leaf + 1);
    rename_partial(r, {{target_var, src->var}});
    Partial out;
    out.group = std::move(l.group);
    append(out.group, r.group);
    out.outputs = r.outputs;
    out.order = r.order;
    out.limit = r.limit;
    return out;
  }

  Partial unite(const PlanNode& n) {
    auto l = build(*n.left);
    auto r = build(*n.right);
    no_order(l, "left side of a union");
    no_order(r, "right side of a union");
    if (l.outputs.size() != r.outputs.size()) throw Error(ErrorCode::kIncompatibleOutputs, "union sides differ in width");
    std::map<std::string, std::string> m;
    for (const auto& a : l.outputs) {
      const auto* b = find_out(r.outputs, a.spec.var);
      if (!b || !same_meaning(a.spec, b->spec)) {
        throw Error(ErrorCode::kIncompatibleOutputs, "union sides do not both produce " + a.spec.var);
      }
      m[b->var] = a.var;
    }
    rename_partial(r, m);
    Partial out;
    out.group.unions.push_back({std::move(l.group), std::move(r.group)});
    out.outputs = l.outputs;
    return out;
  }

  const MergePlan& plan_;
  std::vector<bool> used_;
};

}  // namespace

FinalQuery compile(const MergePlan& plan) { return Compiler(plan).run(); }

}  // namespace circugraph::merge
