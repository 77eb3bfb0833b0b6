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

#include "retrieval/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

#include "common/error.hpp"

namespace circugraph::retrieval {

using templates::NameRelation;
using templates::OutputRole;
using templates::PlaceholderKind;
using templates::QueryTemplate;
using templates::RoleRef;

std::string_view mode_name(MatchMode m) {
  switch (m) {
    case MatchMode::kWithTemplate: return "with-template";
    case MatchMode::kNoTemplate: return "no-template";
    case MatchMode::kFuzzyTemplate: return "fuzzy-template";
  }
  return "?";
}

std::optional<MatchMode> parse_mode(std::string_view s) {
  for (auto m : {MatchMode::kWithTemplate, MatchMode::kNoTemplate, MatchMode::kFuzzyTemplate}) {
    if (mode_name(m) == s) return m;
  }
  return std::nullopt;
}

namespace {

struct Candidate {
  std::shared_ptr<const QueryTemplate> tmpl;
  templates::Bindings bindings;
  std::set<std::size_t> consumed;  // mention ids; codes first, then names, then the objective
  double score = 0;
  std::size_t first = 0;  // smallest text offset among consumed mentions
};

bool requirements_hold(const QueryTemplate& t, const ParsedQuery& pq) {
  if (t.requires_target && pq.target_role != t.requires_target) return false;
  for (const auto& a : t.requires_attributes) {
    if (std::find(pq.requested.begin(), pq.requested.end(), a) == pq.requested.end()) return false;
  }
  return true;
}

bool code_fits(const templates::PlaceholderSpec& p, const CodeMention& m, const ParsedQuery& pq) {
  if (m.code.scheme != *p.scheme) return false;
  if (p.relative != m.relative) return false;
  if (*p.holder == RoleRef::kTargetRole) {
    return pq.target_role && *pq.target_role != kg::EntityKind::kResource && m.holder == *pq.target_role;
  }
  return templates::role_accepts(*p.holder, m.holder);
}

// Every way of binding `t` from distinct unused mentions, greedily in text
// order: each pass takes the earliest fitting mention per placeholder.
std::vector<Candidate> bind_all(const std::shared_ptr<const QueryTemplate>& t, const ParsedQuery& pq) {
  std::vector<Candidate> out;
  const std::size_t ncodes = pq.code_mentions.size();
  const std::size_t objective_id = ncodes + pq.name_mentions.size();
  std::set<std::size_t> used;
  bool consumes_mentions = false;
  for (const auto& p : t->placeholders) {
    consumes_mentions = consumes_mentions || p.kind == PlaceholderKind::kCode ||
                        p.kind == PlaceholderKind::kResourceName || p.kind == PlaceholderKind::kEntityName;
  }
  for (int pass = 0; pass < 3; ++pass) {
    Candidate c;
    c.tmpl = t;
    c.first = std::string::npos;
    bool ok = true;
    for (const auto& p : t->placeholders) {
      std::optional<std::size_t> pick;
      switch (p.kind) {
        case PlaceholderKind::kCode:
          for (std::size_t i = 0; i < ncodes && !pick; ++i) {
            if (!used.count(i) && !c.consumed.count(i) && code_fits(p, pq.code_mentions[i], pq)) pick = i;
          }
          if (pick) {
            c.bindings[p.name] = pq.code_mentions[*pick].code.value;
            c.first = std::min(c.first, pq.code_mentions[*pick].offset);
          }
          break;
        case PlaceholderKind::kResourceName:
        case PlaceholderKind::kEntityName:
          for (std::size_t i = 0; i < pq.name_mentions.size() && !pick; ++i) {
            const auto id = ncodes + i;
            if (!used.count(id) && !c.consumed.count(id) && pq.name_mentions[i].relation == *p.relation) pick = id;
          }
          if (pick) {
            c.bindings[p.name] = pq.name_mentions[*pick - ncodes].text;
            c.first = std::min(c.first, pq.name_mentions[*pick - ncodes].offset);
          }
          break;
        case PlaceholderKind::kEntityKind:
          if (pq.target_role && *pq.target_role != kg::EntityKind::kResource) {
            c.bindings[p.name] = std::string(kg::kind_name(*pq.target_role));
          } else {
            ok = false;
          }
          break;
        case PlaceholderKind::kNumericObjective:
          if (pq.objective == Objective::kMinimizeGwp100 || pq.objective == Objective::kMaximizeGwp100) {
            c.bindings[p.name] = pq.objective == Objective::kMinimizeGwp100 ? "minimize" : "maximize";
            pick = objective_id;
          } else {
            ok = false;
          }
          break;
      }
      if (!ok) break;
      if (p.kind != PlaceholderKind::kEntityKind) {
        if (!pick) {
          ok = false;
          break;
        }
        c.consumed.insert(*pick);
      }
    }
    if (!ok) break;
    out.push_back(c);
    if (!consumes_mentions) break;
    for (auto id : c.consumed) {
      if (id != objective_id) used.insert(id);
    }
  }
  return out;
}

std::optional<kg::EntityKind> final_kind(const templates::TemplateInstance& inst) {
  for (const auto& o : inst.expected_output) {
    if (o.role == OutputRole::kEntity) return o.entity_kind;
  }
  return inst.target;
}

bool goal_reached(const std::vector<templates::OutputSpec>& outputs, std::optional<kg::EntityKind> produced,
                  const ParsedQuery& pq) {
  if (!pq.requested.empty()) {
    return std::all_of(pq.requested.begin(), pq.requested.end(), [&](const templates::Attribute& a) {
      return std::any_of(outputs.begin(), outputs.end(),
                         [&](const templates::OutputSpec& o) { return templates::output_provides(o, a); });
    });
  }
  return !pq.target_role || produced == pq.target_role;
}

// Shortest sequence of input-only templates leading from `from` to the goal.
std::vector<std::shared_ptr<const QueryTemplate>> bridge(const std::vector<std::shared_ptr<const QueryTemplate>>& cat,
                                                         kg::EntityKind from, const ParsedQuery& pq) {
  struct State {
    kg::EntityKind kind;
    std::vector<std::shared_ptr<const QueryTemplate>> path;
  };
  std::deque<State> queue{{from, {}}};
  std::set<kg::EntityKind> seen{from};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    if (s.path.size() >= 3) continue;
    for (const auto& t : cat) {
      if (!t->placeholders.empty() || !t->input || !templates::role_accepts(t->input->kind, s.kind)) continue;
      std::optional<kg::EntityKind> produced;
      for (const auto& o : t->outputs) {
        if (o.role == OutputRole::kEntity) produced = o.entity_kind;
      }
      auto path = s.path;
      path.push_back(t);
      if (goal_reached(t->outputs, produced ? produced : std::optional<kg::EntityKind>(), pq)) return path;
      if (produced && seen.insert(*produced).second) queue.push_back({*produced, path});
    }
  }
  return {};
}

}  // namespace

MatchResult match_templates(const ParsedQuery& pq, MatchMode mode, const MatchOptions& options) {
  MatchResult result;
  result.mode = mode;
  if (mode == MatchMode::kNoTemplate) {
    result.free_form_attempt = true;
    return result;
  }
  if (pq.empty()) throw Error(ErrorCode::kNoMatch, "no code or name to bind a template from");

  const Embedder& emb = options.embedder ? *options.embedder : default_embedder();
  std::vector<std::shared_ptr<const QueryTemplate>> cat;
  if (options.catalog) {
    for (const auto& t : *options.catalog) cat.push_back(std::make_shared<const QueryTemplate>(t));
  } else {
    for (const auto& t : templates::catalog()) cat.push_back(templates::shared_template(t.id));
  }

  const auto qvec = emb.embed(pq.raw);
  std::vector<Candidate> cands;
  for (const auto& t : cat) {
    if (t->placeholders.empty() || !requirements_hold(*t, pq)) continue;
    const double score = std::clamp(dot(qvec, emb.embed(t->intent)), 0.0, 1.0);
    if (score < options.threshold) continue;
    for (auto& c : bind_all(t, pq)) {
      c.score = score;
      cands.push_back(std::move(c));
    }
  }

  // Subsumption.
  std::vector<Candidate> kept;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < cands.size() && !drop; ++j) {
      if (i == j) continue;
      const auto& a = cands[i].consumed;
      const auto& b = cands[j].consumed;
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
      if (a.size() < b.size()) drop = true;
      else if (cands[j].score > cands[i].score || (cands[j].score == cands[i].score && j < i)) drop = true;
    }
    if (!drop) kept.push_back(cands[i]);
  }

  std::set<std::size_t> covered;
  for (const auto& c : kept) covered.insert(c.consumed.begin(), c.consumed.end());
  const std::size_t nmentions = pq.code_mentions.size() + pq.name_mentions.size();
  for (std::size_t id = 0; id < nmentions; ++id) {
    if (!covered.count(id)) {
      const std::string what = id < pq.code_mentions.size()
                                   ? std::string(kg::scheme_name(pq.code_mentions[id].code.scheme)) + " code " +
                                         pq.code_mentions[id].code.value
                                   : "name \"" + pq.name_mentions[id - pq.code_mentions.size()].text + "\"";
      throw Error(ErrorCode::kNoMatch, "no template can use the " + what);
    }
  }
  if (kept.empty()) throw Error(ErrorCode::kNoMatch, "no applicable template");

  std::stable_sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.tmpl->id < b.tmpl->id;
  });

  for (const auto& c : kept) {
    result.instances.push_back(templates::instantiate(c.tmpl, c.bindings));
    result.confidence.push_back(c.score);
  }

  const auto& last = result.instances.back();
  const auto produced = final_kind(last);
  if (!goal_reached(last.expected_output, produced, pq) && produced) {
    for (const auto& t : bridge(cat, *produced, pq)) {
      result.instances.push_back(templates::instantiate(t, {}));
      result.confidence.push_back(std::clamp(dot(qvec, emb.embed(t->intent)), 0.0, 1.0));
    }
  }

  if (mode == MatchMode::kFuzzyTemplate) {
    for (const auto& inst : result.instances) {
      TemplateHint h;
      h.template_id = inst.template_id();
      for (const auto& p : inst.tmpl->placeholders) h.placeholders.emplace_back(p.kind_text(), inst.bindings.at(p.name));
      for (const auto& o : inst.expected_output) {
        std::string r(templates::output_role_name(o.role));
        if (o.role == OutputRole::kEntity && o.entity_kind) r += ":" + std::string(kg::kind_name(*o.entity_kind));
        if (o.role == OutputRole::kCode && o.scheme) r += ":" + std::string(kg::scheme_name(*o.scheme));
        h.output_roles.push_back(r);
      }
      result.hints.push_back(std::move(h));
    }
    result.instances.clear();
  }
  return result;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<kg::Iri> exact_label(const kg::TripleStore& store, const std::vector<kg::Iri>& nodes, const std::string& name) {
  const auto want = lower(name);
  std::optional<kg::Iri> best;
  for (const auto& n : nodes) {
    auto l = store.label_of(n);
    if (l && lower(*l) == want && (!best || n.value() < best->value())) best = n;
  }
  return best;
}

std::vector<kg::Iri> role_members(const kg::TripleStore& store, kg::EntityKind role) {
  std::set<std::string> members;
  if (role == kg::EntityKind::kResource) {
    for (const auto& n : store.nodes_of_kind(role)) members.insert(n.value());
  } else {
    const auto edge = role == kg::EntityKind::kProvider ? kg::vocab::provider() : kg::vocab::receiver();
    for (const auto& t : store.match(std::nullopt, edge, std::nullopt)) {
      if (kg::is_iri(t.object)) members.insert(std::get<kg::Iri>(t.object).value());
    }
    for (const auto& n : store.nodes_of_kind(role)) members.insert(n.value());
  }
  std::vector<kg::Iri> out;
  for (const auto& m : members) out.push_back(kg::Iri::absolute(m));
  return out;
}

}  // namespace

ParsedQuery link_entities(ParsedQuery pq, const LinkContext& ctx) {
  if (!ctx.store) return pq;
  const Embedder& emb = ctx.embedder ? *ctx.embedder : default_embedder();
  for (auto& m : pq.name_mentions) {
    std::optional<kg::EntityKind> role;
    const VectorIndex* index = nullptr;
    if (m.relation == NameRelation::kNamedReceiver) {
      role = kg::EntityKind::kReceiver;
      index = ctx.receivers;
    } else if (m.relation == NameRelation::kNamedProvider) {
      role = kg::EntityKind::kProvider;
      index = ctx.providers;
    } else {
      role = kg::EntityKind::kResource;
    }
    auto hit = exact_label(*ctx.store, role_members(*ctx.store, *role), m.text);
    if (!hit && index && index->size() > 0) {
      auto top = index->top_k(emb.embed(m.text), 1);
      if (!top.empty() && top[0].score >= ctx.min_score) hit = kg::Iri::absolute(top[0].key);
    }
    if (hit) {
      m.linked = hit;
      if (auto l = ctx.store->label_of(*hit)) m.text = *l;
    }
  }
  pq.resource_names.clear();
  for (const auto& m : pq.name_mentions) {
    if (m.relation != NameRelation::kNamedReceiver && m.relation != NameRelation::kNamedProvider) {
      pq.resource_names.push_back(m.text);
    }
  }
  return pq;
}

std::string to_json(const MatchResult& m) {
  using nlohmann::json;
  json inst = json::array();
  for (std::size_t i = 0; i < m.instances.size(); ++i) {
    json b = json::object();
    for (const auto& [k, v] : m.instances[i].bindings) b[k] = v;
    inst.push_back({{"template", m.instances[i].template_id()}, {"bindings", b}, {"confidence", m.confidence[i]}});
  }
  json hints = json::array();
  for (const auto& h : m.hints) {
    json ph = json::array();
    for (const auto& [k, v] : h.placeholders) ph.push_back({{"kind", k}, {"value", v}});
    hints.push_back({{"template", h.template_id}, {"placeholders", ph}, {"outputs", h.output_roles}});
  }
  return json{{"mode", mode_name(m.mode)}, {"instances", inst}, {"hints", hints}, {"free_form_attempt", m.free_form_attempt}}
      .dump();
}

}  // namespace circugraph::retrieval
