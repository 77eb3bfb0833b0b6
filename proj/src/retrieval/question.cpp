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

#include "retrieval/question.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace circugraph::retrieval {

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::kLookup: return "lookup";
    case Objective::kMinimizeGwp100: return "minimize-gwp100";
    case Objective::kMaximizeGwp100: return "maximize-gwp100";
    case Objective::kSynergyChain: return "synergy-chain";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view s) {
  for (auto o : {Objective::kLookup, Objective::kMinimizeGwp100, Objective::kMaximizeGwp100, Objective::kSynergyChain}) {
    if (objective_name(o) == s) return o;
  }
  return std::nullopt;
}

namespace {

enum class TokKind { kWord, kPunct, kQuote };

struct Token {
  TokKind kind;
  std::string text;  // lowercase word, punct char, or quoted content
  std::size_t begin;
  std::size_t end;
};

bool word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::size_t at, std::string_view pat) { return s.substr(at, pat.size()) == pat; };
  while (i < s.size()) {
    const unsigned char c = s[i];
    // quoted spans: "..", “..”, ``..''
    std::string_view open, close;
    if (c == '"') open = close = "\"";
    else if (starts(i, "“")) open = "“", close = "”";
    else if (starts(i, "``")) open = "``", close = "''";
    if (!open.empty()) {
      const auto end = s.find(close, i + open.size());
      if (end != std::string_view::npos) {
        out.push_back({TokKind::kQuote, std::string(s.substr(i + open.size(), end - i - open.size())), i,
                       end + close.size()});
        i = end + close.size();
        continue;
      }
      ++i;  // unbalanced quote: ignore it
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (starts(i, "”") || starts(i, "’") || starts(i, "‘")) {
      i += 3;
      continue;
    }
    if (word_byte(c)) {
      std::size_t j = i;
      while (j < s.size() && word_byte(static_cast<unsigned char>(s[j]))) ++j;
      std::string w(s.substr(i, j - i));
      std::transform(w.begin(), w.end(), w.begin(), [](unsigned char x) { return std::tolower(x); });
      out.push_back({TokKind::kWord, std::move(w), i, j});
      i = j;
      continue;
    }
    out.push_back({TokKind::kPunct, std::string(1, static_cast<char>(c)), i, i + 1});
    ++i;
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

class Scanner {
 public:
  Scanner(const std::vector<Token>& toks, const Lexicon& lex) : t_(toks), lex_(lex) {}

  // Length of the longest phrase of `entry` starting at token i (0 if none).
  std::size_t match(std::string_view entry, std::size_t i) const {
    for (const auto& p : lex_.phrases(entry)) {  // longest first
      if (i + p.size() > t_.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < p.size() && ok; ++k) {
        ok = t_[i + k].kind == TokKind::kWord && t_[i + k].text == p[k];
      }
      if (ok) return p.size();
    }
    return 0;
  }

  // Any phrase of `entry` ending exactly at token i-1; returns its start.
  std::optional<std::size_t> match_ending(std::string_view entry, std::size_t i) const {
    for (const auto& p : lex_.phrases(entry)) {
      if (p.size() > i) continue;
      if (match_exact(p, i - p.size())) return i - p.size();
    }
    return std::nullopt;
  }

  std::optional<std::pair<kg::EntityKind, std::size_t>> role_at(std::size_t i) const {
    for (auto k : {kg::EntityKind::kProvider, kg::EntityKind::kReceiver, kg::EntityKind::kResource}) {
      if (auto n = match("role." + std::string(kg::kind_name(k)), i)) return std::make_pair(k, n);
    }
    return std::nullopt;
  }

  // Role phrase ending at token i-1: (kind, start index).
  std::optional<std::pair<kg::EntityKind, std::size_t>> role_ending(std::size_t i) const {
    for (auto k : {kg::EntityKind::kProvider, kg::EntityKind::kReceiver, kg::EntityKind::kResource}) {
      if (auto s = match_ending("role." + std::string(kg::kind_name(k)), i)) return std::make_pair(k, *s);
    }
    return std::nullopt;
  }

  std::optional<kg::CodeScheme> scheme_at(std::size_t i, std::size_t* len) const {
    for (auto s : kg::kAllSchemes) {
      if (auto n = match("scheme." + std::string(kg::scheme_name(s)), i)) {
        *len = n;
        return s;
      }
    }
    return std::nullopt;
  }

  // Index of the first token before i that is not an article.
  std::optional<std::size_t> prev_skipping_articles(std::size_t i) const {
    while (i > 0) {
      --i;
      if (!match("articles", i)) return i;
    }
    return std::nullopt;
  }

  bool is_word(std::size_t i, std::string_view w) const {
    return i < t_.size() && t_[i].kind == TokKind::kWord && t_[i].text == w;
  }

 private:
  bool match_exact(const Phrase& p, std::size_t at) const {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (t_[at + k].kind != TokKind::kWord || t_[at + k].text != p[k]) return false;
    }
    return true;
  }

  const std::vector<Token>& t_;
  const Lexicon& lex_;
};

bool sentence_break(const Token& t) {
  return t.kind == TokKind::kPunct && (t.text == "." || t.text == "?" || t.text == "!" || t.text == ";");
}

}  // namespace

ParsedQuery parse_question(std::string_view text, const Lexicon& lex) {
  ParsedQuery pq;
  pq.raw = std::string(text);
  const auto toks = tokenize(text);
  Scanner sc(toks, lex);
  std::vector<std::size_t> mention_tokens;  // token index per mention, for disjunction

  // Codes: <scheme> [code-word] <digits>
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::size_t len = 0;
    auto scheme = sc.scheme_at(i, &len);
    if (!scheme) continue;
    std::size_t j = i + len;
    if (auto n = sc.match("code-word", j)) j += n;
    if (j >= toks.size() || toks[j].kind != TokKind::kWord || !all_digits(toks[j].text)) continue;
    if (!kg::valid_code(*scheme, toks[j].text)) continue;
    CodeMention m;
    m.code = kg::ClassificationCode::make(*scheme, toks[j].text);
    m.offset = toks[i].begin;
    // holder: nearest role word before the keyword in the same sentence
    for (std::size_t k = i; k > 0; --k) {
      if (sentence_break(toks[k - 1])) break;
      if (auto r = sc.role_ending(k)) {
        m.holder = r->first;
        auto of = sc.prev_skipping_articles(r->second);
        if (of && sc.is_word(*of, "of")) {
          if (auto rel = sc.role_ending(*of)) m.relative = rel->first;
        }
        break;
      }
    }
    pq.code_mentions.push_back(m);
    mention_tokens.push_back(i);
    i = j;
  }

  auto relation_before = [&](std::size_t i) {
    using templates::NameRelation;
    auto p = sc.prev_skipping_articles(i);
    if (!p) return NameRelation::kSubject;
    if (sc.is_word(*p, "of")) {
      if (auto r = sc.role_ending(*p)) {
        if (r->first == kg::EntityKind::kReceiver) return NameRelation::kReceived;
        if (r->first == kg::EntityKind::kProvider) return NameRelation::kProduced;
      }
      return NameRelation::kSubject;
    }
    if (auto r = sc.role_ending(*p + 1)) {
      if (r->first == kg::EntityKind::kReceiver) return NameRelation::kNamedReceiver;
      if (r->first == kg::EntityKind::kProvider) return NameRelation::kNamedProvider;
      return NameRelation::kSubject;
    }
    if (sc.match_ending("produce", *p + 1)) return NameRelation::kProduced;
    if (sc.match_ending("receive", *p + 1)) return NameRelation::kReceived;
    return NameRelation::kSubject;
  };

  // Names: quoted spans anywhere, unquoted phrases after produce/receive verbs.
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind == TokKind::kQuote) {
      std::string name = toks[i].text;
      // trim
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(name.begin());
      if (name.empty()) continue;
      pq.name_mentions.push_back({name, relation_before(i), true, toks[i].begin, std::nullopt});
      mention_tokens.push_back(i);
      continue;
    }
    std::size_t n = 0;
    templates::NameRelation rel{};
    if ((n = sc.match("produce", i))) rel = templates::NameRelation::kProduced;
    else if ((n = sc.match("receive", i))) rel = templates::NameRelation::kReceived;
    if (!n) continue;
    std::size_t j = i + n;
    while (j < toks.size() && sc.match("articles", j)) ++j;
    const std::size_t start = j;
    while (j < toks.size() && toks[j].kind == TokKind::kWord && !sc.match("stop", j) && !sc.role_at(j)) {
      std::size_t dummy = 0;
      if (sc.scheme_at(j, &dummy)) break;
      ++j;
    }
    if (j > start) {
      const auto b = toks[start].begin;
      const auto e = toks[j - 1].end;
      pq.name_mentions.push_back({std::string(text.substr(b, e - b)), rel, false, b, std::nullopt});
      mention_tokens.push_back(start);
    }
    i = j == 0 ? 0 : j - 1;
  }
  std::stable_sort(pq.name_mentions.begin(), pq.name_mentions.end(),
                   [](const NameMention& a, const NameMention& b) { return a.offset < b.offset; });

  // Target role: last "as a <role>" style phrase, else the first role word.
  std::optional<kg::EntityKind> first_role;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (auto n = sc.match("target-cue", i)) {
      std::size_t j = i + n;
      while (j < toks.size() && sc.match("articles", j)) ++j;
      if (auto r = sc.role_at(j)) pq.target_role = r->first;
    }
    if (!first_role) {
      if (auto r = sc.role_at(i)) first_role = r->first;
    }
  }
  if (!pq.target_role) pq.target_role = first_role;

  // Objective and requested attributes.
  bool gwp = false, minimize = false, maximize = false, chain = false, category = false;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    gwp = gwp || sc.match("gwp", i);
    minimize = minimize || sc.match("minimize", i);
    maximize = maximize || sc.match("maximize", i);
    chain = chain || sc.match("chain", i);
    category = category || sc.match("category", i);
    if (auto n = sc.match("ask", i)) {
      std::size_t len = 0;
      if (auto s = sc.scheme_at(i + n, &len)) {
        std::size_t j = i + n + len;
        if (auto c = sc.match("code-word", j)) j += c;
        if (j >= toks.size() || !all_digits(toks[j].text)) pq.requested.push_back({templates::OutputRole::kCode, *s});
      }
    }
  }
  if (gwp && minimize) pq.objective = Objective::kMinimizeGwp100;
  else if (gwp && maximize) pq.objective = Objective::kMaximizeGwp100;
  else if (chain) pq.objective = Objective::kSynergyChain;
  if (gwp) pq.requested.push_back({templates::OutputRole::kGwp100, std::nullopt});
  if (category) pq.requested.push_back({templates::OutputRole::kCategory, std::nullopt});
  std::sort(pq.requested.begin(), pq.requested.end());
  pq.requested.erase(std::unique(pq.requested.begin(), pq.requested.end()), pq.requested.end());

  if (mention_tokens.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(mention_tokens.begin(), mention_tokens.end());
    for (std::size_t i = *lo + 1; i < *hi; ++i) {
      if (sc.match("union", i)) pq.disjunctive = true;
    }
  }

  for (const auto& m : pq.code_mentions) pq.codes.push_back(m.code);
  for (const auto& m : pq.name_mentions) {
    if (m.relation != templates::NameRelation::kNamedReceiver && m.relation != templates::NameRelation::kNamedProvider) {
      pq.resource_names.push_back(m.text);
    }
  }
  return pq;
}

std::string to_json(const ParsedQuery& pq) {
  using nlohmann::json;
  json codes = json::array();
  for (const auto& m : pq.code_mentions) {
    json c = {{"scheme", kg::scheme_name(m.code.scheme)},
              {"value", m.code.value},
              {"holder", kg::kind_name(m.holder)},
              {"offset", m.offset}};
    if (m.relative) c["relative"] = kg::kind_name(*m.relative);
    codes.push_back(c);
  }
  json names = json::array();
  for (const auto& m : pq.name_mentions) {
    json n = {{"text", m.text}, {"relation", templates::relation_name(m.relation)}, {"quoted", m.quoted}, {"offset", m.offset}};
    if (m.linked) n["linked"] = m.linked->value();
    names.push_back(n);
  }
  json requested = json::array();
  for (const auto& a : pq.requested) requested.push_back(templates::attribute_text(a));
  json out = {{"raw", pq.raw},
              {"codes", codes},
              {"names", names},
              {"target_role", pq.target_role ? json(kg::kind_name(*pq.target_role)) : json(nullptr)},
              {"objective", objective_name(pq.objective)},
              {"requested", requested},
              {"disjunctive", pq.disjunctive}};
  return out.dump();
}

}  // namespace circugraph::retrieval
