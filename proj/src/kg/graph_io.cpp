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

#include "kg/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "common/error.hpp"

namespace circugraph::kg {

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool consume(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  std::string iri_ref() {
    skip_ws();
    if (!consume('<')) fail("expected '<'");
    auto end = text_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string quoted() {
    skip_ws();
    if (!consume('"')) fail("expected '\"'");
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string literal");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) fail("dangling escape");
      char e = text_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
    return out;
  }

  // Run of non-space characters.
  std::string word() {
    skip_ws();
    auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    auto body = text.substr(start, end - start);
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    fn(body, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

Term typed_literal(std::string lexical, const std::optional<std::string>& datatype, LineCursor& cur) {
  if (datatype && *datatype == kXsdDecimal) {
    if (!Decimal::parse(lexical)) cur.fail("malformed xsd:decimal \"" + lexical + "\"");
    return Literal::decimal(std::move(lexical));
  }
  return Literal::text(std::move(lexical));
}

Iri resolve_name(const std::string& name, const std::vector<Prefix>& prefixes, LineCursor& cur) {
  if (name.empty()) cur.fail("expected a term");
  if (name.rfind("_:", 0) == 0) cur.fail("blank nodes are not supported");
  auto expanded = expand_prefixed(name, prefixes);
  if (!expanded) cur.fail("unknown prefix in '" + name + "'");
  return Iri::absolute(*expanded);
}

Iri fixture_iri(LineCursor& cur, const std::vector<Prefix>& prefixes) {
  cur.skip_ws();
  if (cur.peek() == '<') return Iri::absolute(cur.iri_ref());
  return resolve_name(cur.word(), prefixes, cur);
}

Term fixture_object(LineCursor& cur, const std::vector<Prefix>& prefixes) {
  cur.skip_ws();
  const char c = cur.peek();
  if (c == '<') return Iri::absolute(cur.iri_ref());
  if (c == '"') {
    auto lexical = cur.quoted();
    if (cur.peek() == '^' ) {
      auto dt = cur.word();
      if (dt.rfind("^^", 0) != 0) cur.fail("expected '^^'");
      dt = dt.substr(2);
      std::string dt_iri;
      if (!dt.empty() && dt.front() == '<' && dt.back() == '>') {
        dt_iri = dt.substr(1, dt.size() - 2);
      } else {
        dt_iri = resolve_name(dt, prefixes, cur).value();
      }
      return typed_literal(std::move(lexical), dt_iri, cur);
    }
    return Literal::text(std::move(lexical));
  }
  auto w = cur.word();
  if (!w.empty() && (std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '-' || w[0] == '+' ||
                     w[0] == '.')) {
    if (!Decimal::parse(w)) cur.fail("malformed number '" + w + "'");
    return Literal::decimal(w);
  }
  return resolve_name(w, prefixes, cur);
}

std::vector<Prefix> fixture_prefixes() {
  std::vector<Prefix> out;
  for (const auto& p : builtin_prefixes()) out.push_back(p);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open graph file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<SourcedTriple> parse_ntriples(std::string_view text) {
  std::vector<SourcedTriple> out;
  for_each_line(text, [&out](std::string_view body, std::size_t line) {
    LineCursor cur(body, line);
    if (cur.at_end()) return;
    if (cur.peek() == '_') cur.fail("blank nodes are not supported");
    auto s = Iri::absolute(cur.iri_ref());
    cur.skip_ws();
    if (cur.peek() == '_') cur.fail("blank nodes are not supported");
    auto p = Iri::absolute(cur.iri_ref());
    cur.skip_ws();
    Term o;
    switch (cur.peek()) {
      case '<': o = Iri::absolute(cur.iri_ref()); break;
      case '"': {
        auto lexical = cur.quoted();
        std::optional<std::string> datatype;
        if (cur.peek() == '^') {
          if (!cur.consume('^') || !cur.consume('^')) cur.fail("expected '^^'");
          datatype = cur.iri_ref();
        } else if (cur.peek() == '@') {
          cur.word();  // language tag: kept as plain text
        }
        o = typed_literal(std::move(lexical), datatype, cur);
        break;
      }
      case '_': cur.fail("blank nodes are not supported");
      default: cur.fail("expected IRI or literal object");
    }
    if (!cur.consume('.')) cur.fail("expected '.' terminating the triple");
    if (!cur.at_end()) cur.fail("trailing characters after '.'");
    out.push_back({Triple{std::move(s), std::move(p), std::move(o)}, line});
  });
  return out;
}

std::vector<SourcedTriple> parse_fixture_format(std::string_view text) {
  std::vector<SourcedTriple> out;
  auto prefixes = fixture_prefixes();
  std::optional<Iri> subject;
  for_each_line(text, [&](std::string_view body, std::size_t line) {
    LineCursor cur(body, line);
    if (cur.at_end()) return;
    const bool indented = body.front() == ' ' || body.front() == '\t';
    if (!indented && body.rfind("@prefix", 0) == 0) {
      cur.word();
      auto name = cur.word();
      if (name.empty() || name.back() != ':') cur.fail("expected 'name:' after @prefix");
      name.pop_back();
      auto ns = cur.iri_ref();
      cur.consume('.');
      if (!cur.at_end()) cur.fail("trailing characters after @prefix");
      bool replaced = false;
      for (auto& p : prefixes) {
        if (p.name == name) {
          p.ns = ns;
          replaced = true;
        }
      }
      if (!replaced) prefixes.push_back({name, ns});
      return;
    }
    if (!indented) {
      subject = fixture_iri(cur, prefixes);
      if (cur.at_end()) return;
    } else if (!subject) {
      cur.fail("indented line before any subject");
    }
    auto p = fixture_iri(cur, prefixes);
    if (cur.at_end()) cur.fail("missing object");
    auto o = fixture_object(cur, prefixes);
    if (!cur.at_end()) cur.fail("trailing characters after object");
    out.push_back({Triple{*subject, std::move(p), std::move(o)}, line});
  });
  return out;
}

TripleStore load_graph_text(std::string_view text, GraphFormat format) {
  auto sourced = format == GraphFormat::kNTriples ? parse_ntriples(text) : parse_fixture_format(text);
  validate_graph(sourced);
  std::vector<Triple> triples;
  triples.reserve(sourced.size());
  for (auto& st : sourced) triples.push_back(std::move(st.triple));
  return TripleStore::from_triples(triples);
}

TripleStore load_graph(const std::filesystem::path& path) {
  const auto text = read_file(path);
  const auto ext = path.extension().string();
  GraphFormat format;
  if (ext == ".nt") {
    format = GraphFormat::kNTriples;
  } else if (ext == ".kg") {
    format = GraphFormat::kFixture;
  } else {
    // First meaningful character: '<' means N-Triples.
    auto pos = text.find_first_not_of(" \t\r\n");
    while (pos != std::string::npos && text[pos] == '#') {
      pos = text.find('\n', pos);
      if (pos != std::string::npos) pos = text.find_first_not_of(" \t\r\n", pos);
    }
    format = pos != std::string::npos && text[pos] == '<' ? GraphFormat::kNTriples
                                                          : GraphFormat::kFixture;
  }
  return load_graph_text(text, format);
}

std::string write_ntriples(const TripleStore& store) {
  std::string out;
  for (const auto& t : store.triples()) {
    out += to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object) +
           " .\n";
  }
  return out;
}

std::string write_fixture_format(const TripleStore& store) {
  std::string out = "# circugraph fixture graph\n";
  for (const auto& p : builtin_prefixes()) out += "@prefix " + p.name + ": <" + p.ns + "> .\n";
  const Iri* current = nullptr;
  const auto triples = store.triples();
  for (const auto& t : triples) {
    if (!current || *current != t.subject) {
      out += "\n" + t.subject.compact() + "\n";
      current = &t.subject;
    }
    std::string obj;
    if (is_iri(t.object)) {
      obj = std::get<Iri>(t.object).compact();
    } else {
      const auto& l = std::get<Literal>(t.object);
      obj = l.is_decimal() ? l.lexical() : "\"" + escape_string(l.lexical()) + "\"";
    }
    out += "    " + t.predicate.compact() + " " + obj + "\n";
  }
  return out;
}

void save_graph(const TripleStore& store, const std::filesystem::path& path) {
  const auto text = path.extension() == ".nt" ? write_ntriples(store) : write_fixture_format(store);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace circugraph::kg
