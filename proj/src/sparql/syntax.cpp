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

#include "sparql/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "common/error.hpp"

namespace circugraph::sparql {

namespace {

enum class Tok {
  kEnd,
  kWord,         // keyword or bare identifier
  kVar,          // ?name
  kIri,          // <...>
  kPname,        // pfx:local
  kString,       // "..."
  kNumber,
  kPlaceholder,  // %name%
  kPunct,        // { } ( ) . , ^^ @lang
  kOp,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t pos = 0;
};

bool pname_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.pos = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (c == '?' || c == '$') {
      ++pos_;
      auto start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      t.kind = Tok::kVar;
      t.text = std::string(src_.substr(start, pos_ - start));
      if (t.text.empty()) throw SyntaxError(t.pos, "variable name");
      return t;
    }
    if (c == '<') {
      // IRI when a '>' closes it before any whitespace; otherwise an operator.
      auto end = pos_ + 1;
      while (end < src_.size() && src_[end] != '>' && !std::isspace(static_cast<unsigned char>(src_[end])) &&
             src_[end] != '<' && src_[end] != '"' && src_[end] != '=') {
        ++end;
      }
      if (end < src_.size() && src_[end] == '>' && end > pos_ + 1) {
        t.kind = Tok::kIri;
        t.text = std::string(src_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end + 1;
        return t;
      }
    }
    if (c == '<' || c == '>' || c == '=' || c == '!') {
      t.kind = Tok::kOp;
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        t.text = std::string(src_.substr(pos_, 2));
        pos_ += 2;
      } else {
        if (c == '!') throw SyntaxError(pos_, "'!='");
        t.text = std::string(1, c);
        ++pos_;
      }
      return t;
    }
    if (c == '"') {
      t.kind = Tok::kString;
      ++pos_;
      while (true) {
        if (pos_ >= src_.size()) throw SyntaxError(t.pos, "closing '\"'");
        char ch = src_[pos_++];
        if (ch == '"') break;
        if (ch != '\\') {
          t.text.push_back(ch);
          continue;
        }
        if (pos_ >= src_.size()) throw SyntaxError(pos_, "escape character");
        char e = src_[pos_++];
        switch (e) {
          case 'n': t.text.push_back('\n'); break;
          case 'r': t.text.push_back('\r'); break;
          case 't': t.text.push_back('\t'); break;
          case '"': t.text.push_back('"'); break;
          case '\\': t.text.push_back('\\'); break;
          default: throw SyntaxError(pos_ - 1, "valid escape");
        }
      }
      return t;
    }
    if (c == '%') {
      auto end = src_.find('%', pos_ + 1);
      if (end == std::string_view::npos) throw SyntaxError(pos_, "closing '%'");
      t.kind = Tok::kPlaceholder;
      t.text = std::string(src_.substr(pos_ + 1, end - pos_ - 1));
      if (!valid_var_name(t.text)) throw SyntaxError(pos_ + 1, "placeholder name");
      pos_ = end + 1;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-' || c == '.') && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      auto start = pos_++;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              (src_[pos_] == '.' && pos_ + 1 < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))) {
        ++pos_;
      }
      t.kind = Tok::kNumber;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '^' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '^') {
      t.kind = Tok::kPunct;
      t.text = "^^";
      pos_ += 2;
      return t;
    }
    if (c == '@') {
      auto start = pos_++;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-')) {
        ++pos_;
      }
      t.kind = Tok::kPunct;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::string_view("{}().,").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') {
      auto start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ < src_.size() && src_[pos_] == ':') {
        ++pos_;
        while (pos_ < src_.size() && pname_char(src_[pos_])) ++pos_;
        // A trailing '.' terminates the triple rather than the local name.
        while (src_[pos_ - 1] == '.') --pos_;
        t.kind = Tok::kPname;
      } else {
        t.kind = Tok::kWord;
      }
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    throw SyntaxError(pos_, "a token");
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool keyword(const Token& t, std::string_view kw) {
  if (t.kind != Tok::kWord || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src), prefixes_(kg::builtin_prefixes()) {
    advance();
  }

  Query query() {
    while (keyword(cur_, "PREFIX")) prefix_decl();
    expect_keyword("SELECT");
    Query q;
    if (keyword(cur_, "DISTINCT")) advance();
    while (cur_.kind == Tok::kVar) {
      q.select.push_back(var_from(cur_));
      advance();
    }
    if (q.select.empty()) throw SyntaxError(cur_.pos, "variable after SELECT");
    if (keyword(cur_, "WHERE")) advance();
    q.where = group();
    if (keyword(cur_, "ORDER")) {
      advance();
      expect_keyword("BY");
      OrderBy ob;
      if (keyword(cur_, "ASC")) {
        ob.direction = Direction::kAsc;
      } else if (keyword(cur_, "DESC")) {
        ob.direction = Direction::kDesc;
      } else if (cur_.kind == Tok::kPlaceholder) {
        ob.direction = Placeholder{cur_.text};
      } else {
        throw SyntaxError(cur_.pos, "ASC, DESC or placeholder");
      }
      advance();
      expect_punct("(");
      if (cur_.kind != Tok::kVar) throw SyntaxError(cur_.pos, "variable");
      ob.var = var_from(cur_);
      advance();
      expect_punct(")");
      q.order_by = ob;
    }
    if (keyword(cur_, "LIMIT")) {
      advance();
      if (cur_.kind != Tok::kNumber) throw SyntaxError(cur_.pos, "positive integer");
      std::uint64_t n = 0;
      auto [ptr, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), n);
      if (ec != std::errc() || ptr != cur_.text.data() + cur_.text.size() || n == 0) {
        throw SyntaxError(cur_.pos, "positive integer");
      }
      q.limit = n;
      advance();
    }
    if (cur_.kind != Tok::kEnd) throw SyntaxError(cur_.pos, "end of query");
    return q;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect_keyword(std::string_view kw) {
    if (!keyword(cur_, kw)) throw SyntaxError(cur_.pos, std::string(kw));
    advance();
  }
  void expect_punct(std::string_view p) {
    if (cur_.kind != Tok::kPunct || cur_.text != p) throw SyntaxError(cur_.pos, "'" + std::string(p) + "'");
    advance();
  }
  bool at_punct(std::string_view p) const { return cur_.kind == Tok::kPunct && cur_.text == p; }

  Var var_from(const Token& t) {
    if (!valid_var_name(t.text)) throw SyntaxError(t.pos, "variable name");
    return Var{t.text};
  }

  void prefix_decl() {
    advance();
    if (cur_.kind != Tok::kPname || cur_.text.back() != ':') throw SyntaxError(cur_.pos, "prefix name");
    std::string name = cur_.text.substr(0, cur_.text.size() - 1);
    advance();
    if (cur_.kind != Tok::kIri) throw SyntaxError(cur_.pos, "IRI");
    auto it = std::find_if(prefixes_.begin(), prefixes_.end(), [&](const kg::Prefix& p) { return p.name == name; });
    if (it != prefixes_.end()) {
      it->ns = cur_.text;
    } else {
      prefixes_.push_back({name, cur_.text});
    }
    advance();
  }

  kg::Iri iri_from(const Token& t) {
    if (t.kind == Tok::kIri) return kg::Iri::absolute(t.text);
    auto expanded = kg::expand_prefixed(t.text, prefixes_);
    if (!expanded) throw SyntaxError(t.pos, "declared prefix");
    return kg::Iri::absolute(*expanded);
  }

  PatternTerm term() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::kVar: advance(); return var_from(t);
      case Tok::kIri:
      case Tok::kPname: advance(); return iri_from(t);
      case Tok::kPlaceholder: advance(); return Placeholder{t.text};
      case Tok::kNumber: {
        advance();
        if (!kg::Decimal::parse(t.text)) throw SyntaxError(t.pos, "decimal number");
        return kg::Literal::decimal(t.text);
      }
      case Tok::kString: {
        advance();
        if (at_punct("^^")) {
          advance();
          if (cur_.kind != Tok::kIri && cur_.kind != Tok::kPname) throw SyntaxError(cur_.pos, "datatype IRI");
          auto dt = iri_from(cur_);
          auto dt_pos = cur_.pos;
          advance();
          const std::string xsd(kg::kXsdNamespace);
          if (dt.value() == kg::kXsdDecimal || dt.value() == xsd + "integer") {
            if (!kg::Decimal::parse(t.text)) throw SyntaxError(dt_pos, "decimal lexical form");
            return kg::Literal::decimal(t.text);
          }
          return kg::Literal::text(t.text);
        }
        if (cur_.kind == Tok::kPunct && !cur_.text.empty() && cur_.text[0] == '@') advance();
        return kg::Literal::text(t.text);
      }
      default: throw SyntaxError(t.pos, "term");
    }
  }

  GroupPattern group() {
    expect_punct("{");
    GroupPattern g;
    while (!at_punct("}")) {
      if (cur_.kind == Tok::kEnd) throw SyntaxError(cur_.pos, "'}'");
      if (at_punct("{")) {
        std::vector<GroupPattern> alts;
        alts.push_back(group());
        if (!keyword(cur_, "UNION")) throw SyntaxError(cur_.pos, "UNION");
        while (keyword(cur_, "UNION")) {
          advance();
          alts.push_back(group());
        }
        g.unions.push_back(std::move(alts));
        if (at_punct(".")) advance();
        continue;
      }
      if (keyword(cur_, "FILTER")) {
        advance();
        expect_punct("(");
        if (cur_.kind != Tok::kVar) throw SyntaxError(cur_.pos, "variable");
        Filter f;
        f.lhs = var_from(cur_);
        advance();
        if (cur_.kind != Tok::kOp) throw SyntaxError(cur_.pos, "comparison operator");
        static const std::pair<const char*, CompareOp> kOps[] = {
            {"=", CompareOp::kEq}, {"!=", CompareOp::kNe}, {"<", CompareOp::kLt},
            {"<=", CompareOp::kLe}, {">", CompareOp::kGt},  {">=", CompareOp::kGe}};
        bool found = false;
        for (const auto& [sym, op] : kOps) {
          if (cur_.text == sym) {
            f.op = op;
            found = true;
          }
        }
        if (!found) throw SyntaxError(cur_.pos, "comparison operator");
        advance();
        f.rhs = term();
        expect_punct(")");
        g.filters.push_back(std::move(f));
        if (at_punct(".")) advance();
        continue;
      }
      TriplePattern tp;
      tp.s = term();
      tp.p = term();
      tp.o = term();
      if (std::holds_alternative<kg::Literal>(tp.s)) throw SyntaxError(cur_.pos, "subject must not be a literal");
      if (std::holds_alternative<kg::Literal>(tp.p)) throw SyntaxError(cur_.pos, "predicate must not be a literal");
      g.triples.push_back(std::move(tp));
      if (at_punct(".")) {
        advance();
      } else if (!at_punct("}") && !at_punct("{") && !keyword(cur_, "FILTER")) {
        throw SyntaxError(cur_.pos, "'.' or '}'");
      }
    }
    advance();
    return g;
  }

  Lexer lex_;
  std::vector<kg::Prefix> prefixes_;
  Token cur_;
};

class Writer {
 public:
  explicit Writer(Layout layout) : layout_(layout) {}

  std::string term(const PatternTerm& t) {
    return std::visit(
        [this](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Var>) {
            return "?" + x.name;
          } else if constexpr (std::is_same_v<T, Placeholder>) {
            return "%" + x.name + "%";
          } else if constexpr (std::is_same_v<T, kg::Iri>) {
            return iri(x);
          } else {
            std::string out = "\"" + kg::escape_string(x.lexical()) + "\"";
            if (x.is_decimal()) out += "^^" + iri(kg::Iri::absolute(std::string(kg::kXsdDecimal)));
            return out;
          }
        },
        t);
  }

  void group(const GroupPattern& g, int depth, std::string& out) {
    out += "{";
    for (const auto& tp : g.triples) {
      line(depth + 1, out);
      out += term(tp.s) + " " + term(tp.p) + " " + term(tp.o) + " .";
    }
    for (const auto& u : g.unions) {
      line(depth + 1, out);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) out += " UNION ";
        group(u[i], depth + 1, out);
      }
    }
    for (const auto& f : g.filters) {
      line(depth + 1, out);
      out += "FILTER(?" + f.lhs.name + " " + std::string(op_symbol(f.op)) + " " + term(f.rhs) + ")";
    }
    line(depth, out);
    out += "}";
  }

  const std::set<std::string>& used() const { return used_; }
  bool pretty() const { return layout_ == Layout::kPretty; }

 private:
  std::string iri(const kg::Iri& i) {
    auto c = i.compact();
    if (c.front() != '<') used_.insert(c.substr(0, c.find(':')));
    return c;
  }
  void line(int depth, std::string& out) const {
    if (layout_ == Layout::kPretty) {
      out += "\n" + std::string(static_cast<std::size_t>(depth) * 2, ' ');
    } else {
      out += " ";
    }
  }

  Layout layout_;
  std::set<std::string> used_;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).query(); }

std::string serialize(const Query& q, Layout layout) {
  Writer w(layout);
  std::string body = "SELECT DISTINCT";
  for (const auto& v : q.select) body += " ?" + v.name;
  body += " WHERE ";
  w.group(q.where, 0, body);
  const char* sep = w.pretty() ? "\n" : " ";
  if (q.order_by) {
    std::string dir;
    if (const auto* d = std::get_if<Direction>(&q.order_by->direction)) {
      dir = *d == Direction::kAsc ? "ASC" : "DESC";
    } else {
      dir = "%" + std::get<Placeholder>(q.order_by->direction).name + "%";
    }
    body += sep + std::string("ORDER BY ") + dir + "(?" + q.order_by->var.name + ")";
  }
  if (q.limit) body += sep + std::string("LIMIT ") + std::to_string(*q.limit);

  std::string out;
  for (const auto& p : kg::builtin_prefixes()) {
    if (w.used().count(p.name)) out += "PREFIX " + p.name + ": <" + p.ns + ">" + sep;
  }
  return out + body;
}

std::string render_term(const PatternTerm& t) { return Writer(Layout::kCompact).term(t); }

}  // namespace circugraph::sparql
