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

#include "retrieval/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "common/bundled_data.hpp"
#include "common/error.hpp"

namespace circugraph::retrieval {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Phrase split_phrase(const std::string& s) {
  Phrase p;
  std::istringstream in(s);
  for (std::string w; in >> w;) {
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
    p.push_back(w);
  }
  return p;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool have_version = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'entry: phrases'");
    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));
    if (key == "version") {
      try {
        lex.version_ = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad version");
      }
      if (lex.version_ != 1) throw Error(ErrorCode::kConfig, "unsupported lexicon version " + value);
      have_version = true;
      continue;
    }
    if (key.empty()) throw ParseError(lineno, "empty entry name");
    auto& list = lex.entries_[key];
    std::stringstream items(value);
    for (std::string item; std::getline(items, item, ',');) {
      auto p = split_phrase(item);
      if (p.empty()) throw ParseError(lineno, "empty phrase in " + key);
      list.push_back(std::move(p));
    }
  }
  if (!have_version) throw Error(ErrorCode::kConfig, "lexicon has no version line");
  // Longest phrases first so matching is greedy.
  for (auto& [k, list] : lex.entries_) {
    std::stable_sort(list.begin(), list.end(), [](const Phrase& a, const Phrase& b) { return a.size() > b.size(); });
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = [] {
    auto text = bundled_file("lexicon.txt");
    if (!text) throw Error(ErrorCode::kInternal, "bundled lexicon missing");
    return parse(*text);
  }();
  return lex;
}

const std::vector<Phrase>& Lexicon::phrases(std::string_view entry) const {
  static const std::vector<Phrase> none;
  auto it = entries_.find(entry);
  return it == entries_.end() ? none : it->second;
}

std::vector<std::string> Lexicon::entries() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

}  // namespace circugraph::retrieval
