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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace circugraph::retrieval {

using Phrase = std::vector<std::string>;  // lowercase words

// Versioned keyword table read from a data file ("entry: phrase, phrase").
class Lexicon {
 public:
  // Throws ParseError on malformed lines, Error(kConfig) on an unsupported version.
  static Lexicon parse(std::string_view text);
  static Lexicon load_file(const std::string& path);
  static const Lexicon& bundled();

  int version() const { return version_; }
  // Empty when the entry is absent.
  const std::vector<Phrase>& phrases(std::string_view entry) const;
  std::vector<std::string> entries() const;

 private:
  int version_ = 0;
  std::map<std::string, std::vector<Phrase>, std::less<>> entries_;
};

}  // namespace circugraph::retrieval
