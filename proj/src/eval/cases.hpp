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

#include <string>
#include <string_view>
#include <vector>

namespace circugraph::eval {

enum class Hop { kSingle, kMulti };

struct QaCase {
  int id = 0;
  Hop hop = Hop::kSingle;
  std::string question;
  std::string reference;
};

// {"version": 1, "cases": [{"id", "hop": "single"|"multi", "question", "reference"}]}
// Throws Error(kDecode) / Error(kConfig).
std::vector<QaCase> parse_cases(std::string_view json);
// The six bundled question/answer pairs (data/qa_cases.json).
const std::vector<QaCase>& bundled_cases();

}  // namespace circugraph::eval
