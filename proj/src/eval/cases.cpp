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

#include "eval/cases.hpp"

#include <json.hpp>

#include "common/bundled_data.hpp"
#include "common/error.hpp"

namespace circugraph::eval {

std::vector<QaCase> parse_cases(std::string_view text) {
  using nlohmann::json;
  std::vector<QaCase> out;
  try {
    const auto j = json::parse(text);
    if (j.value("version", 0) != 1) throw Error(ErrorCode::kConfig, "case file version must be 1");
    for (const auto& c : j.at("cases")) {
      QaCase q;
      q.id = c.at("id").get<int>();
      const auto hop = c.at("hop").get<std::string>();
      if (hop != "single" && hop != "multi") throw Error(ErrorCode::kConfig, "hop must be single or multi");
      q.hop = hop == "single" ? Hop::kSingle : Hop::kMulti;
      q.question = c.at("question").get<std::string>();
      q.reference = c.at("reference").get<std::string>();
      out.push_back(std::move(q));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("malformed case file: ") + e.what());
  }
  return out;
}

const std::vector<QaCase>& bundled_cases() {
  static const std::vector<QaCase> cases = [] {
    auto text = bundled_file("qa_cases.json");
    if (!text) throw Error(ErrorCode::kInternal, "qa_cases.json is not bundled");
    return parse_cases(*text);
  }();
  return cases;
}

}  // namespace circugraph::eval
