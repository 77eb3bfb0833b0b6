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

#include "llm/prompts.hpp"

#include "common/bundled_data.hpp"
#include "common/error.hpp"

namespace circugraph::llm {

std::string prompt_text(std::string_view name) {
  const auto file = "prompts/" + std::string(name) + ".txt";
  auto raw = bundled_file(file);
  if (!raw) throw Error(ErrorCode::kConfig, "no prompt named " + std::string(name));
  std::string out;
  std::size_t pos = 0;
  while (pos < raw->size()) {
    auto nl = raw->find('\n', pos);
    if (nl == std::string_view::npos) nl = raw->size();
    auto line = raw->substr(pos, nl - pos);
    if (line.empty() || line[0] != '#') {
      out.append(line);
      out.push_back('\n');
    }
    pos = nl + 1;
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string render(std::string text, const std::map<std::string, std::string>& values) {
  for (const auto& [k, v] : values) {
    const auto marker = "{{" + k + "}}";
    for (auto at = text.find(marker); at != std::string::npos; at = text.find(marker, at + v.size())) {
      text.replace(at, marker.size(), v);
    }
  }
  return text;
}

}  // namespace circugraph::llm
