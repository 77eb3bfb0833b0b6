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

namespace circugraph::llm {

// Prompt texts bundled from data/prompts/<name>.txt. Lines starting with
// "#" are comments and are dropped. Throws Error(kConfig) for unknown names.
std::string prompt_text(std::string_view name);

// Replaces every {{key}} in `text`; unknown keys are left untouched.
std::string render(std::string text, const std::map<std::string, std::string>& values);

}  // namespace circugraph::llm
