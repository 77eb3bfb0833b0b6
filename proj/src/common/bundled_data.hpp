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

#include <optional>
#include <string_view>
#include <vector>

namespace circugraph {

// Files under data/ compiled into the library at configure time, keyed by
// their path relative to data/ ("templates.catalog", "mock/fuzzy.json").
std::optional<std::string_view> bundled_file(std::string_view name);
std::vector<std::string_view> bundled_file_names();

}  // namespace circugraph
