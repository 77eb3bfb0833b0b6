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

// Regenerates the bundled mock LLM scripts under data/mock/. Run after
// changing prompts, the catalog, the lexicon or the fixture, then rebuild.
#include <fstream>
#include <iostream>

#include "eval/mock_scripts.hpp"
#include "kg/fixture.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: cgr-mockgen <data/mock directory>\n";
    return 2;
  }
  const std::string dir = argv[1];
  const auto fixture = circugraph::kg::fixture_graph();
  const std::pair<const char*, circugraph::llm::MockScript> scripts[] = {
      {"fuzzy.json", circugraph::eval::build_fuzzy_script(fixture)},
      {"variant.json", circugraph::eval::build_variant_script(fixture)},
  };
  for (const auto& [name, script] : scripts) {
    std::ofstream out(dir + "/" + name, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << dir << "/" << name << "\n";
      return 1;
    }
    out << script.to_json();
    std::cout << name << ": " << script.size() << " entries\n";
  }
  return 0;
}
