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

#include "kg/triple_store.hpp"
#include "llm/llm.hpp"

namespace circugraph::eval {

// Scripted LLM behaviour for the bundled cases on the fixture graph. The
// bundled files data/mock/fuzzy.json and data/mock/variant.json are the
// output of these builders (see tools/mockgen.cpp); tests keep them equal.

// Query drafts for fuzzy-template matching: cases 1 to 4 are drafted
// correctly, cases 5 and 6 miss a hop.
llm::MockScript build_fuzzy_script(const kg::TripleStore& fixture);

// Merge plans for the LLM planner: per case, the right plan for rounds
// 0 to 2 and a different plan in rounds 3 and 4.
llm::MockScript build_variant_script(const kg::TripleStore& fixture);

}  // namespace circugraph::eval
