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

#include <cstdint>
#include <map>
#include <string_view>

#include "kg/decimal.hpp"
#include "kg/ontology.hpp"
#include "kg/triple_store.hpp"

namespace circugraph::kg {

struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::int64_t providers = 0;
  std::int64_t receivers = 0;
  std::int64_t resources = 0;
  // Probability that a resource carries a code of the scheme. EWC is always
  // present so every resource has at least one code.
  std::map<CodeScheme, double> coverage = {
      {CodeScheme::kHs, 0.6}, {CodeScheme::kCpa, 0.5}, {CodeScheme::kCpc, 0.2}};
  Decimal gwp_min = Decimal::from_scaled(0, 0);
  Decimal gwp_max = Decimal::from_scaled(5, 0);
};

// Throws Error(kInvalidSpec) on negative counts, coverage outside [0, 1],
// negative or inverted GWP bounds, or bounds finer than 1e-9.
TripleStore generate_synthetic(const SyntheticSpec& spec);

// JSON form: {"seed":1,"providers":10,"receivers":10,"resources":100,
//             "coverage":{"HS":0.6},"gwp_min":"0","gwp_max":"5"}
// Missing keys keep their defaults; unknown keys are an error.
SyntheticSpec parse_synthetic_spec(std::string_view json_text);

}  // namespace circugraph::kg
