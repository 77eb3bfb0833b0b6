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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "kg/term.hpp"

namespace circugraph::kg {

enum class EntityKind { kProvider, kReceiver, kResource };

std::string_view kind_name(EntityKind kind);  // "Provider", ...
std::optional<EntityKind> parse_kind(std::string_view name);  // case-insensitive
Iri kind_iri(EntityKind kind);                                 // iskg:Provider, ...
std::optional<EntityKind> kind_from_iri(const Iri& iri);

enum class CodeScheme { kEwc, kNace, kIsic, kSsic, kWz, kCpa, kHs, kCpc };

inline constexpr std::array<CodeScheme, 8> kAllSchemes = {
    CodeScheme::kEwc, CodeScheme::kNace, CodeScheme::kIsic, CodeScheme::kSsic,
    CodeScheme::kWz,  CodeScheme::kCpa,  CodeScheme::kHs,   CodeScheme::kCpc};

std::string_view scheme_name(CodeScheme scheme);  // "EWC", "NACE", ...
std::optional<CodeScheme> parse_scheme(std::string_view name);  // case-insensitive
std::size_t scheme_digits(CodeScheme scheme);
Iri scheme_predicate(CodeScheme scheme);  // iskg:hasEwcCode, ...
std::optional<CodeScheme> scheme_from_predicate(const Iri& predicate);

struct ClassificationCode {
  CodeScheme scheme;
  std::string value;

  // Throws Error(kInvalidArgument) when `value` fails the scheme's format rule.
  static ClassificationCode make(CodeScheme scheme, std::string value);
  friend bool operator==(const ClassificationCode&, const ClassificationCode&) = default;
};

// All digits and exactly scheme_digits(scheme) long.
bool valid_code(CodeScheme scheme, std::string_view value);

// Vocabulary used by the graph schema.
namespace vocab {
Iri kind();        // iskg:kind, the single typing predicate
Iri label();       // rdfs:label
Iri gwp100();      // iskg:hasGwp100
Iri category();    // iskg:hasCategory
Iri provider();    // iskg:hasProvider (resource -> activity)
Iri receiver();    // iskg:hasReceiver (resource -> activity)
Iri resource();    // iskg:hasResource (activity -> resource)
}  // namespace vocab

}  // namespace circugraph::kg
