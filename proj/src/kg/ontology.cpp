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

#include "kg/ontology.hpp"

#include <algorithm>
#include <cctype>

#include "common/error.hpp"

namespace circugraph::kg {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

struct SchemeInfo {
  CodeScheme scheme;
  std::string_view name;
  std::size_t digits;
  std::string_view predicate_local;
};

// Official digit lengths of each scheme at the level the graph stores.
constexpr std::array<SchemeInfo, 8> kSchemes = {{
    {CodeScheme::kEwc, "EWC", 6, "hasEwcCode"},
    {CodeScheme::kNace, "NACE", 4, "hasNaceCode"},
    {CodeScheme::kIsic, "ISIC", 4, "hasIsicCode"},
    {CodeScheme::kSsic, "SSIC", 5, "hasSsicCode"},
    {CodeScheme::kWz, "WZ", 5, "hasWzCode"},
    {CodeScheme::kCpa, "CPA", 6, "hasCpaCode"},
    {CodeScheme::kHs, "HS", 6, "hasHSCode"},
    {CodeScheme::kCpc, "CPC", 5, "hasCpcCode"},
}};

const SchemeInfo& info(CodeScheme s) {
  for (const auto& i : kSchemes) {
    if (i.scheme == s) return i;
  }
  throw Error(ErrorCode::kInternal, "unknown scheme");
}

Iri iskg(std::string_view local) { return Iri::absolute(std::string(kIskgNamespace) + std::string(local)); }

}  // namespace

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::kProvider: return "Provider";
    case EntityKind::kReceiver: return "Receiver";
    case EntityKind::kResource: return "Resource";
  }
  return "";
}

std::optional<EntityKind> parse_kind(std::string_view name) {
  for (auto k : {EntityKind::kProvider, EntityKind::kReceiver, EntityKind::kResource}) {
    if (iequals(name, kind_name(k))) return k;
  }
  return std::nullopt;
}

Iri kind_iri(EntityKind kind) { return iskg(kind_name(kind)); }

std::optional<EntityKind> kind_from_iri(const Iri& iri) {
  for (auto k : {EntityKind::kProvider, EntityKind::kReceiver, EntityKind::kResource}) {
    if (kind_iri(k) == iri) return k;
  }
  return std::nullopt;
}

std::string_view scheme_name(CodeScheme scheme) { return info(scheme).name; }

std::optional<CodeScheme> parse_scheme(std::string_view name) {
  for (const auto& i : kSchemes) {
    if (iequals(name, i.name)) return i.scheme;
  }
  return std::nullopt;
}

std::size_t scheme_digits(CodeScheme scheme) { return info(scheme).digits; }

Iri scheme_predicate(CodeScheme scheme) { return iskg(info(scheme).predicate_local); }

std::optional<CodeScheme> scheme_from_predicate(const Iri& predicate) {
  for (const auto& i : kSchemes) {
    if (iskg(i.predicate_local) == predicate) return i.scheme;
  }
  return std::nullopt;
}

bool valid_code(CodeScheme scheme, std::string_view value) {
  return value.size() == scheme_digits(scheme) &&
         std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

ClassificationCode ClassificationCode::make(CodeScheme scheme, std::string value) {
  if (!valid_code(scheme, value)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(scheme_name(scheme)) + " code must be " + std::to_string(scheme_digits(scheme)) +
                    " digits, got \"" + value + "\"");
  }
  return ClassificationCode{scheme, std::move(value)};
}

namespace vocab {
Iri kind() { return iskg("kind"); }
Iri label() { return Iri::absolute(std::string(kRdfsNamespace) + "label"); }
Iri gwp100() { return iskg("hasGwp100"); }
Iri category() { return iskg("hasCategory"); }
Iri provider() { return iskg("hasProvider"); }
Iri receiver() { return iskg("hasReceiver"); }
Iri resource() { return iskg("hasResource"); }
}  // namespace vocab

}  // namespace circugraph::kg
