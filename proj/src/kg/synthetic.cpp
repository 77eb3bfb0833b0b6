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

#include "kg/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "common/error.hpp"
#include "kg/validate.hpp"

namespace circugraph::kg {

namespace {

constexpr int kGwpScale = 9;

// Draws from raw mt19937_64 output so results do not depend on the standard
// library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % n;
  }
  // [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }
  std::string digits(std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<char>('0' + below(10)));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

std::int64_t scaled(const Decimal& d) {
  auto text = d.fixed(kGwpScale);
  auto dot = text.find('.');
  if (dot == std::string::npos || text.size() - dot - 1 != kGwpScale) {
    throw Error(ErrorCode::kInvalidSpec, "GWP100 bound " + d.canonical() + " has more than 9 decimals");
  }
  text.erase(dot, 1);
  if (text.size() > 18) throw Error(ErrorCode::kInvalidSpec, "GWP100 bound out of range");
  return std::stoll(text);
}

constexpr std::array<const char*, 8> kMaterials = {"plastic", "glass",   "steel",  "paper",
                                                   "textile", "mineral", "timber", "solvent"};
constexpr std::array<const char*, 6> kForms = {"scrap", "sludge", "residue", "offcuts", "fines", "ash"};
constexpr std::array<const char*, 6> kProcesses = {"recycling", "incineration", "smelting",
                                                   "composting", "sorting",   "processing"};
constexpr std::array<const char*, 5> kCategories = {
    "Municipal wastes", "Construction and demolition wastes", "Metal wastes", "Plastic wastes",
    "Mineral wastes"};

Iri synthetic_iri(const char* prefix, std::int64_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%06lld", prefix, static_cast<long long>(i));
  return Iri::absolute(std::string(kIskgNamespace) + buf);
}

}  // namespace

TripleStore generate_synthetic(const SyntheticSpec& spec) {
  if (spec.providers < 0 || spec.receivers < 0 || spec.resources < 0) {
    throw Error(ErrorCode::kInvalidSpec, "entity counts must be non-negative");
  }
  for (const auto& [scheme, p] : spec.coverage) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidSpec,
                  "coverage for " + std::string(scheme_name(scheme)) + " must lie in [0, 1]");
    }
  }
  if (spec.gwp_min.negative() && !spec.gwp_min.is_zero()) {
    throw Error(ErrorCode::kInvalidSpec, "gwp_min must be non-negative");
  }
  if (spec.gwp_min > spec.gwp_max) throw Error(ErrorCode::kInvalidSpec, "gwp_min exceeds gwp_max");
  const auto lo = scaled(spec.gwp_min);
  const auto hi = scaled(spec.gwp_max);

  Draw draw(spec.seed);
  std::vector<Triple> triples;
  auto gwp = [&] { return Literal::decimal(Decimal::from_scaled(draw.between(lo, hi), kGwpScale)); };

  auto add_activity = [&](const Iri& s, EntityKind kind) {
    triples.push_back({s, vocab::kind(), kind_iri(kind)});
    std::string label = std::string(kMaterials[draw.below(kMaterials.size())]) + " " +
                        kProcesses[draw.below(kProcesses.size())] + " " +
                        (kind == EntityKind::kProvider ? "plant " : "facility ") +
                        s.value().substr(kIskgNamespace.size() + 2);
    triples.push_back({s, vocab::label(), Literal::text(std::move(label))});
    triples.push_back({s, scheme_predicate(CodeScheme::kNace), Literal::text(draw.digits(4))});
    triples.push_back({s, vocab::gwp100(), gwp()});
  };

  std::vector<Iri> providers, receivers;
  for (std::int64_t i = 0; i < spec.providers; ++i) {
    providers.push_back(synthetic_iri("p_", i));
    add_activity(providers.back(), EntityKind::kProvider);
  }
  for (std::int64_t i = 0; i < spec.receivers; ++i) {
    receivers.push_back(synthetic_iri("r_", i));
    add_activity(receivers.back(), EntityKind::kReceiver);
  }

  for (std::int64_t i = 0; i < spec.resources; ++i) {
    const auto s = synthetic_iri("m_", i);
    triples.push_back({s, vocab::kind(), kind_iri(EntityKind::kResource)});
    std::string label = std::string(kMaterials[draw.below(kMaterials.size())]) + " " +
                        kForms[draw.below(kForms.size())] + " " + std::to_string(i);
    triples.push_back({s, vocab::label(), Literal::text(std::move(label))});
    triples.push_back({s, vocab::category(), Literal::text(kCategories[draw.below(kCategories.size())])});
    triples.push_back({s, vocab::gwp100(), gwp()});
    triples.push_back({s, scheme_predicate(CodeScheme::kEwc),
                       Literal::text(draw.digits(scheme_digits(CodeScheme::kEwc)))});
    for (auto scheme : kAllSchemes) {
      if (scheme == CodeScheme::kEwc) continue;
      auto it = spec.coverage.find(scheme);
      if (it == spec.coverage.end() || !draw.chance(it->second)) continue;
      triples.push_back({s, scheme_predicate(scheme), Literal::text(draw.digits(scheme_digits(scheme)))});
    }
    auto link = [&](const std::vector<Iri>& pool, const Iri& predicate, std::uint64_t max_links) {
      if (pool.empty()) return;
      const auto n = 1 + draw.below(std::min<std::uint64_t>(max_links, pool.size()));
      for (std::uint64_t k = 0; k < n; ++k) {
        const auto& a = pool[draw.below(pool.size())];
        triples.push_back({s, predicate, a});
        triples.push_back({a, vocab::resource(), s});
      }
    };
    link(providers, vocab::provider(), 2);
    link(receivers, vocab::receiver(), 3);
  }

  auto store = TripleStore::from_triples(triples);
  validate_graph(store);
  return store;
}

SyntheticSpec parse_synthetic_spec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string("synthetic spec is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidSpec, "synthetic spec must be a JSON object");
  SyntheticSpec spec;
  auto decimal = [](const nlohmann::json& v, const char* key) {
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    auto d = Decimal::parse(text);
    if (!d) throw Error(ErrorCode::kInvalidSpec, std::string(key) + " must be a decimal");
    return *d;
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") {
        spec.seed = v.get<std::uint64_t>();
      } else if (key == "providers") {
        spec.providers = v.get<std::int64_t>();
      } else if (key == "receivers") {
        spec.receivers = v.get<std::int64_t>();
      } else if (key == "resources") {
        spec.resources = v.get<std::int64_t>();
      } else if (key == "gwp_min") {
        spec.gwp_min = decimal(v, "gwp_min");
      } else if (key == "gwp_max") {
        spec.gwp_max = decimal(v, "gwp_max");
      } else if (key == "coverage") {
        spec.coverage.clear();
        for (const auto& [name, p] : v.items()) {
          auto scheme = parse_scheme(name);
          if (!scheme) throw Error(ErrorCode::kInvalidSpec, "unknown code scheme " + name);
          spec.coverage[*scheme] = p.get<double>();
        }
      } else {
        throw Error(ErrorCode::kInvalidSpec, "unknown synthetic spec key " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string("synthetic spec: ") + e.what());
  }
  return spec;
}

}  // namespace circugraph::kg
