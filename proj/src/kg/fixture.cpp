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

#include "kg/fixture.hpp"

#include <string>
#include <vector>

#include "kg/ontology.hpp"
#include "kg/validate.hpp"

namespace circugraph::kg {

namespace {

struct CodeSpec {
  CodeScheme scheme;
  const char* value;
};

struct NodeSpec {
  const char* local;
  EntityKind kind;
  const char* label;
  const char* gwp100;
  const char* category;  // nullptr: none
  std::vector<CodeSpec> codes;
};

struct FlowSpec {
  const char* resource;
  std::vector<const char*> providers;
  std::vector<const char*> receivers;
};

Iri node(const char* local) { return Iri::absolute(std::string(kIskgNamespace) + local); }

const std::vector<NodeSpec>& nodes() {
  using K = EntityKind;
  using S = CodeScheme;
  static const std::vector<NodeSpec> kNodes = {
      // Resources
      {"res_waste_paint", K::kResource, "Waste paint", "0.215", "Paint and varnish wastes",
       {{S::kEwc, "080121"}, {S::kHs, "810330"}}},
      {"res_waste_varnish", K::kResource, "Waste varnish", "0.198", "Paint and varnish wastes",
       {{S::kEwc, "080121"}, {S::kHs, "320890"}}},
      {"res_tungsten_powder", K::kResource, "Waste tungsten powder", "1.74", "Metal wastes",
       {{S::kHs, "810330"}, {S::kEwc, "120104"}}},
      {"res_waste_cement", K::kResource, "Waste cement", "0.0913", "Pellets of municipal waste",
       {{S::kCpa, "382150"}, {S::kEwc, "101314"}}},
      {"res_waste_concrete", K::kResource, "Waste concrete", "0.0087", "Pellets of municipal waste",
       {{S::kCpa, "382150"}, {S::kEwc, "170101"}}},
      {"res_cement_slurry", K::kResource, "Cement slurry", "0.0442", "Mineral sludges",
       {{S::kEwc, "101313"}, {S::kCpa, "239510"}}},
      {"res_ps_residue", K::kResource, "Polystyrene incineration residue", "0.0321",
       "Incineration residues", {{S::kEwc, "190112"}}},
      {"res_mixed_ps", K::kResource, "Mixed polystyrene waste", "0.0612", "Plastic wastes",
       {{S::kEwc, "200139"}, {S::kHs, "391520"}}},
      {"res_concrete_fines", K::kResource, "Concrete fines", "0.0054", "Construction and demolition wastes",
       {{S::kEwc, "170107"}}},
      {"res_plastic_production_waste", K::kResource, "Plastic production waste", "0.0735",
       "Plastic wastes", {{S::kEwc, "070213"}, {S::kHs, "391590"}}},
      {"res_aluminium_scrap", K::kResource, "Aluminium scrap", "0.412", "Metal wastes",
       {{S::kEwc, "120103"}, {S::kHs, "760200"}}},
      {"res_waste_polyurethane", K::kResource, "Waste polyurethane", "0.0829",
       "Construction and demolition wastes", {{S::kEwc, "170604"}}},
      // Activities
      {"act_A01", K::kProvider, "Municipal incineration of waste polyethylene", "0.000731", nullptr,
       {{S::kNace, "3821"}, {S::kIsic, "3821"}}},
      {"act_A02", K::kProvider, "Cement grinding", "0.000512", nullptr, {{S::kNace, "3822"}}},
      {"act_A03", K::kProvider, "Sorting of construction waste", "0.000944", nullptr,
       {{S::kNace, "3821"}}},
      {"act_X5", K::kReceiver, "treatment of waste polystyrene terephthalate, municipal incineration",
       "0.00321", nullptr, {{S::kNace, "3832"}}},
      {"act_Y5", K::kReceiver, "Clinker production", "0.812", nullptr, {{S::kNace, "2351"}}},
      {"act_M", K::kReceiver, "market for waste polystyrene", "0", nullptr, {{S::kNace, "4677"}}},
      {"act_Z5", K::kProvider, "Collection of municipal plastics", "0.0117", nullptr,
       {{S::kNace, "3811"}}},
      {"act_X6", K::kProvider, "treatment of wastewater from PV cell production, wastewater treatment",
       "0.0269", nullptr, {{S::kNace, "3700"}}},
      {"act_Y6", K::kProvider, "PET granulate production", "2.31", nullptr, {{S::kNace, "2016"}}},
      {"act_Z6", K::kReceiver, "Aluminium remelting", "0.537", nullptr, {{S::kNace, "2453"}}},
      {"act_R01", K::kReceiver, "Hazardous waste incineration", "0.008826959", nullptr,
       {{S::kNace, "3822"}, {S::kWz, "38220"}}},
      {"act_R02", K::kReceiver, "Hazardous waste landfill", "0.008930631", nullptr,
       {{S::kNace, "3822"}}},
      {"act_R03", K::kReceiver, "Treatment of tungsten-bearing residues", "0.0415", nullptr,
       {{S::kNace, "3822"}}},
      {"act_R04", K::kReceiver, "Inert waste landfill", "0.001234567", nullptr,
       {{S::kNace, "3821"}, {S::kSsic, "38210"}}},
      {"act_paint_production", K::kProvider, "Paint production", "1.12", nullptr,
       {{S::kNace, "2030"}}},
      {"act_metal_working", K::kProvider, "Metal working", "0.944", nullptr,
       {{S::kNace, "2550"}, {S::kCpc, "89200"}}},
  };
  return kNodes;
}

const std::vector<FlowSpec>& flows() {
  static const std::vector<FlowSpec> kFlows = {
      {"res_waste_paint", {"act_paint_production"}, {"act_R01"}},
      {"res_waste_varnish", {"act_paint_production"}, {"act_R02"}},
      {"res_tungsten_powder", {"act_metal_working"}, {"act_R03"}},
      {"res_waste_cement", {"act_A01", "act_A02"}, {"act_X5"}},
      {"res_waste_concrete", {"act_A03"}, {"act_Y5"}},
      {"res_cement_slurry", {"act_A02"}, {"act_R04"}},
      {"res_ps_residue", {"act_X5"}, {"act_M"}},
      {"res_mixed_ps", {"act_Z5"}, {"act_M"}},
      {"res_concrete_fines", {"act_Y5"}, {"act_R04"}},
      {"res_plastic_production_waste", {"act_X6", "act_Y6"}, {"act_Z5"}},
      {"res_aluminium_scrap", {"act_metal_working"}, {"act_X6", "act_Z6"}},
      {"res_waste_polyurethane", {"act_Z5"}, {"act_R04"}},
  };
  return kFlows;
}

}  // namespace

TripleStore fixture_graph() {
  std::vector<Triple> triples;
  for (const auto& n : nodes()) {
    const auto s = node(n.local);
    triples.push_back({s, vocab::kind(), kind_iri(n.kind)});
    triples.push_back({s, vocab::label(), Literal::text(n.label)});
    triples.push_back({s, vocab::gwp100(), Literal::decimal(std::string(n.gwp100))});
    if (n.category) triples.push_back({s, vocab::category(), Literal::text(n.category)});
    for (const auto& c : n.codes) {
      triples.push_back({s, scheme_predicate(c.scheme), Literal::text(c.value)});
    }
  }
  for (const auto& f : flows()) {
    const auto r = node(f.resource);
    for (const auto* p : f.providers) {
      triples.push_back({r, vocab::provider(), node(p)});
      triples.push_back({node(p), vocab::resource(), r});
    }
    for (const auto* q : f.receivers) {
      triples.push_back({r, vocab::receiver(), node(q)});
      triples.push_back({node(q), vocab::resource(), r});
    }
  }
  std::vector<SourcedTriple> sourced;
  for (const auto& t : triples) sourced.push_back({t, 0});
  validate_graph(sourced);
  return TripleStore::from_triples(triples);
}

}  // namespace circugraph::kg
