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

#include <gtest/gtest.h>

#include <random>

#include "common/error.hpp"
#include "kg/fixture.hpp"
#include "sparql/evaluator.hpp"
#include "sparql/results.hpp"
#include "sparql/syntax.hpp"
#include "sparql_oracle.hpp"

namespace cg = circugraph;
namespace kg = circugraph::kg;
namespace sp = circugraph::sparql;

TEST(Parse, SinglePatternQuery) {
  auto q = sp::parse_query("SELECT ?r WHERE { ?r iskg:hasEwcCode \"080121\" . }");
  ASSERT_EQ(q.select.size(), 1u);
  EXPECT_EQ(q.select[0].name, "r");
  ASSERT_EQ(q.where.triples.size(), 1u);
  EXPECT_EQ(std::get<kg::Iri>(q.where.triples[0].p), kg::Iri::make("iskg:hasEwcCode"));
  EXPECT_EQ(std::get<kg::Literal>(q.where.triples[0].o), kg::Literal::text("080121"));
}

TEST(Parse, RejectsEmptySelect) {
  try {
    sp::parse_query("SELECT WHERE {}");
    FAIL();
  } catch (const cg::SyntaxError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
}

TEST(Parse, ReportsOffsets) {
  EXPECT_THROW(sp::parse_query("SELECT ?x WHERE { ?x ?y }"), cg::SyntaxError);
  EXPECT_THROW(sp::parse_query("SELECT ?x WHERE { ?x ?y ?z } LIMIT 0"), cg::SyntaxError);
  EXPECT_THROW(sp::parse_query("SELECT ?x WHERE { ?x nope:y ?z }"), cg::SyntaxError);
  EXPECT_THROW(sp::parse_query("SELECT ?x WHERE { { ?x ?y ?z } }"), cg::SyntaxError);
  EXPECT_THROW(sp::parse_query("SELECT ?x WHERE { ?x ?y ?z } trailing"), cg::SyntaxError);
}

TEST(Parse, FullGrammar) {
  auto q = sp::parse_query(R"(
    PREFIX ex: <http://example.org/>
    select distinct ?e ?g where {
      ?res iskg:hasReceiver ?e .
      ?e iskg:hasGwp100 ?g
      { ?e ex:a "x"@en } UNION { ?e ex:b 3 . }
      FILTER(?g <= "0.5"^^xsd:decimal)
      FILTER(?e != <http://example.org/z>)
    } ORDER BY DESC(?g) LIMIT 3)");
  EXPECT_EQ(q.where.triples.size(), 2u);
  ASSERT_EQ(q.where.unions.size(), 1u);
  EXPECT_EQ(q.where.unions[0].size(), 2u);
  EXPECT_EQ(q.where.filters.size(), 2u);
  EXPECT_EQ(q.where.filters[0].op, sp::CompareOp::kLe);
  EXPECT_EQ(std::get<kg::Literal>(q.where.unions[0][1].triples[0].o), kg::Literal::decimal(std::string("3")));
  EXPECT_EQ(std::get<sp::Direction>(q.order_by->direction), sp::Direction::kDesc);
  EXPECT_EQ(*q.limit, 3u);
}

TEST(Parse, PlaceholdersInEveryPosition) {
  auto q = sp::parse_query(
      "SELECT ?e ?g WHERE { ?res %role% ?e . ?e iskg:hasNaceCode %nace% . ?e iskg:hasGwp100 ?g . } "
      "ORDER BY %direction%(?g) LIMIT 1");
  EXPECT_EQ(sp::placeholders(q), (std::set<std::string>{"direction", "nace", "role"}));
  EXPECT_NO_THROW(sp::validate(q, true));
  EXPECT_THROW(sp::validate(q), cg::Error);
}

TEST(Serialize, RoundTripsRandomQueries) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto g = cg::testing::random_graph(rng, 5);
    auto q = cg::testing::random_query(rng, g);
    for (auto layout : {sp::Layout::kPretty, sp::Layout::kCompact}) {
      auto text = sp::serialize(q, layout);
      ASSERT_EQ(sp::parse_query(text), q) << text;
    }
  }
}

TEST(Serialize, EscapesAndPlaceholdersSurvive) {
  sp::Query q;
  q.select = {sp::Var{"x"}};
  q.where.triples.push_back({sp::Var{"x"}, kg::Iri::absolute("http://example.org/odd#p"),
                             kg::Literal::text("say \"hi\"\n\tback\\slash")});
  q.where.triples.push_back({sp::Var{"x"}, sp::Placeholder{"pred"}, kg::Literal::decimal(std::string("-.5"))});
  q.order_by = sp::OrderBy{sp::Var{"x"}, sp::Placeholder{"dir"}};
  EXPECT_EQ(sp::parse_query(sp::serialize(q)), q);
}

TEST(Validate, CatchesUnboundAndTypeErrors) {
  auto expect_code = [](const char* text, cg::ErrorCode code) {
    try {
      sp::validate(sp::parse_query(text));
      FAIL() << text;
    } catch (const cg::Error& e) {
      EXPECT_EQ(e.code(), code) << text;
    }
  };
  expect_code("SELECT ?z WHERE { ?x ?y ?w }", cg::ErrorCode::kUnboundVariable);
  expect_code("SELECT ?x WHERE { ?x ?y ?w FILTER(?q = 1) }", cg::ErrorCode::kUnboundVariable);
  expect_code("SELECT ?x WHERE { { ?x ?y ?w } UNION { ?v ?y ?w } }", cg::ErrorCode::kUnboundVariable);
  expect_code("SELECT ?x WHERE { ?x ?y ?w } ORDER BY ASC(?q)", cg::ErrorCode::kUnboundVariable);
  expect_code("SELECT ?x WHERE { ?x ?y ?w FILTER(?w < \"abc\") }", cg::ErrorCode::kTypeMismatch);
}

TEST(Evaluate, CaseOneConjunctionOnFixture) {
  const auto store = kg::fixture_graph();
  auto q = sp::parse_query(
      "SELECT ?r WHERE { ?r iskg:hasEwcCode \"080121\" . ?r iskg:hasHSCode \"810330\" . }");
  auto rs = sp::evaluate(q, store);
  ASSERT_EQ(rs.rows.size(), 1u);
  EXPECT_EQ(store.label_of(std::get<kg::Iri>(rs.rows[0][0])), "Waste paint");
}

TEST(Evaluate, EmptyStoreGivesNoRows) {
  kg::TripleStore empty;
  auto rs = sp::evaluate(sp::parse_query("SELECT ?s WHERE { ?s ?p ?o }"), empty);
  EXPECT_EQ(rs.columns, std::vector<std::string>{"s"});
  EXPECT_TRUE(rs.rows.empty());
}

TEST(Evaluate, OrdersDecimalsNumericallyAndLimitIsAPrefix) {
  const auto store = kg::fixture_graph();
  auto all = sp::evaluate(sp::parse_query("SELECT ?e ?g WHERE { ?e iskg:hasGwp100 ?g } ORDER BY ASC(?g)"), store);
  ASSERT_GT(all.rows.size(), 10u);
  for (std::size_t i = 1; i < all.rows.size(); ++i) {
    const auto& a = *std::get<kg::Literal>(all.rows[i - 1][1]).numeric();
    const auto& b = *std::get<kg::Literal>(all.rows[i][1]).numeric();
    EXPECT_LE(a, b);
    if (a == b) EXPECT_LT(std::get<kg::Iri>(all.rows[i - 1][0]).value(), std::get<kg::Iri>(all.rows[i][0]).value());
  }
  for (std::uint64_t k : {1u, 3u, 1000u}) {
    auto q = sp::parse_query("SELECT ?e ?g WHERE { ?e iskg:hasGwp100 ?g } ORDER BY ASC(?g) LIMIT " + std::to_string(k));
    auto lim = sp::evaluate(q, store);
    ASSERT_EQ(lim.rows.size(), std::min<std::size_t>(k, all.rows.size()));
    EXPECT_TRUE(std::equal(lim.rows.begin(), lim.rows.end(), all.rows.begin()));
  }
}

TEST(Evaluate, UnionIsDeduplicatedSetUnion) {
  const auto store = kg::fixture_graph();
  auto a = sp::evaluate(sp::parse_query("SELECT ?r WHERE { ?r iskg:hasEwcCode \"080121\" }"), store);
  auto both = sp::evaluate(
      sp::parse_query("SELECT ?r WHERE { { ?r iskg:hasEwcCode \"080121\" } UNION { ?r iskg:hasEwcCode \"080121\" } }"),
      store);
  EXPECT_EQ(a, both);
}

TEST(Evaluate, NumericFilterSkipsNonDecimals) {
  auto t = [](const char* s, const char* p, kg::Term o) { return kg::Triple{kg::Iri::make(s), kg::Iri::make(p), o}; };
  auto store = kg::TripleStore::from_triples({t("iskg:a", "iskg:v", kg::Literal::decimal(std::string("2"))),
                                              t("iskg:b", "iskg:v", kg::Literal::text("2")),
                                              t("iskg:c", "iskg:v", kg::Literal::decimal(std::string("2.0")))});
  auto rs = sp::evaluate(sp::parse_query("SELECT ?s WHERE { ?s iskg:v ?v FILTER(?v >= 2) }"), store);
  EXPECT_EQ(rs.rows.size(), 2u);
  auto eq = sp::evaluate(sp::parse_query("SELECT ?s WHERE { ?s iskg:v ?v FILTER(?v = 2) }"), store);
  EXPECT_EQ(eq.rows.size(), 2u);
  auto text = sp::evaluate(sp::parse_query("SELECT ?s WHERE { ?s iskg:v ?v FILTER(?v = \"2\") }"), store);
  EXPECT_EQ(text.rows.size(), 1u);
}

TEST(Evaluate, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto g = cg::testing::random_graph(rng, 500);
    auto q = cg::testing::random_query(rng, g);
    auto got = sp::evaluate(q, g.store);
    auto want = cg::testing::nested_loop_evaluate(q, g.store);
    ASSERT_EQ(got, want) << sp::serialize(q);
  }
}

TEST(ResultsJson, RoundTrips) {
  const auto store = kg::fixture_graph();
  auto rs = sp::evaluate(sp::parse_query("SELECT ?e ?l ?g WHERE { ?e rdfs:label ?l . ?e iskg:hasGwp100 ?g }"), store);
  EXPECT_EQ(sp::from_sparql_json(sp::to_sparql_json(rs)), rs);
  EXPECT_THROW(sp::from_sparql_json("<html>"), cg::Error);
  EXPECT_THROW(sp::from_sparql_json("{\"head\":{}}"), cg::Error);
}
