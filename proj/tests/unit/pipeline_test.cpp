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

#include <algorithm>
#include <future>
#include <random>
#include <regex>

#include <json.hpp>

#include "common/error.hpp"
#include "common/tokens.hpp"
#include "eval/cases.hpp"
#include "eval/mock_scripts.hpp"
#include "kg/fixture.hpp"
#include "llm/llm.hpp"
#include "llm/prompts.hpp"
#include "pipeline/pipeline.hpp"

namespace cg = circugraph;
namespace kg = circugraph::kg;
namespace pl = circugraph::pipeline;
namespace llm = circugraph::llm;
namespace sp = circugraph::sparql;
using nlohmann::json;

namespace {

std::shared_ptr<const kg::TripleStore> fixture() {
  static auto s = std::make_shared<const kg::TripleStore>(kg::fixture_graph());
  return s;
}

pl::Pipeline make(std::shared_ptr<const llm::Provider> provider = nullptr) {
  pl::PipelineResources r;
  r.store = fixture();
  r.llm = std::move(provider);
  r.clock = pl::tick_clock_factory();
  return pl::Pipeline(std::move(r));
}

const std::vector<cg::eval::QaCase>& cases() {
  static auto c = cg::eval::bundled_cases();
  return c;
}

sp::ResultSet gwp_rows(const std::vector<std::string>& gwps) {
  sp::ResultSet rs;
  rs.columns = {"e", "gwp"};
  for (std::size_t i = 0; i < gwps.size(); ++i) {
    rs.rows.push_back({kg::Iri::absolute("http://x.test/e" + std::to_string(i)), kg::Literal::decimal(gwps[i])});
  }
  return rs;
}

std::shared_ptr<const llm::Provider> scripted(const std::string& system_prompt, const std::string& user,
                                              const std::string& reply) {
  auto s = std::make_shared<llm::MockScript>();
  s->add(llm::prompt_hash(llm::prompt_text(system_prompt), user), {{reply}, 0, 0});
  return std::make_shared<llm::MockProvider>(s);
}

}  // namespace

TEST(RankByGwp, WorkedExample) {
  auto rs = gwp_rows({"0.3", "0.1", "0.2"});
  auto top = pl::rank_by_gwp100(rs, 1, 0, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].gwp100, "0.1");
  EXPECT_EQ(top[1].gwp100, "0.2");
  EXPECT_EQ(pl::rank_by_gwp100(rs, 1, 0, 10).size(), 3u);
  EXPECT_THROW(pl::rank_by_gwp100(rs, 1, 0, 0), cg::Error);
}

TEST(RankByGwp, MatchesSortOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng() % 12;
    std::vector<std::string> gwps;
    for (std::size_t i = 0; i < n; ++i) {
      // Few distinct values so ties are common; mixed spellings of one value.
      const int cents = static_cast<int>(rng() % 6);
      std::string v = std::to_string(cents / 2) + "." + std::to_string(cents % 2 * 5);
      if (rng() % 3 == 0) v += "0";
      gwps.push_back(v);
    }
    auto rs = gwp_rows(gwps);
    const std::size_t k = 1 + rng() % 6;
    auto got = pl::rank_by_gwp100(rs, 1, 0, k);

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double x = std::stod(gwps[a]), y = std::stod(gwps[b]);
      if (x != y) return x < y;
      return kg::Iri::absolute("http://x.test/e" + std::to_string(a)).value() <
             kg::Iri::absolute("http://x.test/e" + std::to_string(b)).value();
    });
    ASSERT_EQ(got.size(), std::min(k, n));
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].entity, "http://x.test/e" + std::to_string(idx[i]));
      EXPECT_EQ(got[i].gwp100, gwps[idx[i]]);
    }
    for (std::size_t i = 1; i < got.size(); ++i) EXPECT_LE(std::stod(got[i - 1].gwp100), std::stod(got[i].gwp100));
  }
}

TEST(RankByGwp, NonDecimalCellsAreSkipped) {
  auto rs = gwp_rows({"0.3", "0.1"});
  rs.rows.push_back({kg::Iri::absolute("http://x.test/z"), kg::Literal::text("n/a")});
  EXPECT_EQ(pl::rank_by_gwp100(rs, 1, 0, 5).size(), 2u);
}

TEST(CountTokens, Basics) {
  EXPECT_EQ(cg::count_tokens(""), 0u);
  EXPECT_EQ(cg::count_tokens("   \n\t"), 0u);
  EXPECT_EQ(cg::count_tokens("waste paint"), 2u);
  EXPECT_EQ(cg::count_tokens("  a\tb\nc  "), 3u);
  std::mt19937 rng(3);
  std::string s;
  std::size_t prev = 0;
  for (int i = 0; i < 200; ++i) {
    s += " \tab\n"[rng() % 5];
    auto n = cg::count_tokens(s);
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Usage, TotalIsSumOfStages) {
  pl::UsageRecord u;
  u.add_tokens(pl::Stage::kTm, 3, 4);
  u.add_tokens(pl::Stage::kQm, 5, 6);
  u.add_tokens(pl::Stage::kQrc, 7, 8);
  u.add_wall(pl::Stage::kQm, std::chrono::microseconds(10));
  u.add_wall(pl::Stage::kQrc, std::chrono::microseconds(5));
  EXPECT_EQ(u.total().input_tokens, 15u);
  EXPECT_EQ(u.total().output_tokens, 18u);
  EXPECT_EQ(u.total().wall.count(), 15);
}

TEST(Pipeline, AnswersAllSixCases) {
  auto p = make();
  pl::PipelineConfig cfg;
  for (const auto& c : cases()) {
    auto o = p.answer(c.question, cfg);
    EXPECT_TRUE(o.answer.grounded) << c.id;
    EXPECT_EQ(o.answer.text, c.reference.find('"') == std::string::npos ? c.reference : o.answer.text) << c.id;
    EXPECT_TRUE(pl::grounding_violations(o.answer.text, o.answer.provenance.rows).empty()) << c.id;
    EXPECT_GT(o.graph_reads, 0u);
    EXPECT_FALSE(o.answer.provenance.template_ids.empty());
  }
  EXPECT_EQ(p.answer(cases()[1].question, cfg).answer.text, "Municipal incineration of waste polyethylene");
  EXPECT_EQ(p.answer(cases()[3].question, cfg).answer.text, "382150; Pellets of municipal waste");
}

TEST(Pipeline, MinimumGwpQuestionUsesRanking) {
  auto o = make().answer(cases()[2].question, pl::PipelineConfig{});
  EXPECT_EQ(o.answer.text, "0.008826959");
  ASSERT_FALSE(o.answer.ranking.empty());
  EXPECT_EQ(o.answer.ranking.front().gwp100, "0.008826959");
  EXPECT_LE(o.answer.ranking.size(), 5u);
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  auto p = make();
  pl::PipelineConfig cfg;
  for (const auto& c : cases()) {
    const auto first = pl::run_log_record(c.question, cfg, p.answer(c.question, cfg));
    for (int i = 0; i < 4; ++i) EXPECT_EQ(pl::run_log_record(c.question, cfg, p.answer(c.question, cfg)), first);
  }
  std::vector<std::future<std::string>> jobs;
  for (int i = 0; i < 12; ++i) {
    jobs.push_back(std::async(std::launch::async, [&p, &cfg, i] {
      return p.answer(cases()[i % 6].question, cfg).answer.text;
    }));
  }
  for (int i = 0; i < 12; ++i) EXPECT_EQ(jobs[i].get(), p.answer(cases()[i % 6].question, cfg).answer.text);
}

TEST(Pipeline, UnmatchedQuestionFallsBackWithoutNumbers) {
  auto p = make();
  for (const std::string q : {"hello", "What is the GWP100 of unobtainium?", "Find the resource coded with EWC code 999999."}) {
    auto o = p.answer(q, pl::PipelineConfig{});
    EXPECT_FALSE(o.answer.grounded) << q;
    EXPECT_EQ(o.answer.text, std::string(pl::kFallbackNotice)) << q;
    EXPECT_FALSE(std::regex_search(o.answer.text, std::regex("[0-9]+\\.[0-9]+"))) << q;
    EXPECT_TRUE(o.answer.ranking.empty());
    EXPECT_FALSE(o.diagnostic.empty());
  }
}

TEST(Pipeline, NoTemplateWithoutLlmFallsBack) {
  pl::PipelineConfig cfg;
  cfg.matcher_mode = cg::retrieval::MatchMode::kNoTemplate;
  auto o = make().answer(cases()[0].question, cfg);
  EXPECT_FALSE(o.answer.grounded);
}

TEST(Pipeline, FuzzyDraftsUseTokensAndStayGrounded) {
  auto script = std::make_shared<llm::MockScript>(llm::MockScript::bundled("fuzzy"));
  auto p = make(std::make_shared<llm::MockProvider>(script));
  pl::PipelineConfig cfg;
  cfg.matcher_mode = cg::retrieval::MatchMode::kFuzzyTemplate;
  for (const auto& c : cases()) {
    auto o = p.answer(c.question, cfg);
    const auto total = o.usage.total();
    std::size_t in = 0, outt = 0;
    for (auto s : pl::kStages) {
      in += o.usage.stage(s).input_tokens;
      outt += o.usage.stage(s).output_tokens;
    }
    EXPECT_EQ(total.input_tokens, in);
    EXPECT_EQ(total.output_tokens, outt);
    EXPECT_GT(total.input_tokens, 0u) << c.id;
    if (o.answer.grounded) EXPECT_TRUE(pl::grounding_violations(o.answer.text, o.answer.provenance.rows).empty());
  }
}

TEST(Pipeline, StandaloneBaselineNeverReadsTheGraph) {
  const auto q = cases()[2].question;
  auto p = make(scripted("standalone", "Question: " + q, R"({"answer": "About 0.5 kg CO2e per kg."})"));
  pl::PipelineConfig cfg;
  cfg.baseline = pl::Baseline::kStandaloneLlm;
  const auto before = fixture()->read_count();
  auto o = p.answer(q, cfg);
  EXPECT_EQ(fixture()->read_count(), before);
  EXPECT_EQ(o.graph_reads, 0u);
  EXPECT_FALSE(o.answer.grounded);
  EXPECT_EQ(o.answer.text.rfind(std::string(pl::kFallbackNotice), 0), 0u);
  EXPECT_EQ(o.answer.text.find("0.5"), std::string::npos);
  EXPECT_GT(o.usage.stage(pl::Stage::kQrc).input_tokens, 0u);
}

TEST(Pipeline, StandaloneWithoutLlmIsConfigError) {
  pl::PipelineConfig cfg;
  cfg.baseline = pl::Baseline::kStandaloneLlm;
  try {
    make().answer("x", cfg);
    FAIL();
  } catch (const cg::Error& e) {
    EXPECT_EQ(e.code(), cg::ErrorCode::kConfig);
  }
}

TEST(Pipeline, LlmComposerIsAudited) {
  const auto& c = cases()[0];
  pl::PipelineConfig cfg;
  cfg.composer = pl::ComposerKind::kLlm;
  auto base = make().answer(c.question, pl::PipelineConfig{});
  const auto user = "Question: " + c.question + "\nRows:\n" + sp::to_table(base.answer.provenance.rows);

  auto good = make(scripted("compose", user, R"({"answer": "Waste paint"})")).answer(c.question, cfg);
  EXPECT_TRUE(good.answer.grounded);
  EXPECT_EQ(good.answer.text, "Waste paint");

  auto bad = make(scripted("compose", user, R"({"answer": "Waste paint; 12.5 kg"})")).answer(c.question, cfg);
  EXPECT_FALSE(bad.answer.grounded);
  EXPECT_EQ(bad.answer.text, std::string(pl::kFallbackNotice));
}

TEST(Pipeline, NaiveRagIsDeterministic) {
  auto p = make();
  pl::PipelineConfig cfg;
  cfg.baseline = pl::Baseline::kNaiveRag;
  for (const auto& c : cases()) {
    auto a = p.answer(c.question, cfg);
    EXPECT_EQ(a.answer.text, p.answer(c.question, cfg).answer.text);
    EXPECT_FALSE(a.answer.text.empty());
  }
}

TEST(Grounding, DetectsInventedContent) {
  auto rs = gwp_rows({"0.3"});
  rs.columns.push_back("label");
  rs.rows[0].push_back(kg::Literal::text("Waste paint"));
  EXPECT_TRUE(pl::grounding_violations("Waste paint", rs).empty());
  EXPECT_TRUE(pl::grounding_violations("0.3; Waste paint", rs).empty());
  EXPECT_FALSE(pl::grounding_violations("Waste glue", rs).empty());
  EXPECT_FALSE(pl::grounding_violations("Waste paint; 0.4", rs).empty());
  EXPECT_EQ(pl::redact_decimals("about 0.35 or 2 units"), "about [value withheld] or 2 units");
}

TEST(PipelineConfig, OverridesAndValidation) {
  pl::PipelineConfig base;
  auto c = base.with_overrides(json{{"top_k_answers", 2}, {"composer", "llm"}, {"matcher_mode", "fuzzy-template"}});
  EXPECT_EQ(c.top_k_answers, 2u);
  EXPECT_EQ(c.composer, pl::ComposerKind::kLlm);
  EXPECT_EQ(c.matcher_mode, cg::retrieval::MatchMode::kFuzzyTemplate);
  EXPECT_EQ(base.with_overrides(base.to_json()).to_json(), base.to_json());
  for (const auto& bad : {json{{"nope", 1}}, json{{"top_k_answers", 0}}, json{{"composer", "oracle"}},
                          json{{"top_k_answers", "five"}}}) {
    try {
      base.with_overrides(bad);
      ADD_FAILURE() << bad.dump();
    } catch (const cg::Error& e) {
      EXPECT_EQ(e.code(), cg::ErrorCode::kConfig) << bad.dump();
    }
  }
}

TEST(RunLog, SingleLineRecord) {
  pl::PipelineConfig cfg;
  auto o = make().answer(cases()[0].question, cfg);
  auto line = pl::run_log_record(cases()[0].question, cfg, o);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto j = json::parse(line);
  EXPECT_EQ(j["schema"], "circugraph.run/1");
  EXPECT_EQ(j["answer"], "Waste paint");
  EXPECT_TRUE(j["usage"].contains("total"));
  auto no_wall = json::parse(pl::run_log_record(cases()[0].question, cfg, o, false));
  EXPECT_FALSE(no_wall["usage"]["total"].contains("wall_us"));
}
