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

#include <cmath>
#include <map>
#include <random>

#include "common/error.hpp"
#include "eval/benchmark.hpp"
#include "eval/cases.hpp"
#include "eval/metrics.hpp"
#include "eval/mock_scripts.hpp"
#include "kg/fixture.hpp"
#include "llm/llm.hpp"
#include "pipeline/pipeline.hpp"

namespace cg = circugraph;
namespace ev = circugraph::eval;
namespace pl = circugraph::pipeline;
namespace llm = circugraph::llm;

namespace {

std::size_t lcs_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b, std::size_t i,
                       std::size_t j, std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (i == a.size() || j == b.size()) return 0;
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::size_t v = a[i] == b[j] ? 1 + lcs_oracle(a, b, i + 1, j + 1, memo)
                               : std::max(lcs_oracle(a, b, i + 1, j, memo), lcs_oracle(a, b, i, j + 1, memo));
  return memo[key] = v;
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len, int vocab) {
  std::vector<std::string> v(rng() % (max_len + 1));
  for (auto& t : v) t = "w" + std::to_string(rng() % vocab);
  return v;
}

// Fixed 3-d vectors per token; "z" is the zero vector.
class TableEmbedder final : public ev::TokenEmbedder {
 public:
  cg::retrieval::EmbeddingVector embed(const std::string& token) const override {
    if (token == "z") return {{0, 0, 0}};
    const int h = token.back() - '0';
    return {{static_cast<float>(h % 3 + 1), static_cast<float>((h * 7) % 5), static_cast<float>(h % 2)}};
  }
};

double cos_oracle(const std::vector<float>& a, const std::vector<float>& b) {
  long double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0;
  return static_cast<double>(ab / std::sqrt(aa * bb));
}

double bert_oracle(const std::vector<std::string>& c, const std::vector<std::string>& r, const ev::TokenEmbedder& e) {
  long double p = 0, q = 0;
  for (const auto& x : c) {
    double best = -2;
    for (const auto& y : r) best = std::max(best, cos_oracle(e.embed(x).components, e.embed(y).components));
    p += best;
  }
  for (const auto& y : r) {
    double best = -2;
    for (const auto& x : c) best = std::max(best, cos_oracle(e.embed(x).components, e.embed(y).components));
    q += best;
  }
  return static_cast<double>((p / c.size() + q / r.size()) / 2);
}

}  // namespace

TEST(Rouge, WorkedExample) {
  auto r = ev::rouge_l("the cat sat", "the cat");
  EXPECT_NEAR(r.precision, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.recall, 1.0, 1e-12);
  EXPECT_NEAR(r.f1, 0.8, 1e-12);
  auto same = ev::rouge_l("Waste paint", "waste paint");
  EXPECT_DOUBLE_EQ(same.f1, 1.0);
  auto none = ev::rouge_l("alpha", "beta");
  EXPECT_DOUBLE_EQ(none.f1, 0.0);
  auto empty = ev::rouge_l("", "beta");
  EXPECT_DOUBLE_EQ(empty.precision, 0.0);
  EXPECT_DOUBLE_EQ(empty.recall, 0.0);
  EXPECT_DOUBLE_EQ(empty.f1, 0.0);
}

TEST(Rouge, MatchesRecursiveOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = random_tokens(rng, 14, 5), b = random_tokens(rng, 14, 5);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
    const auto l = lcs_oracle(a, b, 0, 0, memo);
    ASSERT_EQ(ev::lcs_length(a, b), l);
    auto r = ev::rouge_l(a, b);
    const double p = a.empty() ? 0 : double(l) / a.size(), rc = b.empty() ? 0 : double(l) / b.size();
    const double f = (p + rc) == 0 ? 0 : 2 * p * rc / (p + rc);
    EXPECT_NEAR(r.precision, p, 1e-12);
    EXPECT_NEAR(r.recall, rc, 1e-12);
    EXPECT_NEAR(r.f1, f, 1e-12);
    // Swapping sides swaps precision and recall.
    auto s = ev::rouge_l(b, a);
    EXPECT_NEAR(s.precision, r.recall, 1e-12);
    EXPECT_NEAR(s.recall, r.precision, 1e-12);
    EXPECT_NEAR(s.f1, r.f1, 1e-12);
    EXPECT_GE(r.f1, 0.0);
    EXPECT_LE(r.f1, 1.0);
  }
}

TEST(Tokenize, LowercasesAndSplitsPunctuation) {
  EXPECT_EQ(ev::tokenize("Pellets, of  MUNICIPAL waste."),
            (std::vector<std::string>{"pellets", "of", "municipal", "waste"}));
  EXPECT_EQ(ev::tokenize("382150; \"Pellets\""), (std::vector<std::string>{"382150", "pellets"}));
  EXPECT_TRUE(ev::tokenize(" ,; ").empty());
}

TEST(ExactMatch, Invariances) {
  EXPECT_EQ(ev::exact_match("Waste paint", "waste paint"), 1);
  EXPECT_EQ(ev::exact_match("  Waste   paint. ", "waste paint"), 1);
  EXPECT_EQ(ev::exact_match("The waste paint", "waste paint"), 1);
  EXPECT_EQ(ev::exact_match("382150; Pellets of municipal waste", "382150; \"Pellets of municipal waste\""), 1);
  EXPECT_EQ(ev::exact_match("Waste glue", "waste paint"), 0);
  EXPECT_EQ(ev::exact_match("0.008826959", "0.008826960"), 0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto toks = random_tokens(rng, 6, 9);
    std::string s, noisy;
    for (const auto& t : toks) {
      s += t + " ";
      noisy += (rng() % 2 ? "  " : " ") + (rng() % 2 ? t : std::string(1, char(std::toupper(t[0]))) + t.substr(1));
      if (rng() % 4 == 0) noisy += ",";
    }
    EXPECT_EQ(ev::exact_match(noisy, s), 1) << noisy << " | " << s;
    EXPECT_EQ(ev::exact_match(s, noisy), 1);
  }
}

TEST(BertStyle, MatchesBruteForce) {
  TableEmbedder table;
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    auto c = random_tokens(rng, 8, 10), r = random_tokens(rng, 8, 10);
    if (rng() % 5 == 0) c.push_back("z");
    if (c.empty() || r.empty()) continue;
    EXPECT_NEAR(ev::bert_style_score(c, r, table), bert_oracle(c, r, table), 1e-9);
  }
}

TEST(BertStyle, DefaultEmbedderProperties) {
  const auto a = ev::tokenize("pellets of municipal waste");
  EXPECT_NEAR(ev::bert_style_score(a, a), 1.0, 1e-9);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto c = random_tokens(rng, 6, 30), r = random_tokens(rng, 6, 30);
    if (c.empty() || r.empty()) continue;
    const double s = ev::bert_style_score(c, r);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0 + 1e-9);
    EXPECT_NEAR(s, ev::bert_style_score(r, c), 1e-12);
  }
  try {
    ev::bert_style_score({}, a);
    FAIL();
  } catch (const cg::Error& e) {
    EXPECT_EQ(e.code(), cg::ErrorCode::kEmptySequence);
  }
  EXPECT_DOUBLE_EQ(ev::score_answer("", "waste paint").bert, 0.0);
}

TEST(RoundAccuracy, Basics) {
  EXPECT_DOUBLE_EQ(ev::round_accuracy({1, 1, 1, 0, 0}), 0.6);
  EXPECT_DOUBLE_EQ(ev::round_accuracy({1}), 1.0);
  try {
    ev::round_accuracy({});
    FAIL();
  } catch (const cg::Error& e) {
    EXPECT_EQ(e.code(), cg::ErrorCode::kEmptyRounds);
  }
  EXPECT_THROW(ev::round_accuracy({1, 2}), cg::Error);
  EXPECT_DOUBLE_EQ(ev::agreement_rate({"a", "a", "a", "b", "c"}), 0.6);
  EXPECT_DOUBLE_EQ(ev::agreement_rate({"x", "x"}), 1.0);
}

TEST(Cases, BundledSix) {
  const auto& c = ev::bundled_cases();
  ASSERT_EQ(c.size(), 6u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c[i].id, static_cast<int>(i + 1));
    EXPECT_EQ(c[i].hop, i < 3 ? ev::Hop::kSingle : ev::Hop::kMulti);
    EXPECT_FALSE(c[i].question.empty());
  }
  EXPECT_EQ(c[0].reference, "Waste paint");
  EXPECT_THROW(ev::parse_cases("[{\"id\":1}]"), cg::Error);
}

namespace {

struct Harness {
  std::shared_ptr<const cg::kg::TripleStore> store = std::make_shared<const cg::kg::TripleStore>(cg::kg::fixture_graph());
  std::shared_ptr<llm::MockScript> fuzzy = std::make_shared<llm::MockScript>(llm::MockScript::bundled("fuzzy"));

  pl::Pipeline pipeline(std::shared_ptr<const llm::Provider> p = nullptr) const {
    pl::PipelineResources r;
    r.store = store;
    r.llm = std::move(p);
    r.clock = pl::tick_clock_factory();
    return pl::Pipeline(std::move(r));
  }
};

}  // namespace

TEST(Benchmark, DeterministicModeIsPerfectAndReproducible) {
  Harness h;
  auto p = h.pipeline();
  pl::PipelineConfig cfg;
  auto naive = cfg;
  naive.baseline = pl::Baseline::kNaiveRag;
  std::vector<ev::BenchmarkMode> modes = {{"circugraphrag", &p, cfg}, {"naive-rag", &p, naive}};
  auto a = ev::run_benchmark(ev::bundled_cases(), modes);
  auto b = ev::run_benchmark(ev::bundled_cases(), modes);
  EXPECT_EQ(a.to_tsv(), b.to_tsv());
  EXPECT_EQ(a.summary(), b.summary());
  EXPECT_EQ(a.errors(), 0u);
  ASSERT_EQ(a.rows.size(), 12u);
  for (const auto& r : a.rows) {
    if (r.mode != "circugraphrag") continue;
    EXPECT_EQ(r.metrics.exact, 1) << r.case_id;
    EXPECT_NEAR(r.metrics.rouge.f1, 1.0, 1e-12) << r.case_id;
  }
}

TEST(Benchmark, AblationOrdering) {
  Harness h;
  auto p = h.pipeline(std::make_shared<llm::MockProvider>(h.fuzzy));
  auto rep = ev::run_ablation(p, ev::bundled_cases(), pl::PipelineConfig{});
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rep.rows[0].accuracy, 1.0);
  EXPECT_DOUBLE_EQ(rep.rows[1].accuracy, 0.0);
  EXPECT_GE(rep.rows[2].accuracy, rep.rows[1].accuracy);
  EXPECT_LE(rep.rows[2].accuracy, rep.rows[0].accuracy);
  EXPECT_NEAR(rep.rows[2].accuracy, 4.0 / 6.0, 1e-12);
}

TEST(Consistency, DeterministicRoundsAgree) {
  Harness h;
  auto p = std::make_shared<const pl::Pipeline>(h.pipeline());
  auto rep = ev::run_consistency([&](std::size_t) { return p; }, ev::bundled_cases(), pl::PipelineConfig{}, 5);
  EXPECT_DOUBLE_EQ(rep.tm_exact_rate, 1.0);
  EXPECT_DOUBLE_EQ(rep.qm_exact_rate, 1.0);
  EXPECT_DOUBLE_EQ(rep.answer_accuracy, 1.0);
  EXPECT_THROW(ev::run_consistency([&](std::size_t) { return p; }, ev::bundled_cases(), pl::PipelineConfig{}, 0),
               cg::Error);
}

TEST(Consistency, VariantScriptGivesThreeOfFive) {
  Harness h;
  auto script = std::make_shared<llm::MockScript>(llm::MockScript::bundled("variant"));
  pl::PipelineConfig cfg;
  cfg.planner = pl::PlannerKind::kLlm;
  auto rep = ev::run_consistency(
      [&](std::size_t t) {
        return std::make_shared<const pl::Pipeline>(h.pipeline(std::make_shared<llm::MockProvider>(script, t)));
      },
      ev::bundled_cases(), cfg, 5);
  for (const auto& c : rep.cases) {
    EXPECT_DOUBLE_EQ(c.tm_exact_rate, 1.0) << c.case_id;
    EXPECT_DOUBLE_EQ(c.qm_exact_rate, 0.6) << c.case_id;
  }
}

TEST(MockScripts, BundledFilesAreCurrent) {
  const auto store = cg::kg::fixture_graph();
  EXPECT_EQ(llm::MockScript::bundled("fuzzy").to_json(), ev::build_fuzzy_script(store).to_json());
  EXPECT_EQ(llm::MockScript::bundled("variant").to_json(), ev::build_variant_script(store).to_json());
}
