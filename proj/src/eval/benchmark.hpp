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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "eval/cases.hpp"
#include "eval/metrics.hpp"
#include "pipeline/pipeline.hpp"

namespace circugraph::eval {

struct MetricReport {
  Rouge rouge;
  int exact = 0;
  double bert = 0;  // 0 when either side has no tokens
};

MetricReport score_answer(const std::string& answer, const std::string& reference);

struct BenchmarkRow {
  int case_id = 0;
  std::string mode;
  std::string answer;
  bool grounded = false;
  MetricReport metrics;
  pipeline::UsageRecord usage;
  std::string error;  // set when the pipeline threw for this case
};

struct BenchmarkMode {
  std::string label;
  const pipeline::Pipeline* pipeline = nullptr;
  pipeline::PipelineConfig config;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;  // case id order, then mode order

  // Tab-separated, one row per case x mode. Columns:
  //   case mode exact_match rouge_p rouge_r rouge_f1 bert grounded
  //   tm_in tm_out tm_us qm_in qm_out qm_us qrc_in qrc_out qrc_us
  //   total_in total_out total_us error answer
  std::string to_tsv() const;
  // Per-mode means.
  std::string summary() const;
  std::size_t errors() const;
};

// Cases run concurrently; the report order is fixed.
BenchmarkReport run_benchmark(const std::vector<QaCase>& cases, const std::vector<BenchmarkMode>& modes);

struct AblationRow {
  std::string mode;          // matcher mode name
  std::vector<int> correct;  // exact match per case, case order
  double accuracy = 0;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // with-template, no-template, fuzzy-template
  std::string to_tsv() const;     // mode, one column per case (1/0), accuracy
};

// Runs every case under each matcher mode on one pipeline; fuzzy mode
// needs the pipeline's LLM to draft queries.
AblationReport run_ablation(const pipeline::Pipeline& p, const std::vector<QaCase>& cases,
                            const pipeline::PipelineConfig& base);

// Share of outputs equal to the most frequent one (ties: earliest first seen).
double agreement_rate(const std::vector<std::string>& outputs);
// Mean ROUGE-L F1 of each output against the most frequent one.
double agreement_similarity(const std::vector<std::string>& outputs);

struct ConsistencyCase {
  int case_id = 0;
  std::vector<std::string> tm, qm, answers;  // one per round
  double tm_exact_rate = 0, qm_exact_rate = 0;
  double tm_similarity = 0, qm_similarity = 0;
  double answer_accuracy = 0;  // round_accuracy against the reference
};

struct ConsistencyReport {
  std::size_t rounds = 0;
  std::vector<ConsistencyCase> cases;
  double tm_exact_rate = 0, qm_exact_rate = 0, answer_accuracy = 0;  // means over cases
  std::string to_tsv() const;
};

// `round_pipeline(t)` supplies the pipeline for round t (a mock LLM per
// round replays scripted variants). Throws Error(kEmptyRounds) for 0 rounds.
ConsistencyReport run_consistency(const std::function<std::shared_ptr<const pipeline::Pipeline>(std::size_t)>& round_pipeline,
                                  const std::vector<QaCase>& cases, const pipeline::PipelineConfig& config,
                                  std::size_t rounds = 5);

}  // namespace circugraph::eval
