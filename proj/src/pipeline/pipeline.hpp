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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kg/triple_store.hpp"
#include "llm/llm.hpp"
#include "pipeline/chunks.hpp"
#include "pipeline/compose.hpp"
#include "pipeline/usage.hpp"
#include "retrieval/matcher.hpp"
#include "retrieval/vector_index.hpp"
#include "sparql/remote.hpp"

namespace circugraph::pipeline {

enum class Execution { kLocal, kRemote };
enum class ComposerKind { kDeterministic, kLlm };
enum class PlannerKind { kDeterministic, kLlm };
enum class Baseline { kCircuGraphRag, kNaiveRag, kStandaloneLlm };

std::string_view execution_name(Execution e);      // "local-store", "remote-endpoint"
std::string_view composer_name(ComposerKind c);    // "deterministic", "llm"
std::string_view planner_name(PlannerKind p);      // "deterministic", "llm"
std::string_view baseline_name(Baseline b);        // "circugraphrag", "naive-rag", "standalone-llm"
std::optional<Execution> parse_execution(std::string_view s);
std::optional<ComposerKind> parse_composer(std::string_view s);
std::optional<PlannerKind> parse_planner(std::string_view s);
std::optional<Baseline> parse_baseline(std::string_view s);

struct PipelineConfig {
  std::size_t top_k_answers = 5;
  Execution execution = Execution::kLocal;
  retrieval::MatchMode matcher_mode = retrieval::MatchMode::kWithTemplate;
  ComposerKind composer = ComposerKind::kDeterministic;
  PlannerKind planner = PlannerKind::kDeterministic;
  Baseline baseline = Baseline::kCircuGraphRag;
  // Append LLM general context, clearly marked, to fallback answers.
  bool fallback_llm_note = false;
  llm::GenerationParams generation;

  // Throws Error(kConfig).
  void validate() const;
  nlohmann::json to_json() const;
  // Applies the fields present in `overrides`; unknown keys or bad values
  // throw Error(kConfig).
  PipelineConfig with_overrides(const nlohmann::json& overrides) const;
};

inline constexpr std::string_view kFallbackNotice = "No matches were found in the database.";

struct Provenance {
  std::vector<std::string> template_ids;
  std::string plan;         // merge-plan text
  std::string final_query;  // serialized FinalQuery or drafted query
  sparql::ResultSet rows;   // rows the answer was composed from
};

struct Answer {
  std::string text;
  bool grounded = false;
  Provenance provenance;
  std::vector<RankedEntity> ranking;
};

// Raw stage outputs, compared across rounds by the consistency harness.
struct StageOutputs {
  std::string tm;  // match result JSON (or the drafted query request)
  std::string qm;  // plan text and final query
};

struct Outcome {
  Answer answer;
  UsageRecord usage;
  StageOutputs stages;
  std::size_t graph_reads = 0;  // store lookups and endpoint calls made for this answer
  std::string diagnostic;       // why the fallback was taken, if it was
};

struct PipelineResources {
  std::shared_ptr<const kg::TripleStore> store;  // required for local execution
  std::optional<sparql::Endpoint> endpoint;      // required for remote execution
  std::shared_ptr<const llm::Provider> llm;      // optional
  // Prebuilt role indexes; built from the store when absent.
  std::optional<retrieval::VectorIndex> provider_index;
  std::optional<retrieval::VectorIndex> receiver_index;
  ClockFactory clock = steady_clock_factory();
};

// Immutable after construction; answer() may run concurrently.
class Pipeline {
 public:
  // Builds the provider/receiver label indexes and the passage index from
  // the store, when one is given.
  explicit Pipeline(PipelineResources resources);

  // Throws Error(kConfig) for unusable configurations, and kTransport /
  // ProtocolError from remote execution. Everything else degrades to the
  // fallback answer.
  Outcome answer(const std::string& question, const PipelineConfig& config) const;

  const kg::TripleStore* store() const { return res_.store.get(); }
  bool has_llm() const { return static_cast<bool>(res_.llm); }

 private:
  struct Run;
  void circugraph(Run& run) const;
  void naive_rag(Run& run) const;
  void standalone(Run& run) const;
  void fallback(Run& run, const std::string& why) const;
  sparql::ResultSet execute(Run& run, const sparql::Query& q) const;

  PipelineResources res_;
  std::optional<retrieval::VectorIndex> providers_;
  std::optional<retrieval::VectorIndex> receivers_;
  ChunkIndex chunks_;
};

// User prompts of the LLM-backed stages; mock scripts are keyed on these.
std::string planner_user_prompt(const std::string& question, const std::vector<templates::TemplateInstance>& instances);
// `hints` is null in no-template mode.
std::string draft_user_prompt(const std::string& question, const retrieval::MatchResult* hints);

// One newline-free JSON record: schema, question, config, answer, grounded,
// provenance, ranking, usage (per stage and total).
std::string run_log_record(const std::string& question, const PipelineConfig& config, const Outcome& outcome,
                           bool include_wall_times = true);

}  // namespace circugraph::pipeline
