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

#include "pipeline/pipeline.hpp"

#include <sstream>

#include "common/error.hpp"
#include "llm/prompts.hpp"
#include "llm/structured.hpp"
#include "merge/plan.hpp"
#include "sparql/evaluator.hpp"
#include "sparql/syntax.hpp"

namespace circugraph::pipeline {

using nlohmann::json;

std::string_view execution_name(Execution e) { return e == Execution::kLocal ? "local-store" : "remote-endpoint"; }
std::string_view composer_name(ComposerKind c) { return c == ComposerKind::kDeterministic ? "deterministic" : "llm"; }
std::string_view planner_name(PlannerKind p) { return p == PlannerKind::kDeterministic ? "deterministic" : "llm"; }
std::string_view baseline_name(Baseline b) {
  switch (b) {
    case Baseline::kCircuGraphRag: return "circugraphrag";
    case Baseline::kNaiveRag: return "naive-rag";
    case Baseline::kStandaloneLlm: return "standalone-llm";
  }
  return "?";
}

std::optional<Execution> parse_execution(std::string_view s) {
  if (s == "local-store" || s == "local") return Execution::kLocal;
  if (s == "remote-endpoint" || s == "remote") return Execution::kRemote;
  return std::nullopt;
}
std::optional<ComposerKind> parse_composer(std::string_view s) {
  if (s == "deterministic") return ComposerKind::kDeterministic;
  if (s == "llm") return ComposerKind::kLlm;
  return std::nullopt;
}
std::optional<PlannerKind> parse_planner(std::string_view s) {
  if (s == "deterministic") return PlannerKind::kDeterministic;
  if (s == "llm") return PlannerKind::kLlm;
  return std::nullopt;
}
std::optional<Baseline> parse_baseline(std::string_view s) {
  if (s == "circugraphrag") return Baseline::kCircuGraphRag;
  if (s == "naive-rag") return Baseline::kNaiveRag;
  if (s == "standalone-llm" || s == "standalone") return Baseline::kStandaloneLlm;
  return std::nullopt;
}

void PipelineConfig::validate() const {
  if (top_k_answers == 0) throw Error(ErrorCode::kConfig, "top_k_answers must be positive");
  try {
    generation.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
}

json PipelineConfig::to_json() const {
  return {{"top_k_answers", top_k_answers},
          {"execution", execution_name(execution)},
          {"matcher_mode", retrieval::mode_name(matcher_mode)},
          {"composer", composer_name(composer)},
          {"planner", planner_name(planner)},
          {"baseline", baseline_name(baseline)},
          {"fallback_llm_note", fallback_llm_note},
          {"temperature", generation.temperature},
          {"top_p", generation.top_p},
          {"max_tokens", generation.max_tokens}};
}

namespace {

template <typename T, typename F>
T parse_field(const json& v, const std::string& key, F parse) {
  if (!v.is_string()) throw Error(ErrorCode::kConfig, key + " must be a string");
  auto r = parse(v.template get<std::string>());
  if (!r) throw Error(ErrorCode::kConfig, "bad value for " + key + ": " + v.template get<std::string>());
  return *r;
}

}  // namespace

PipelineConfig PipelineConfig::with_overrides(const json& o) const {
  if (!o.is_object()) throw Error(ErrorCode::kConfig, "config overrides must be an object");
  PipelineConfig c = *this;
  for (const auto& [key, v] : o.items()) {
    try {
      if (key == "top_k_answers") {
        if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
          throw Error(ErrorCode::kConfig, "top_k_answers must be a positive integer");
        }
        c.top_k_answers = v.get<std::size_t>();
      } else if (key == "execution") {
        c.execution = parse_field<Execution>(v, key, parse_execution);
      } else if (key == "matcher_mode") {
        c.matcher_mode = parse_field<retrieval::MatchMode>(v, key, retrieval::parse_mode);
      } else if (key == "composer") {
        c.composer = parse_field<ComposerKind>(v, key, parse_composer);
      } else if (key == "planner") {
        c.planner = parse_field<PlannerKind>(v, key, parse_planner);
      } else if (key == "baseline") {
        c.baseline = parse_field<Baseline>(v, key, parse_baseline);
      } else if (key == "fallback_llm_note") {
        c.fallback_llm_note = v.get<bool>();
      } else if (key == "temperature") {
        c.generation.temperature = v.get<double>();
      } else if (key == "top_p") {
        c.generation.top_p = v.get<double>();
      } else if (key == "max_tokens") {
        c.generation.max_tokens = v.get<int>();
      } else {
        throw Error(ErrorCode::kConfig, "unknown config key " + key);
      }
    } catch (const json::exception&) {
      throw Error(ErrorCode::kConfig, "bad type for " + key);
    }
  }
  c.validate();
  return c;
}

struct Pipeline::Run {
  const std::string& question;
  const PipelineConfig& config;
  std::unique_ptr<Clock> clock;
  Outcome out;
  retrieval::ParsedQuery pq;
};

namespace {

// Charges the elapsed time to a stage when it goes out of scope.
class StageTimer {
 public:
  StageTimer(Clock& clock, UsageRecord& usage, Stage stage)
      : clock_(clock), usage_(usage), stage_(stage), start_(clock.now()) {}
  ~StageTimer() { usage_.add_wall(stage_, clock_.now() - start_); }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  Clock& clock_;
  UsageRecord& usage_;
  Stage stage_;
  std::chrono::microseconds start_;
};

void charge(UsageRecord& usage, Stage stage, const std::vector<llm::ChatExchange>& exchanges) {
  for (const auto& e : exchanges) usage.add_tokens(stage, e.input_tokens, e.output_tokens);
}

bool surfaces(const Error& e) {
  return e.code() == ErrorCode::kTransport || e.code() == ErrorCode::kProtocol || e.code() == ErrorCode::kConfig;
}

std::string describe(const templates::TemplateInstance& inst) {
  std::string s = inst.template_id();
  for (const auto& [k, v] : inst.bindings) s += " " + k + "=" + v;
  s += " outputs:";
  for (const auto& o : inst.expected_output) {
    s += " " + o.var + "(" + std::string(templates::output_role_name(o.role));
    if (o.entity_kind) s += ":" + std::string(kg::kind_name(*o.entity_kind));
    if (o.scheme) s += ":" + std::string(kg::scheme_name(*o.scheme));
    s += ")";
  }
  if (inst.tmpl->input) s += " input: " + inst.tmpl->input->var;
  return s;
}

std::string hints_json(const retrieval::MatchResult& m) {
  json hints = json::array();
  for (const auto& h : m.hints) {
    json ph = json::array();
    for (const auto& [k, v] : h.placeholders) ph.push_back({{"kind", k}, {"value", v}});
    hints.push_back({{"placeholders", ph}, {"outputs", h.output_roles}});
  }
  return hints.dump();
}

}  // namespace

std::string planner_user_prompt(const std::string& question, const std::vector<templates::TemplateInstance>& instances) {
  std::string user = "Question: " + question + "\nTemplates:";
  for (const auto& i : instances) user += "\n" + describe(i);
  return user;
}

std::string draft_user_prompt(const std::string& question, const retrieval::MatchResult* hints) {
  std::string user = "Question: " + question;
  if (hints) user += "\nHints: " + hints_json(*hints);
  return user;
}

Pipeline::Pipeline(PipelineResources resources) : res_(std::move(resources)) {
  if (!res_.clock) res_.clock = steady_clock_factory();
  if (res_.store) {
    auto take = [&](std::optional<retrieval::VectorIndex>& given, kg::EntityKind role) {
      if (!given) return retrieval::build_role_index(*res_.store, role);
      if (given->role() != role) {
        throw Error(ErrorCode::kConfig, "index role mismatch: expected " + std::string(kg::kind_name(role)));
      }
      return std::move(*given);
    };
    providers_ = take(res_.provider_index, kg::EntityKind::kProvider);
    receivers_ = take(res_.receiver_index, kg::EntityKind::kReceiver);
    res_.provider_index.reset();
    res_.receiver_index.reset();
    chunks_ = ChunkIndex::build(*res_.store);
  }
}

Outcome Pipeline::answer(const std::string& question, const PipelineConfig& config) const {
  config.validate();
  const bool needs_llm = config.baseline == Baseline::kStandaloneLlm || config.composer == ComposerKind::kLlm ||
                         config.planner == PlannerKind::kLlm;
  if (needs_llm && !res_.llm) throw Error(ErrorCode::kConfig, "configuration needs an LLM provider");
  if (config.baseline != Baseline::kStandaloneLlm) {
    if (config.execution == Execution::kLocal && !res_.store) {
      throw Error(ErrorCode::kConfig, "local execution needs a loaded graph");
    }
    if (config.execution == Execution::kRemote && !res_.endpoint) {
      throw Error(ErrorCode::kConfig, "remote execution needs an endpoint");
    }
    if (config.baseline == Baseline::kNaiveRag && !res_.store) {
      throw Error(ErrorCode::kConfig, "the text-chunk baseline needs a loaded graph");
    }
  }

  Run run{question, config, res_.clock(), {}, {}};
  switch (config.baseline) {
    case Baseline::kCircuGraphRag: circugraph(run); break;
    case Baseline::kNaiveRag: naive_rag(run); break;
    case Baseline::kStandaloneLlm: standalone(run); break;
  }
  return std::move(run.out);
}

sparql::ResultSet Pipeline::execute(Run& run, const sparql::Query& q) const {
  ++run.out.graph_reads;
  if (run.config.execution == Execution::kRemote) return sparql::execute_remote(q, *res_.endpoint);
  return sparql::evaluate(q, *res_.store);
}

void Pipeline::circugraph(Run& run) const {
  auto& out = run.out;
  const auto& cfg = run.config;
  retrieval::MatchResult match;
  {
    StageTimer t(*run.clock, out.usage, Stage::kTm);
    run.pq = retrieval::parse_question(run.question);
    if (res_.store) {
      ++out.graph_reads;
      run.pq = retrieval::link_entities(run.pq, {res_.store.get(), &*providers_, &*receivers_});
    }
    try {
      match = retrieval::match_templates(run.pq, cfg.matcher_mode);
    } catch (const Error& e) {
      if (surfaces(e)) throw;
      out.stages.tm = std::string("error: ") + e.what();
    }
  }
  if (!out.stages.tm.empty()) return fallback(run, out.stages.tm);
  out.stages.tm = retrieval::to_json(match);
  for (const auto& i : match.instances) out.answer.provenance.template_ids.push_back(i.template_id());
  for (const auto& h : match.hints) out.answer.provenance.template_ids.push_back(h.template_id);

  sparql::Query query;
  ColumnRoles roles;
  std::string failure;
  {
    StageTimer t(*run.clock, out.usage, Stage::kQm);
    try {
      if (cfg.matcher_mode == retrieval::MatchMode::kWithTemplate) {
        merge::MergePlan plan;
        if (cfg.planner == PlannerKind::kLlm) {
          auto reply = llm::structured_complete(*res_.llm, llm::Schema::kMergePlan, llm::prompt_text("plan"),
                                                planner_user_prompt(run.question, match.instances),
                                                cfg.generation);
          charge(out.usage, Stage::kQm, reply.exchanges);
          out.stages.qm = reply.value["plan"].get<std::string>();
          plan = merge::parse_plan(out.stages.qm, match.instances);
        } else {
          plan = merge::plan_merge(match.instances, run.pq);
        }
        auto fq = merge::compile(plan);
        query = std::move(fq.query);
        for (const auto& o : fq.outputs) roles.push_back(o);
        out.answer.provenance.plan = plan.text();
      } else {
        if (!res_.llm) throw Error(ErrorCode::kNoMatch, "drafting a query without a template needs an LLM");
        const bool fuzzy = cfg.matcher_mode == retrieval::MatchMode::kFuzzyTemplate;
        auto reply = llm::structured_complete(*res_.llm, llm::Schema::kSparqlDraft, llm::prompt_text("draft"),
                                              draft_user_prompt(run.question, fuzzy ? &match : nullptr),
                                              cfg.generation);
        charge(out.usage, Stage::kQm, reply.exchanges);
        query = sparql::parse_query(reply.value["query"].get<std::string>());
        sparql::validate(query);
        for (const auto& v : query.select) roles.push_back(infer_output(v.name));
        out.answer.provenance.plan = "draft";
      }
      out.answer.provenance.final_query = sparql::serialize(query, sparql::Layout::kCompact);
      out.stages.qm = out.answer.provenance.plan + "\n" + out.answer.provenance.final_query;
    } catch (const Error& e) {
      if (surfaces(e)) throw;
      failure = e.what();
      if (out.stages.qm.empty()) out.stages.qm = std::string("error: ") + e.what();
    }
  }
  if (!failure.empty()) return fallback(run, failure);

  StageTimer t(*run.clock, out.usage, Stage::kQrc);
  auto rows = execute(run, query);
  if (rows.rows.empty()) return fallback(run, "the query returned no rows");

  std::optional<std::size_t> gwp_col, entity_col;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (!roles[i]) continue;
    if (roles[i]->role == templates::OutputRole::kGwp100 && !gwp_col) gwp_col = i;
    if (roles[i]->role == templates::OutputRole::kEntity && !entity_col) entity_col = i;
  }
  sparql::ResultSet shown;
  shown.columns = rows.columns;
  if (gwp_col) {
    out.answer.ranking = rank_by_gwp100(rows, *gwp_col, entity_col, cfg.top_k_answers);
    auto order = gwp_order(rows, *gwp_col, entity_col);
    std::vector<bool> taken(rows.rows.size());
    for (auto i : order) taken[i] = true;
    for (std::size_t i = 0; i < rows.rows.size(); ++i) {
      if (!taken[i]) order.push_back(i);
    }
    for (auto i : order) shown.rows.push_back(rows.rows[i]);
  } else {
    shown.rows = rows.rows;
  }
  if (shown.rows.size() > cfg.top_k_answers) shown.rows.resize(cfg.top_k_answers);
  out.answer.provenance.rows = shown;

  std::string text;
  if (cfg.composer == ComposerKind::kLlm) {
    try {
      auto reply = llm::structured_complete(*res_.llm, llm::Schema::kFinalAnswer, llm::prompt_text("compose"),
                                            "Question: " + run.question + "\nRows:\n" + sparql::to_table(shown),
                                            cfg.generation);
      charge(out.usage, Stage::kQrc, reply.exchanges);
      text = reply.value["answer"].get<std::string>();
    } catch (const Error& e) {
      if (surfaces(e)) throw;
      return fallback(run, e.what());
    }
    if (!grounding_violations(text, shown).empty()) {
      return fallback(run, "composed answer is not traceable to the result rows");
    }
  } else {
    text = compose_answer(shown, roles, run.pq);
  }
  if (text.empty()) return fallback(run, "nothing to report from the result rows");
  out.answer.text = text;
  out.answer.grounded = true;
}

void Pipeline::naive_rag(Run& run) const {
  auto& out = run.out;
  std::vector<std::pair<const TextChunk*, double>> hits;
  {
    StageTimer t(*run.clock, out.usage, Stage::kTm);
    ++out.graph_reads;
    hits = chunks_.search(run.question, run.config.top_k_answers);
    for (const auto& [c, s] : hits) out.stages.tm += c->id + "\n";
  }
  { StageTimer t(*run.clock, out.usage, Stage::kQm); }
  StageTimer t(*run.clock, out.usage, Stage::kQrc);
  if (hits.empty()) return fallback(run, "no passages retrieved");
  auto& rows = out.answer.provenance.rows;
  rows.columns = {"passage", "title", "text"};
  for (const auto& [c, s] : hits) {
    rows.rows.push_back({kg::Iri::absolute(c->id), kg::Literal::text(c->title), kg::Literal::text(c->text)});
  }
  if (run.config.composer == ComposerKind::kLlm) {
    std::string passages;
    for (const auto& [c, s] : hits) passages += "- " + c->text + "\n";
    try {
      auto reply = llm::structured_complete(*res_.llm, llm::Schema::kFinalAnswer, llm::prompt_text("naive"),
                                            "Question: " + run.question + "\nPassages:\n" + passages,
                                            run.config.generation);
      charge(out.usage, Stage::kQrc, reply.exchanges);
      out.answer.text = reply.value["answer"].get<std::string>();
    } catch (const Error& e) {
      if (surfaces(e)) throw;
      return fallback(run, e.what());
    }
  } else {
    out.answer.text = hits.front().first->title;
  }
  out.answer.grounded = grounding_violations(out.answer.text, rows).empty();
  if (!out.answer.grounded) {
    out.answer.text = std::string(kFallbackNotice) + "\n" + redact_decimals(out.answer.text);
  }
}

void Pipeline::standalone(Run& run) const {
  auto& out = run.out;
  { StageTimer t(*run.clock, out.usage, Stage::kTm); }
  { StageTimer t(*run.clock, out.usage, Stage::kQm); }
  StageTimer t(*run.clock, out.usage, Stage::kQrc);
  std::string reply_text;
  try {
    auto reply = llm::structured_complete(*res_.llm, llm::Schema::kFinalAnswer, llm::prompt_text("standalone"),
                                          "Question: " + run.question, run.config.generation);
    charge(out.usage, Stage::kQrc, reply.exchanges);
    reply_text = reply.value["answer"].get<std::string>();
  } catch (const Error& e) {
    if (surfaces(e)) throw;
    return fallback(run, e.what());
  }
  out.answer.grounded = false;
  out.answer.text = std::string(kFallbackNotice) + "\nGeneral answer (not from the knowledge graph): " +
                    redact_decimals(reply_text);
}

void Pipeline::fallback(Run& run, const std::string& why) const {
  auto& out = run.out;
  out.diagnostic = why;
  out.answer.grounded = false;
  out.answer.ranking.clear();
  out.answer.text = std::string(kFallbackNotice);
  if (!run.config.fallback_llm_note || !res_.llm) return;
  try {
    auto reply = llm::structured_complete(*res_.llm, llm::Schema::kFinalAnswer, llm::prompt_text("fallback"),
                                          "Question: " + run.question, run.config.generation);
    charge(out.usage, Stage::kQrc, reply.exchanges);
    out.answer.text += "\n\nGeneral context (not from the knowledge graph): " +
                       redact_decimals(reply.value["answer"].get<std::string>());
  } catch (const Error& e) {
    if (surfaces(e)) throw;
  }
}

std::string run_log_record(const std::string& question, const PipelineConfig& config, const Outcome& o,
                           bool include_wall_times) {
  json rows = json::array();
  for (const auto& r : o.answer.provenance.rows.rows) {
    json cells = json::array();
    for (const auto& t : r) cells.push_back(kg::display(t));
    rows.push_back(cells);
  }
  json ranking = json::array();
  for (const auto& r : o.answer.ranking) ranking.push_back({{"entity", r.entity}, {"gwp100", r.gwp100}});
  auto stage_json = [&](const StageUsage& s) {
    json j = {{"input_tokens", s.input_tokens}, {"output_tokens", s.output_tokens}};
    if (include_wall_times) j["wall_us"] = s.wall.count();
    return j;
  };
  json usage = json::object();
  for (auto s : kStages) usage[std::string(stage_name(s))] = stage_json(o.usage.stage(s));
  usage["total"] = stage_json(o.usage.total());
  json rec = {
      {"schema", "circugraph.run/1"},
      {"question", question},
      {"config", config.to_json()},
      {"answer", o.answer.text},
      {"grounded", o.answer.grounded},
      {"provenance",
       {{"templates", o.answer.provenance.template_ids},
        {"plan", o.answer.provenance.plan},
        {"query", o.answer.provenance.final_query},
        {"columns", o.answer.provenance.rows.columns},
        {"rows", rows}}},
      {"ranking", ranking},
      {"usage", usage},
      {"graph_reads", o.graph_reads},
  };
  if (!o.diagnostic.empty()) rec["diagnostic"] = o.diagnostic;
  return rec.dump();
}

}  // namespace circugraph::pipeline
