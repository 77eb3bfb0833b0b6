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

#include "circugraph/circugraph.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "common/error.hpp"
#include "eval/benchmark.hpp"
#include "eval/cases.hpp"
#include "kg/fixture.hpp"
#include "kg/graph_io.hpp"
#include "kg/synthetic.hpp"
#include "llm/llm.hpp"
#include "pipeline/pipeline.hpp"
#include "retrieval/vector_index.hpp"
#include "sparql/evaluator.hpp"
#include "sparql/results.hpp"
#include "sparql/syntax.hpp"

namespace cg = circugraph;
using nlohmann::json;

struct cgr_graph {
  std::shared_ptr<const cg::kg::TripleStore> store;
};

struct cgr_pipeline {
  std::shared_ptr<const cg::pipeline::Pipeline> pipeline;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(cg::ErrorCode::kInternal) + 1 == CGR_E_INTERNAL, "status table out of sync");
static_assert(static_cast<int>(cg::ErrorCode::kConfig) + 1 == CGR_E_CONFIG, "status table out of sync");

cgr_status to_status(cg::ErrorCode code) { return static_cast<cgr_status>(static_cast<int>(code) + 1); }

template <typename F>
cgr_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CGR_OK;
  } catch (const cg::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return CGR_E_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CGR_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CGR_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw cg::Error(cg::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

json parse_or_empty(const char* text) {
  if (!text || !*text) return json::object();
  auto j = json::parse(text);
  if (!j.is_object()) throw cg::Error(cg::ErrorCode::kInvalidArgument, "expected a JSON object");
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cg::Error(cg::ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<cg::eval::QaCase> load_cases(const char* path) {
  if (!path || !*path) return cg::eval::bundled_cases();
  return cg::eval::parse_cases(read_text(path));
}

cg::pipeline::PipelineConfig config_from(const char* overrides) {
  return cg::pipeline::PipelineConfig{}.with_overrides(parse_or_empty(overrides));
}

std::shared_ptr<const cg::llm::Provider> make_llm(const json& o) {
  const std::string backend = o.value("backend", "none");
  if (backend == "none") return nullptr;
  if (backend == "mock") {
    const std::string script = o.value("script", "");
    if (script.empty()) throw cg::Error(cg::ErrorCode::kConfig, "mock backend needs a script");
    const bool is_path = script.find('/') != std::string::npos || script.ends_with(".json");
    auto s = std::make_shared<cg::llm::MockScript>(is_path ? cg::llm::MockScript::load_file(script)
                                                           : cg::llm::MockScript::bundled(script));
    return std::make_shared<cg::llm::MockProvider>(s, o.value("round", std::size_t{0}));
  }
  if (backend == "http") {
    cg::llm::ProviderConfig c;
    c.base_url = o.value("base_url", "");
    c.chat_path = o.value("chat_path", c.chat_path);
    c.api_key = o.value("api_key", "");
    c.model = o.value("model", "");
    c.timeout = std::chrono::milliseconds(o.value("timeout_ms", static_cast<long>(c.timeout.count())));
    return std::make_shared<cg::llm::HttpProvider>(c);
  }
  throw cg::Error(cg::ErrorCode::kConfig, "unknown llm backend " + backend);
}

std::shared_ptr<const cg::pipeline::Pipeline> make_pipeline(const cgr_graph* graph, const json& o) {
  cg::pipeline::PipelineResources r;
  if (graph) r.store = graph->store;
  if (o.contains("endpoint")) {
    const auto& e = o["endpoint"];
    cg::sparql::Endpoint ep;
    ep.url = e.at("url").get<std::string>();
    if (e.contains("token") && !e["token"].get<std::string>().empty()) ep.bearer_token = e["token"].get<std::string>();
    ep.timeout = std::chrono::milliseconds(e.value("timeout_ms", static_cast<long>(ep.timeout.count())));
    r.endpoint = ep;
  }
  if (o.contains("llm")) r.llm = make_llm(o["llm"]);
  const std::string clock = o.value("clock", "steady");
  if (clock == "tick") {
    r.clock = cg::pipeline::tick_clock_factory();
  } else if (clock != "steady") {
    throw cg::Error(cg::ErrorCode::kConfig, "unknown clock " + clock);
  }
  if (auto dir = o.value("index_dir", std::string()); !dir.empty()) {
    const std::filesystem::path d(dir);
    r.provider_index = cg::retrieval::VectorIndex::load_file((d / "provider.idx").string());
    r.receiver_index = cg::retrieval::VectorIndex::load_file((d / "receiver.idx").string());
  }
  return std::make_shared<const cg::pipeline::Pipeline>(std::move(r));
}

}  // namespace

extern "C" {

const char* cgr_version(void) { return "0.1.0"; }

const char* cgr_status_name(cgr_status status) {
  if (status == CGR_OK) return "Ok";
  if (status < CGR_OK || status > CGR_E_INTERNAL) return "Unknown";
  static thread_local std::string name;
  name = std::string(cg::error_code_name(static_cast<cg::ErrorCode>(static_cast<int>(status) - 1)));
  return name.c_str();
}

const char* cgr_last_error(void) { return last_error.c_str(); }

void cgr_string_free(char* s) { std::free(s); }

cgr_status cgr_graph_open(const char* source, cgr_graph** out) {
  return guarded([&] {
    require(source && out, "source and out are required");
    *out = nullptr;
    auto g = std::make_unique<cgr_graph>();
    if (std::string_view(source) == "fixture") {
      g->store = std::make_shared<const cg::kg::TripleStore>(cg::kg::fixture_graph());
    } else {
      g->store = std::make_shared<const cg::kg::TripleStore>(cg::kg::load_graph(source));
    }
    *out = g.release();
  });
}

cgr_status cgr_graph_generate(const char* spec_json, cgr_graph** out) {
  return guarded([&] {
    require(spec_json && out, "spec and out are required");
    *out = nullptr;
    auto spec = cg::kg::parse_synthetic_spec(spec_json);
    auto g = std::make_unique<cgr_graph>();
    g->store = std::make_shared<const cg::kg::TripleStore>(cg::kg::generate_synthetic(spec));
    *out = g.release();
  });
}

void cgr_graph_free(cgr_graph* graph) { delete graph; }

cgr_status cgr_graph_stats(const cgr_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph && json_out, "graph and out are required");
    const auto& s = *graph->store;
    json j = {{"triples", s.size()},
              {"terms", s.term_count()},
              {"providers", s.nodes_of_kind(cg::kg::EntityKind::kProvider).size()},
              {"receivers", s.nodes_of_kind(cg::kg::EntityKind::kReceiver).size()},
              {"resources", s.nodes_of_kind(cg::kg::EntityKind::kResource).size()}};
    *json_out = dup(j.dump());
  });
}

cgr_status cgr_graph_serialize(const cgr_graph* graph, const char* format, char** text_out) {
  return guarded([&] {
    require(graph && format && text_out, "graph, format and out are required");
    const std::string f(format);
    if (f == "ntriples") {
      *text_out = dup(cg::kg::write_ntriples(*graph->store));
    } else if (f == "fixture") {
      *text_out = dup(cg::kg::write_fixture_format(*graph->store));
    } else {
      throw cg::Error(cg::ErrorCode::kInvalidArgument, "unknown graph format " + f);
    }
  });
}

cgr_status cgr_graph_save(const cgr_graph* graph, const char* path) {
  return guarded([&] {
    require(graph && path, "graph and path are required");
    cg::kg::save_graph(*graph->store, path);
  });
}

cgr_status cgr_graph_sparql(const cgr_graph* graph, const char* query, char** json_out) {
  return guarded([&] {
    require(graph && query && json_out, "graph, query and out are required");
    auto q = cg::sparql::parse_query(query);
    *json_out = dup(cg::sparql::to_sparql_json(cg::sparql::evaluate(q, *graph->store)));
  });
}

cgr_status cgr_graph_build_index(const cgr_graph* graph, const char* directory) {
  return guarded([&] {
    require(graph && directory, "graph and directory are required");
    const std::filesystem::path d(directory);
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw cg::Error(cg::ErrorCode::kIo, "cannot create " + d.string() + ": " + ec.message());
    cg::retrieval::build_role_index(*graph->store, cg::kg::EntityKind::kProvider).save_file((d / "provider.idx").string());
    cg::retrieval::build_role_index(*graph->store, cg::kg::EntityKind::kReceiver).save_file((d / "receiver.idx").string());
  });
}

cgr_status cgr_pipeline_create(const cgr_graph* graph, const char* options_json, cgr_pipeline** out) {
  return guarded([&] {
    require(out != nullptr, "out is required");
    *out = nullptr;
    auto p = std::make_unique<cgr_pipeline>();
    p->pipeline = make_pipeline(graph, parse_or_empty(options_json));
    *out = p.release();
  });
}

void cgr_pipeline_free(cgr_pipeline* pipeline) { delete pipeline; }

cgr_status cgr_pipeline_answer(const cgr_pipeline* pipeline, const char* question, const char* config_json,
                               int include_wall_times, char** record_out) {
  return guarded([&] {
    require(pipeline && question && record_out, "pipeline, question and out are required");
    auto cfg = config_from(config_json);
    auto outcome = pipeline->pipeline->answer(question, cfg);
    *record_out = dup(cg::pipeline::run_log_record(question, cfg, outcome, include_wall_times != 0));
  });
}

cgr_status cgr_benchmark(const cgr_pipeline* pipeline, const char* cases_path, const char* modes_json,
                         char** result_json) {
  return guarded([&] {
    require(pipeline && modes_json && result_json, "pipeline, modes and out are required");
    auto modes_in = json::parse(modes_json);
    require(modes_in.is_array() && !modes_in.empty(), "modes must be a non-empty array");
    std::vector<cg::eval::BenchmarkMode> modes;
    for (const auto& m : modes_in) {
      auto cfg = cg::pipeline::PipelineConfig{}.with_overrides(m.value("config", json::object()));
      modes.push_back({m.at("label").get<std::string>(), pipeline->pipeline.get(), cfg});
    }
    auto report = cg::eval::run_benchmark(load_cases(cases_path), modes);
    json j = {{"tsv", report.to_tsv()}, {"summary", report.summary()}, {"errors", report.errors()}};
    *result_json = dup(j.dump());
  });
}

cgr_status cgr_ablation(const cgr_pipeline* pipeline, const char* cases_path, const char* config_json,
                        char** result_json) {
  return guarded([&] {
    require(pipeline && result_json, "pipeline and out are required");
    auto report = cg::eval::run_ablation(*pipeline->pipeline, load_cases(cases_path), config_from(config_json));
    json rows = json::array();
    for (const auto& r : report.rows) rows.push_back({{"mode", r.mode}, {"correct", r.correct}, {"accuracy", r.accuracy}});
    *result_json = dup(json{{"tsv", report.to_tsv()}, {"rows", rows}}.dump());
  });
}

cgr_status cgr_consistency(const cgr_graph* graph, const char* options_json, const char* cases_path,
                           const char* config_json, size_t rounds, char** result_json) {
  return guarded([&] {
    require(result_json != nullptr, "out is required");
    const auto options = parse_or_empty(options_json);
    auto report = cg::eval::run_consistency(
        [&](std::size_t round) {
          auto o = options;
          if (o.contains("llm")) o["llm"]["round"] = round;
          return make_pipeline(graph, o);
        },
        load_cases(cases_path), config_from(config_json), rounds);
    json j = {{"tsv", report.to_tsv()},
              {"tm_exact_rate", report.tm_exact_rate},
              {"qm_exact_rate", report.qm_exact_rate},
              {"answer_accuracy", report.answer_accuracy}};
    *result_json = dup(j.dump());
  });
}

}  // extern "C"
