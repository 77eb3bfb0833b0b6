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

#include <unistd.h>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "circugraph/circugraph.h"

using nlohmann::json;

namespace {

// A failed C API call; main() turns it into exit code 1.
struct Failure {
  cgr_status status;
  std::string message;
};

void check(cgr_status s) {
  if (s != CGR_OK) throw Failure{s, cgr_last_error()};
}

void fail(const std::string& message) { throw Failure{CGR_E_CONFIG, message}; }

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { cgr_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using GraphPtr = std::unique_ptr<cgr_graph, decltype(&cgr_graph_free)>;
using PipelinePtr = std::unique_ptr<cgr_pipeline, decltype(&cgr_pipeline_free)>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw Failure{CGR_E_IO, "cannot write " + path};
}

// Settings resolved as flag, then environment, then config file, then default.
struct Settings {
  std::string config_path;
  json file = json::object();

  std::string graph, index_dir;
  std::string endpoint, endpoint_token;
  long endpoint_timeout_ms = 0;
  std::string llm_backend, mock_script, llm_base_url, llm_model, llm_api_key;
  long llm_timeout_ms = 0;

  // Pipeline config overrides given on the command line.
  std::string mode, composer, planner, baseline, execution;
  std::size_t top_k = 0;
  bool fallback_note = false;
  // Measured wall times; otherwise a fixed tick clock keeps reports reproducible.
  bool timings = false;

  void load_file() {
    if (config_path.empty()) return;
    try {
      file = json::parse(read_file(config_path));
    } catch (const json::exception& e) {
      fail("config file " + config_path + " is not JSON: " + e.what());
    }
    if (!file.is_object()) fail("config file must hold a JSON object");
  }

  const json* from_file(const std::string& dotted) const {
    const json* cur = &file;
    std::size_t start = 0;
    while (true) {
      auto dot = dotted.find('.', start);
      auto key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!cur->is_object() || !cur->contains(key)) return nullptr;
      cur = &(*cur)[key];
      if (dot == std::string::npos) return cur;
      start = dot + 1;
    }
  }

  std::string pick(const std::string& flag, const char* env, const std::string& file_key,
                   const std::string& fallback = "") const {
    if (!flag.empty()) return flag;
    if (const char* v = std::getenv(env); v && *v) return v;
    if (const json* v = from_file(file_key); v && v->is_string()) return v->get<std::string>();
    return fallback;
  }

  long pick_ms(long flag, const char* env, const std::string& file_key) const {
    if (flag > 0) return flag;
    if (const char* v = std::getenv(env); v && *v) {
      char* end = nullptr;
      const long ms = std::strtol(v, &end, 10);
      if (*end != '\0' || ms <= 0) fail(std::string(env) + " must be a positive integer");
      return ms;
    }
    if (const json* v = from_file(file_key); v && v->is_number_integer()) return v->get<long>();
    return 0;
  }

  std::string graph_source() const { return pick(graph, "CGR_GRAPH", "graph", "fixture"); }

  json options(const std::string& default_backend = "none", const std::string& default_script = "") const {
    json o = json::object();
    if (auto d = pick(index_dir, "CGR_INDEX", "index_dir"); !d.empty()) o["index_dir"] = d;
    if (auto url = pick(endpoint, "CGR_SPARQL_ENDPOINT", "endpoint.url"); !url.empty()) {
      o["endpoint"] = {{"url", url}, {"token", pick(endpoint_token, "CGR_SPARQL_TOKEN", "endpoint.token")}};
      if (auto ms = pick_ms(endpoint_timeout_ms, "CGR_SPARQL_TIMEOUT_MS", "endpoint.timeout_ms"); ms > 0) {
        o["endpoint"]["timeout_ms"] = ms;
      }
    }
    const auto backend = pick(llm_backend, "CGR_LLM_BACKEND", "llm.backend", default_backend);
    json llm = {{"backend", backend}};
    if (backend == "mock") {
      llm["script"] = pick(mock_script, "CGR_LLM_MOCK_SCRIPT", "llm.script", default_script);
    } else if (backend == "http") {
      llm["base_url"] = pick(llm_base_url, "CGR_LLM_BASE_URL", "llm.base_url");
      llm["model"] = pick(llm_model, "CGR_LLM_MODEL", "llm.model");
      llm["api_key"] = pick(llm_api_key, "CGR_LLM_API_KEY", "llm.api_key");
      if (auto ms = pick_ms(llm_timeout_ms, "CGR_LLM_TIMEOUT_MS", "llm.timeout_ms"); ms > 0) llm["timeout_ms"] = ms;
    }
    o["llm"] = llm;
    o["clock"] = timings ? "steady" : "tick";
    return o;
  }

  json overrides() const {
    json c = json::object();
    if (const json* p = from_file("pipeline"); p && p->is_object()) c = *p;
    if (!mode.empty()) c["matcher_mode"] = mode;
    if (!composer.empty()) c["composer"] = composer;
    if (!planner.empty()) c["planner"] = planner;
    if (!baseline.empty()) c["baseline"] = baseline;
    if (!execution.empty()) c["execution"] = execution;
    if (top_k > 0) c["top_k_answers"] = top_k;
    if (fallback_note) c["fallback_llm_note"] = true;
    return c;
  }
};

void add_pipeline_flags(CLI::App* cmd, Settings& s) {
  cmd->add_option("--index", s.index_dir, "Directory written by `index`");
  cmd->add_option("--endpoint", s.endpoint, "SPARQL endpoint URL (env CGR_SPARQL_ENDPOINT)");
  cmd->add_option("--endpoint-token", s.endpoint_token, "Bearer token for the endpoint (env CGR_SPARQL_TOKEN)");
  cmd->add_option("--endpoint-timeout-ms", s.endpoint_timeout_ms, "Endpoint timeout")->check(CLI::PositiveNumber);
  cmd->add_option("--llm", s.llm_backend, "LLM backend (env CGR_LLM_BACKEND)")
      ->check(CLI::IsMember({"none", "mock", "http"}));
  cmd->add_option("--mock-script", s.mock_script, "Bundled mock script name or path (env CGR_LLM_MOCK_SCRIPT)");
  cmd->add_option("--llm-base-url", s.llm_base_url, "Chat-completions base URL (env CGR_LLM_BASE_URL)");
  cmd->add_option("--llm-model", s.llm_model, "Model name (env CGR_LLM_MODEL)");
  cmd->add_option("--llm-timeout-ms", s.llm_timeout_ms, "LLM request timeout")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", s.mode, "Matcher mode")
      ->check(CLI::IsMember({"with-template", "no-template", "fuzzy-template"}));
  cmd->add_option("--composer", s.composer, "Answer composer")->check(CLI::IsMember({"deterministic", "llm"}));
  cmd->add_option("--planner", s.planner, "Merge planner")->check(CLI::IsMember({"deterministic", "llm"}));
  cmd->add_option("--execution", s.execution, "Where queries run")
      ->check(CLI::IsMember({"local-store", "remote-endpoint"}));
  cmd->add_option("--top-k", s.top_k, "Answers kept after GWP100 ranking")->check(CLI::PositiveNumber);
  cmd->add_flag("--fallback-note", s.fallback_note, "Append marked LLM context to fallback answers");
}

GraphPtr open_graph(const std::string& source) {
  cgr_graph* g = nullptr;
  check(cgr_graph_open(source.c_str(), &g));
  return GraphPtr(g, cgr_graph_free);
}

PipelinePtr open_pipeline(const cgr_graph* g, const json& options) {
  cgr_pipeline* p = nullptr;
  check(cgr_pipeline_create(g, options.dump().c_str(), &p));
  return PipelinePtr(p, cgr_pipeline_free);
}

json answer(const cgr_pipeline* p, const std::string& question, const json& overrides, bool wall_times) {
  Text rec;
  check(cgr_pipeline_answer(p, question.c_str(), overrides.dump().c_str(), wall_times ? 1 : 0, &rec.p));
  return json::parse(rec.str());
}

void print_answer(const json& rec) {
  std::cout << "answer: " << rec["answer"].get<std::string>() << "\n";
  std::cout << "grounded: " << (rec["grounded"].get<bool>() ? "true" : "false") << "\n";
  const auto& prov = rec["provenance"];
  if (!prov["templates"].empty()) {
    std::cout << "templates:";
    for (const auto& t : prov["templates"]) std::cout << " " << t.get<std::string>();
    std::cout << "\n";
  }
  if (!prov["plan"].get<std::string>().empty()) std::cout << "plan: " << prov["plan"].get<std::string>() << "\n";
  if (!prov["query"].get<std::string>().empty()) std::cout << "query: " << prov["query"].get<std::string>() << "\n";
  if (!rec["ranking"].empty()) {
    std::cout << "ranking:\n";
    std::size_t i = 0;
    for (const auto& r : rec["ranking"]) {
      std::cout << "  " << ++i << ". " << r["entity"].get<std::string>() << " gwp100=" << r["gwp100"].get<std::string>()
                << "\n";
    }
  }
  if (rec.contains("diagnostic")) std::cout << "diagnostic: " << rec["diagnostic"].get<std::string>() << "\n";
}

// --- serve ---------------------------------------------------------------

httplib::Server* active_server = nullptr;

extern "C" void stop_server(int) {
  if (active_server) active_server->stop();
}

void json_reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

int serve(const Settings& s, const std::string& host, int port) {
  httplib::Server server;
  std::atomic<bool> ready{false};
  GraphPtr graph(nullptr, cgr_graph_free);
  PipelinePtr pipe(nullptr, cgr_pipeline_free);

  server.Get("/v1/health", [&](const httplib::Request&, httplib::Response& res) {
    res.status = ready ? 200 : 503;
    res.set_content(ready ? "ok\n" : "loading\n", "text/plain");
  });

  server.Post("/v1/answer", [&](const httplib::Request& req, httplib::Response& res) {
    if (!ready) return json_reply(res, 503, {{"error", "loading"}});
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return json_reply(res, 400, {{"error", "body is not JSON"}});
    }
    if (!body.is_object() || !body.contains("question") || !body["question"].is_string()) {
      return json_reply(res, 400, {{"error", "expected {\"question\": string, \"config\": object}"}});
    }
    json overrides = s.overrides();
    if (body.contains("config")) {
      if (!body["config"].is_object()) return json_reply(res, 400, {{"error", "config must be an object"}});
      overrides.update(body["config"]);
    }
    Text rec;
    const auto st = cgr_pipeline_answer(pipe.get(), body["question"].get<std::string>().c_str(), overrides.dump().c_str(),
                                        0, &rec.p);
    if (st == CGR_E_CONFIG || st == CGR_E_INVALID_ARGUMENT) {
      return json_reply(res, 400, {{"error", cgr_last_error()}});
    }
    if (st == CGR_E_TRANSPORT || st == CGR_E_PROTOCOL) {
      return json_reply(res, 502, {{"error", cgr_status_name(st)}});
    }
    if (st != CGR_OK) {
      std::cerr << "answer failed: " << cgr_status_name(st) << ": " << cgr_last_error() << "\n";
      return json_reply(res, 500, {{"error", "internal error"}});
    }
    auto r = json::parse(rec.str());
    json_reply(res, 200,
               {{"answer", r["answer"]}, {"grounded", r["grounded"]}, {"provenance", r["provenance"]},
                {"ranking", r["ranking"]}, {"usage", r["usage"]}});
  });

  // SPARQL 1.1 protocol over the loaded graph.
  auto sparql = [&](const std::string& query, httplib::Response& res) {
    if (!ready) return json_reply(res, 503, {{"error", "loading"}});
    if (query.empty()) return json_reply(res, 400, {{"error", "missing query"}});
    Text out;
    const auto st = cgr_graph_sparql(graph.get(), query.c_str(), &out.p);
    if (st != CGR_OK) return json_reply(res, 400, {{"error", cgr_last_error()}});
    res.status = 200;
    res.set_content(out.str(), "application/sparql-results+json");
  };
  server.Get("/sparql", [&](const httplib::Request& req, httplib::Response& res) {
    sparql(req.get_param_value("query"), res);
  });
  server.Post("/sparql", [&](const httplib::Request& req, httplib::Response& res) {
    sparql(req.has_param("query") ? req.get_param_value("query") : req.body, res);
  });

  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Failure{CGR_E_IO, "cannot bind " + host + ":" + std::to_string(port)};
  active_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  std::thread listener([&] { server.listen_after_bind(); });
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  try {
    graph = open_graph(s.graph_source());
    pipe = open_pipeline(graph.get(), s.options());
    ready = true;
    std::cout << "ready" << std::endl;
  } catch (const Failure& f) {
    server.stop();
    listener.join();
    active_server = nullptr;
    throw;
  }
  listener.join();
  active_server = nullptr;
  return 0;
}

// --- evaluation helpers ----------------------------------------------------

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  std::ios::sync_with_stdio(true);

  CLI::App app{"Knowledge-graph question answering for industrial symbiosis data", "cgr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cgr_version()));
  Settings s;
  app.add_option("--config", s.config_path, "JSON config file (lowest precedence)")->check(CLI::ExistingFile);
  app.add_flag("--timings", s.timings, "Record measured wall times instead of the deterministic tick clock");
  app.add_option("--graph", s.graph, "\"fixture\" or a graph file (env CGR_GRAPH)");
  app.footer(
      "Precedence: command-line flags, then environment variables, then the --config file, then defaults.\n"
      "Exit codes: 0 success, 1 domain error, 2 usage error.");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load and validate a graph file; optionally write it back canonically");
  std::string ingest_in, ingest_out;
  ingest->add_option("input", ingest_in, "Graph file or \"fixture\"")->required();
  ingest->add_option("--out", ingest_out, "Write the canonical graph (.nt gives N-Triples)");

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a synthetic graph from a seed");
  std::string gen_spec, gen_out;
  std::optional<std::uint64_t> gen_seed;
  std::optional<long> gen_providers, gen_receivers, gen_resources;
  generate->add_option("--spec", gen_spec, "Synthetic spec JSON file")->check(CLI::ExistingFile);
  generate->add_option("--seed", gen_seed, "RNG seed");
  generate->add_option("--providers", gen_providers, "Provider count");
  generate->add_option("--receivers", gen_receivers, "Receiver count");
  generate->add_option("--resources", gen_resources, "Resource count");
  generate->add_option("--out", gen_out, "Output file (.nt gives N-Triples)")->required();

  // index
  auto* index = app.add_subcommand("index", "Build the provider and receiver vector indexes");
  std::string index_out;
  index->add_option("--out", index_out, "Output directory")->required();

  // query
  auto* query = app.add_subcommand("query", "Answer one question");
  std::string question;
  bool as_json = false;
  query->add_option("question", question, "Natural-language question")->required();
  query->add_flag("--json", as_json, "Print the run-log record");
  query->add_option("--baseline", s.baseline, "Answering strategy")
      ->check(CLI::IsMember({"circugraphrag", "naive-rag", "standalone-llm"}));
  add_pipeline_flags(query, s);

  // repl
  auto* repl = app.add_subcommand("repl", "Answer questions read line by line from standard input");
  bool repl_json = false;
  repl->add_flag("--json", repl_json, "Print run-log records");
  add_pipeline_flags(repl, s);

  // bench
  auto* bench = app.add_subcommand("bench", "Run the QA benchmark");
  std::string bench_mode = "circugraphrag", bench_out, bench_cases;
  bool strict = false;
  bench->add_option("--baseline", bench_mode, "circugraphrag, naive-rag, standalone-llm or all")
      ->check(CLI::IsMember({"circugraphrag", "naive-rag", "standalone-llm", "all"}));
  bench->add_option("--out", bench_out, "Write the TSV report here instead of standard output");
  bench->add_option("--cases", bench_cases, "Case file (default: bundled cases)")->check(CLI::ExistingFile);
  bench->add_flag("--strict", strict, "Exit 1 when any case errors");
  add_pipeline_flags(bench, s);

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Compare with-template, no-template and fuzzy-template matching");
  std::string ablate_out, ablate_cases;
  ablate->add_option("--out", ablate_out, "Write the TSV report here");
  ablate->add_option("--cases", ablate_cases, "Case file")->check(CLI::ExistingFile);
  add_pipeline_flags(ablate, s);

  // consistency
  auto* consistency = app.add_subcommand("consistency", "Repeat the benchmark and measure stage agreement");
  std::size_t rounds = 5;
  std::string backend = "deterministic", cons_out, cons_cases;
  consistency->add_option("--rounds", rounds, "Number of rounds")->check(CLI::PositiveNumber);
  consistency->add_option("--backend", backend, "deterministic, mock-variant or configured")
      ->check(CLI::IsMember({"deterministic", "mock-variant", "configured"}));
  consistency->add_option("--out", cons_out, "Write the TSV report here");
  consistency->add_option("--cases", cons_cases, "Case file")->check(CLI::ExistingFile);
  add_pipeline_flags(consistency, s);

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Serve /v1/answer, /v1/health and /sparql over HTTP");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  add_pipeline_flags(serve_cmd, s);

  // export-fixture
  auto* export_fixture = app.add_subcommand("export-fixture", "Write the built-in fixture graph");
  std::string export_format = "ntriples", export_out;
  export_fixture->add_option("--format", export_format, "ntriples or fixture")
      ->check(CLI::IsMember({"ntriples", "fixture"}));
  export_fixture->add_option("--out", export_out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    s.load_file();

    if (*ingest) {
      auto g = open_graph(ingest_in);
      Text stats;
      check(cgr_graph_stats(g.get(), &stats.p));
      std::cout << stats.str() << "\n";
      if (!ingest_out.empty()) check(cgr_graph_save(g.get(), ingest_out.c_str()));
      return 0;
    }

    if (*generate) {
      json spec = gen_spec.empty() ? json::object() : json::parse(read_file(gen_spec));
      if (gen_seed) spec["seed"] = *gen_seed;
      if (gen_providers) spec["providers"] = *gen_providers;
      if (gen_receivers) spec["receivers"] = *gen_receivers;
      if (gen_resources) spec["resources"] = *gen_resources;
      cgr_graph* raw = nullptr;
      check(cgr_graph_generate(spec.dump().c_str(), &raw));
      GraphPtr g(raw, cgr_graph_free);
      check(cgr_graph_save(g.get(), gen_out.c_str()));
      Text stats;
      check(cgr_graph_stats(g.get(), &stats.p));
      std::cout << stats.str() << "\n";
      return 0;
    }

    if (*index) {
      auto g = open_graph(s.graph_source());
      check(cgr_graph_build_index(g.get(), index_out.c_str()));
      std::cout << "wrote " << index_out << "/provider.idx and " << index_out << "/receiver.idx\n";
      return 0;
    }

    if (*export_fixture) {
      auto g = open_graph("fixture");
      Text text;
      check(cgr_graph_serialize(g.get(), export_format.c_str(), &text.p));
      emit(export_out, text.str());
      return 0;
    }

    if (*query) {
      auto g = open_graph(s.graph_source());
      auto p = open_pipeline(g.get(), s.options());
      auto rec = answer(p.get(), question, s.overrides(), s.timings);
      if (as_json) {
        std::cout << rec.dump() << "\n";
      } else {
        print_answer(rec);
      }
      return 0;
    }

    if (*repl) {
      auto g = open_graph(s.graph_source());
      auto p = open_pipeline(g.get(), s.options());
      const bool tty = ::isatty(STDIN_FILENO);
      std::string line;
      while (true) {
        if (tty) std::cout << "cgr> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line == ":quit" || line == ":q") break;
        try {
          auto rec = answer(p.get(), line, s.overrides(), s.timings);
          if (repl_json) {
            std::cout << rec.dump() << "\n";
          } else {
            print_answer(rec);
            std::cout << "\n";
          }
        } catch (const Failure& f) {
          std::cerr << "error: " << cgr_status_name(f.status) << ": " << f.message << "\n";
        }
      }
      return 0;
    }

    if (*bench) {
      auto g = open_graph(s.graph_source());
      const auto options = s.options();
      auto p = open_pipeline(g.get(), options);
      const bool has_llm = options["llm"]["backend"] != "none";
      json modes = json::array();
      for (const char* b : {"circugraphrag", "naive-rag", "standalone-llm"}) {
        if (bench_mode != "all" && bench_mode != b) continue;
        if (bench_mode == "all" && std::string(b) == "standalone-llm" && !has_llm) continue;
        auto cfg = s.overrides();
        cfg["baseline"] = b;
        modes.push_back({{"label", b}, {"config", cfg}});
      }
      Text result;
      check(cgr_benchmark(p.get(), bench_cases.empty() ? nullptr : bench_cases.c_str(), modes.dump().c_str(), &result.p));
      auto r = json::parse(result.str());
      emit(bench_out, r["tsv"].get<std::string>());
      if (!bench_out.empty()) std::cout << r["summary"].get<std::string>();
      const auto errors = r["errors"].get<std::size_t>();
      if (errors > 0) std::cerr << errors << " case(s) failed\n";
      return strict && errors > 0 ? 1 : 0;
    }

    if (*ablate) {
      auto g = open_graph(s.graph_source());
      // Fuzzy mode drafts queries with an LLM; the bundled hints-only script
      // stands in when none is configured.
      auto p = open_pipeline(g.get(), s.options("mock", "fuzzy"));
      Text result;
      check(cgr_ablation(p.get(), ablate_cases.empty() ? nullptr : ablate_cases.c_str(), s.overrides().dump().c_str(),
                         &result.p));
      emit(ablate_out, json::parse(result.str())["tsv"].get<std::string>());
      return 0;
    }

    if (*consistency) {
      auto g = open_graph(s.graph_source());
      json options = s.options();
      json cfg = s.overrides();
      if (backend == "mock-variant") {
        options["llm"] = {{"backend", "mock"}, {"script", "variant"}};
        cfg["planner"] = "llm";
      } else if (backend == "deterministic") {
        options["llm"] = {{"backend", "none"}};
      }
      Text result;
      check(cgr_consistency(g.get(), options.dump().c_str(), cons_cases.empty() ? nullptr : cons_cases.c_str(),
                            cfg.dump().c_str(), rounds, &result.p));
      emit(cons_out, json::parse(result.str())["tsv"].get<std::string>());
      return 0;
    }

    if (*serve_cmd) return serve(s, host, port);
  } catch (const Failure& f) {
    std::cerr << "error: " << cgr_status_name(f.status) << ": " << f.message << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
