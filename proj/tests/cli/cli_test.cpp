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
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <string>

#include <httplib.h>
#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the CLI with a clean environment; stderr is dropped unless merged.
Run cgr(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
  const std::string cmd = "env -u CGR_GRAPH -u CGR_LLM_BACKEND -u CGR_SPARQL_ENDPOINT " + env + " " + CGR_BIN + " " +
                          args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kCase1 = "Find out the resource that is coded with EWC code 080121 and HS code 810330.";

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("cgr_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, QueryFixtureCase1) {
  auto r = cgr("query --graph fixture " + quote(kCase1));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("answer: Waste paint\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("plan: (T01 ∩ T02)"), std::string::npos);
  EXPECT_NE(r.out.find("query: "), std::string::npos);
}

TEST(Cli, QueryJsonRecord) {
  auto r = cgr("query --json " + quote(kCase1));
  ASSERT_EQ(r.exit_code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "circugraph.run/1");
  EXPECT_EQ(j["answer"], "Waste paint");
  EXPECT_EQ(cgr("query --json " + quote(kCase1)).out, r.out);
}

TEST(Cli, NoTemplateFallsBack) {
  auto r = cgr("query --mode no-template " + quote(kCase1));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("No matches were found in the database."), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cgr("query --graph missing.nt " + quote(kCase1)).exit_code, 1);
  EXPECT_EQ(cgr("query").exit_code, 2);
  EXPECT_EQ(cgr("frobnicate").exit_code, 2);
  EXPECT_EQ(cgr("query --mode sideways x").exit_code, 2);
  EXPECT_EQ(cgr("--help").exit_code, 0);
  EXPECT_EQ(cgr("query --llm mock --mock-script nope " + quote(kCase1)).exit_code, 1);
}

TEST(Cli, Precedence) {
  auto cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"graph": "/nonexistent/from-file.nt", "pipeline": {"matcher_mode": "no-template"}})";
  // File alone: graph from the file fails.
  auto r = cgr("--config " + cfg.string() + " query " + quote(kCase1), true);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("from-file"), std::string::npos);
  // Environment beats the file.
  r = cgr("--config " + cfg.string() + " query " + quote(kCase1), true, "CGR_GRAPH=fixture");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("No matches were found"), std::string::npos);
  // Flags beat both.
  r = cgr("--config " + cfg.string() + " query --graph fixture --mode with-template " + quote(kCase1), true,
          "CGR_GRAPH=/nonexistent/from-env.nt");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("answer: Waste paint"), std::string::npos);
}

TEST(Cli, BenchAblateConsistency) {
  auto bench = cgr("bench --graph fixture --baseline circugraphrag");
  ASSERT_EQ(bench.exit_code, 0);
  int rows = 0;
  std::size_t pos = 0;
  while ((pos = bench.out.find("\tcircugraphrag\t1\t1.000000\t1.000000\t1.000000\t", pos)) != std::string::npos) {
    ++rows;
    ++pos;
  }
  EXPECT_EQ(rows, 6) << bench.out;
  EXPECT_EQ(cgr("bench --graph fixture --baseline circugraphrag").out, bench.out);

  auto ablate = cgr("ablate");
  ASSERT_EQ(ablate.exit_code, 0);
  EXPECT_NE(ablate.out.find("with-template\t1\t1\t1\t1\t1\t1\t1.000000"), std::string::npos) << ablate.out;
  EXPECT_NE(ablate.out.find("no-template\t0\t0\t0\t0\t0\t0\t0.000000"), std::string::npos);
  EXPECT_NE(ablate.out.find("fuzzy-template\t"), std::string::npos);

  auto cons = cgr("consistency --rounds 5 --backend mock-variant");
  ASSERT_EQ(cons.exit_code, 0);
  EXPECT_NE(cons.out.find("mean\t1.000000\t0.600000"), std::string::npos) << cons.out;
}

TEST(Cli, DataLifecycleIsDeterministic) {
  const auto a = scratch("a.nt"), b = scratch("b.nt");
  ASSERT_EQ(cgr("generate --seed 3 --providers 4 --receivers 4 --resources 30 --out " + a.string()).exit_code, 0);
  ASSERT_EQ(cgr("generate --seed 3 --providers 4 --receivers 4 --resources 30 --out " + b.string()).exit_code, 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());

  const auto fx = scratch("fixture.nt"), again = scratch("again.nt");
  ASSERT_EQ(cgr("export-fixture --out " + fx.string()).exit_code, 0);
  auto ingest = cgr("ingest " + fx.string() + " --out " + again.string());
  ASSERT_EQ(ingest.exit_code, 0);
  EXPECT_EQ(json::parse(ingest.out)["resources"], 12);
  EXPECT_EQ(slurp(fx), slurp(again));

  const auto i1 = scratch("idx1"), i2 = scratch("idx2");
  ASSERT_EQ(cgr("index --graph " + fx.string() + " --out " + i1.string()).exit_code, 0);
  ASSERT_EQ(cgr("index --graph " + fx.string() + " --out " + i2.string()).exit_code, 0);
  EXPECT_EQ(slurp(i1 / "provider.idx"), slurp(i2 / "provider.idx"));
  EXPECT_EQ(slurp(i1 / "receiver.idx"), slurp(i2 / "receiver.idx"));
  auto q = cgr("query --graph " + fx.string() + " --index " + i1.string() + " " + quote(kCase1));
  EXPECT_NE(q.out.find("answer: Waste paint"), std::string::npos);

  auto bad = scratch("bad.nt");
  std::ofstream(bad) << "<a> <b> .\n";
  EXPECT_EQ(cgr("ingest " + bad.string()).exit_code, 1);
  fs::remove_all(a.parent_path());
}

TEST(Cli, Repl) {
  auto in = scratch("questions.txt");
  std::ofstream(in) << kCase1 << "\n\nhello\n:quit\nnever answered\n";
  auto r = cgr("repl < " + in.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("answer: Waste paint"), std::string::npos);
  EXPECT_NE(r.out.find("answer: No matches were found in the database."), std::string::npos);
  EXPECT_EQ(r.out.find("never answered"), std::string::npos);
}

TEST(Cli, Serve) {
  int fds[2];
  ASSERT_EQ(::pipe(fds), 0);
  const pid_t pid = ::fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::close(fds[0]);
    ::execl(CGR_BIN, CGR_BIN, "serve", "--port", "0", "--graph", "fixture", static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(fds[1]);
  FILE* out = ::fdopen(fds[0], "r");
  char line[256] = {};
  ASSERT_NE(std::fgets(line, sizeof line, out), nullptr);
  const std::string first(line);
  const auto colon = first.rfind(':');
  const int port = std::stoi(first.substr(colon + 1));
  ASSERT_NE(std::fgets(line, sizeof line, out), nullptr);  // "ready"

  httplib::Client c("127.0.0.1", port);
  auto health = c.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->body, "ok\n");

  const std::string case3 = json{{"question",
                                  "Find out the least value of GWP100 among the receivers coded with NACE code 3822."}}
                                .dump();
  auto res = c.Post("/v1/answer", case3, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->body.find("0.008826959"), std::string::npos) << res->body;

  auto bad = c.Post("/v1/answer", "{oops", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto bad_cfg = c.Post("/v1/answer", R"({"question": "x", "config": {"top_k_answers": 0}})", "application/json");
  ASSERT_TRUE(bad_cfg);
  EXPECT_EQ(bad_cfg->status, 400);

  std::vector<std::future<std::string>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [port, &case3] {
      httplib::Client cc("127.0.0.1", port);
      auto r = cc.Post("/v1/answer", case3, "application/json");
      return r ? r->body : std::string("failed");
    }));
  }
  for (auto& j : jobs) EXPECT_EQ(j.get(), res->body);

  auto sparql = c.Post("/sparql", "SELECT ?l WHERE { ?r <http://www.w3.org/2000/01/rdf-schema#label> ?l . } LIMIT 1",
                       "application/sparql-query");
  ASSERT_TRUE(sparql);
  EXPECT_EQ(sparql->status, 200);
  EXPECT_EQ(json::parse(sparql->body)["results"]["bindings"].size(), 1u);

  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  std::fclose(out);
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
}
