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

#include <atomic>
#include <random>
#include <thread>

#include <httplib.h>

#include "common/error.hpp"
#include "eval/cases.hpp"
#include "kg/fixture.hpp"
#include "pipeline/pipeline.hpp"
#include "sparql/evaluator.hpp"
#include "sparql/remote.hpp"
#include "sparql/results.hpp"
#include "sparql/syntax.hpp"
#include "sparql_oracle.hpp"

namespace cg = circugraph;
namespace kg = circugraph::kg;
namespace pl = circugraph::pipeline;
namespace sp = circugraph::sparql;

namespace {

// Loopback SPARQL 1.1 endpoint over whatever store is current.
class LocalEndpoint {
 public:
  LocalEndpoint() {
    server_.Post("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls;
      if (!token.empty() && req.get_header_value("Authorization") != "Bearer " + token) {
        res.status = 401;
        return;
      }
      if (req.get_header_value("Content-Type") != "application/sparql-query") {
        res.status = 415;
        return;
      }
      try {
        auto q = sp::parse_query(req.body);
        res.set_content(sp::to_sparql_json(sp::evaluate(q, *store)), "application/sparql-results+json");
      } catch (const cg::Error& e) {
        res.status = 400;
        res.set_content(e.what(), "text/plain");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalEndpoint() {
    server_.stop();
    thread_.join();
  }
  sp::Endpoint endpoint() const {
    sp::Endpoint e;
    e.url = "http://127.0.0.1:" + std::to_string(port_) + "/sparql";
    if (!token.empty()) e.bearer_token = token;
    e.timeout = std::chrono::milliseconds(5000);
    return e;
  }

  const kg::TripleStore* store = nullptr;
  std::string token;
  std::atomic<int> calls{0};

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST(RemoteEndpoint, RandomQueriesMatchLocalEvaluation) {
  LocalEndpoint server;
  std::mt19937_64 rng(99);
  int nonempty = 0;
  for (int i = 0; i < 150; ++i) {
    auto g = cg::testing::random_graph(rng, 300);
    server.store = &g.store;
    auto q = cg::testing::random_query(rng, g);
    auto local = sp::evaluate(q, g.store);
    auto remote = sp::execute_remote(q, server.endpoint());
    ASSERT_EQ(remote, local) << sp::serialize(q);
    nonempty += !local.rows.empty();
  }
  EXPECT_GT(nonempty, 20);
}

TEST(RemoteEndpoint, PipelineAnswersMatchLocal) {
  auto store = std::make_shared<const kg::TripleStore>(kg::fixture_graph());
  LocalEndpoint server;
  server.store = store.get();
  server.token = "s3cret";

  pl::PipelineResources r;
  r.store = store;
  r.endpoint = server.endpoint();
  r.clock = pl::tick_clock_factory();
  pl::Pipeline p(std::move(r));
  pl::PipelineConfig local, remote;
  remote.execution = pl::Execution::kRemote;
  for (const auto& c : cg::eval::bundled_cases()) {
    const int before = server.calls;
    auto a = p.answer(c.question, local);
    auto b = p.answer(c.question, remote);
    EXPECT_EQ(a.answer.text, b.answer.text) << c.id;
    EXPECT_EQ(a.answer.provenance.rows, b.answer.provenance.rows) << c.id;
    EXPECT_TRUE(b.answer.grounded);
    EXPECT_GT(server.calls, before);
  }
}

TEST(RemoteEndpoint, FailuresSurface) {
  auto store = std::make_shared<const kg::TripleStore>(kg::fixture_graph());
  LocalEndpoint server;
  server.store = store.get();
  server.token = "right";
  auto ep = server.endpoint();
  ep.bearer_token = "wrong";
  auto q = sp::parse_query("SELECT ?s WHERE { ?s <http://www.w3.org/2000/01/rdf-schema#label> ?l . }");
  try {
    sp::execute_remote(q, ep);
    FAIL();
  } catch (const cg::Error& e) {
    EXPECT_EQ(e.code(), cg::ErrorCode::kProtocol);
  }

  pl::PipelineResources r;
  r.store = store;
  r.endpoint = sp::Endpoint{"http://127.0.0.1:1/sparql", std::nullopt, std::chrono::milliseconds(500)};
  pl::Pipeline p(std::move(r));
  pl::PipelineConfig cfg;
  cfg.execution = pl::Execution::kRemote;
  try {
    p.answer(cg::eval::bundled_cases()[0].question, cfg);
    FAIL();
  } catch (const cg::Error& e) {
    EXPECT_EQ(e.code(), cg::ErrorCode::kTransport);
  }
}
