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

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace circugraph::llm {

struct GenerationParams {
  double temperature = 0.7;
  double top_p = 0.9;
  int max_tokens = 4096;

  // Throws Error(kInvalidArgument) unless temperature >= 0, 0 < top_p <= 1
  // and max_tokens > 0.
  void validate() const;
};

struct ChatExchange {
  std::string system;
  std::string user;
  std::string response;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  std::chrono::microseconds latency{0};
  friend bool operator==(const ChatExchange&, const ChatExchange&) = default;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string name() const = 0;
  // Errors: kTransport, kAuth, RateLimited, ProtocolError, kDecode, kScriptMiss.
  virtual ChatExchange complete(const std::string& system, const std::string& user,
                                const GenerationParams& params = {}) const = 0;
};

// Where and how to reach a chat-completions endpoint.
struct ProviderConfig {
  std::string base_url;                     // e.g. https://api.example.com
  std::string chat_path = "/v1/chat/completions";
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{60000};

  // CGR_LLM_BASE_URL, CGR_LLM_API_KEY, CGR_LLM_MODEL, CGR_LLM_TIMEOUT_MS.
  // Fields already set are kept. Throws Error(kConfig) on a bad timeout.
  ProviderConfig with_env() const;
};

class HttpProvider final : public Provider {
 public:
  // Throws Error(kConfig) when base_url or model is empty.
  explicit HttpProvider(ProviderConfig config);
  std::string name() const override { return "http:" + config_.model; }
  ChatExchange complete(const std::string& system, const std::string& user,
                        const GenerationParams& params = {}) const override;

  // Request body for the given prompts (exposed for tests).
  std::string request_body(const std::string& system, const std::string& user, const GenerationParams& params) const;

 private:
  ProviderConfig config_;
};

// 16 lowercase hex digits of FNV-1a-64 over system, 0x1f, user.
std::string prompt_hash(std::string_view system, std::string_view user);

struct ScriptEntry {
  std::vector<std::string> responses;  // one per round, cycled
  std::size_t input_tokens = 0;        // 0: counted from the prompts
  std::size_t output_tokens = 0;       // 0: counted from the response
};

// Mock script JSON:
//   {"version": 1, "entries": [{"hash": "...", "responses": ["..."],
//                               "input_tokens": 0, "output_tokens": 0, "note": "..."}]}
class MockScript {
 public:
  static MockScript parse(std::string_view json);  // Error(kDecode) / Error(kConfig)
  static MockScript load_file(const std::string& path);
  // Bundled scripts live under data/mock/; `name` is "fuzzy", "variant", ...
  static MockScript bundled(std::string_view name);

  void add(std::string hash, ScriptEntry entry);
  const ScriptEntry* find(std::string_view hash) const;
  std::size_t size() const { return entries_.size(); }
  std::string to_json() const;

 private:
  std::map<std::string, ScriptEntry, std::less<>> entries_;
};

// Replays a script. `round` picks responses[round % size], so one mock
// instance per round reproduces a scripted sequence without shared state.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(std::shared_ptr<const MockScript> script, std::size_t round = 0);
  std::string name() const override { return "mock"; }
  ChatExchange complete(const std::string& system, const std::string& user,
                        const GenerationParams& params = {}) const override;
  std::size_t round() const { return round_; }

 private:
  std::shared_ptr<const MockScript> script_;
  std::size_t round_;
};

}  // namespace circugraph::llm
