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

#include "llm/llm.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "common/bundled_data.hpp"
#include "common/error.hpp"
#include "common/http.hpp"
#include "common/tokens.hpp"

namespace circugraph::llm {

using nlohmann::json;

void GenerationParams::validate() const {
  if (!(temperature >= 0)) throw Error(ErrorCode::kInvalidArgument, "temperature must be >= 0");
  if (!(top_p > 0 && top_p <= 1)) throw Error(ErrorCode::kInvalidArgument, "top_p must be in (0, 1]");
  if (max_tokens <= 0) throw Error(ErrorCode::kInvalidArgument, "max_tokens must be positive");
}

ProviderConfig ProviderConfig::with_env() const {
  ProviderConfig out = *this;
  auto env = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  if (out.base_url.empty()) out.base_url = env("CGR_LLM_BASE_URL");
  if (out.api_key.empty()) out.api_key = env("CGR_LLM_API_KEY");
  if (out.model.empty()) out.model = env("CGR_LLM_MODEL");
  if (auto t = env("CGR_LLM_TIMEOUT_MS"); !t.empty()) {
    try {
      std::size_t used = 0;
      const long ms = std::stol(t, &used);
      if (used != t.size() || ms <= 0) throw std::invalid_argument(t);
      out.timeout = std::chrono::milliseconds(ms);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "CGR_LLM_TIMEOUT_MS must be a positive integer, got " + t);
    }
  }
  return out;
}

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw Error(ErrorCode::kConfig, "LLM base URL is not configured");
  if (config_.model.empty()) throw Error(ErrorCode::kConfig, "LLM model is not configured");
}

std::string HttpProvider::request_body(const std::string& system, const std::string& user,
                                       const GenerationParams& params) const {
  json body = {
      {"model", config_.model},
      {"messages", json::array({{{"role", "system"}, {"content", system}}, {{"role", "user"}, {"content", user}}})},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
      {"max_tokens", params.max_tokens},
  };
  return body.dump();
}

ChatExchange HttpProvider::complete(const std::string& system, const std::string& user,
                                    const GenerationParams& params) const {
  params.validate();
  HttpRequest req;
  auto base = config_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  req.url = base + config_.chat_path;
  req.body = request_body(system, user, params);
  req.content_type = "application/json";
  if (!config_.api_key.empty()) req.headers.emplace_back("Authorization", "Bearer " + config_.api_key);
  req.timeout = config_.timeout;

  const auto start = std::chrono::steady_clock::now();
  auto resp = http_post(req);
  const auto latency =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);

  if (resp.status == 401 || resp.status == 403) {
    throw Error(ErrorCode::kAuth, "LLM endpoint rejected the credentials (HTTP " + std::to_string(resp.status) + ")");
  }
  if (resp.status == 429) {
    int retry = 0;
    if (auto it = resp.headers.find("retry-after"); it != resp.headers.end()) {
      retry = std::atoi(it->second.c_str());
    }
    throw RateLimited(retry, "LLM endpoint rate limited the request");
  }
  if (resp.status != 200) throw ProtocolError(resp.status, resp.body.substr(0, 200));

  ChatExchange ex{system, user, {}, 0, 0, latency};
  try {
    const auto j = json::parse(resp.body);
    ex.response = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      ex.input_tokens = j["usage"].value("prompt_tokens", std::size_t{0});
      ex.output_tokens = j["usage"].value("completion_tokens", std::size_t{0});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("unexpected chat-completion response: ") + e.what());
  }
  if (ex.input_tokens == 0) ex.input_tokens = count_tokens(system) + count_tokens(user);
  if (ex.output_tokens == 0) ex.output_tokens = count_tokens(ex.response);
  return ex;
}

std::string prompt_hash(std::string_view system, std::string_view user) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (unsigned char c : system) feed(c);
  feed(0x1f);
  for (unsigned char c : user) feed(c);
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

MockScript MockScript::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("mock script is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("version", 0) != 1) throw Error(ErrorCode::kConfig, "mock script version must be 1");
  MockScript out;
  try {
    for (const auto& e : j.at("entries")) {
      ScriptEntry entry;
      entry.responses = e.at("responses").get<std::vector<std::string>>();
      if (entry.responses.empty()) throw Error(ErrorCode::kConfig, "mock entry without responses");
      entry.input_tokens = e.value("input_tokens", std::size_t{0});
      entry.output_tokens = e.value("output_tokens", std::size_t{0});
      auto hash = e.at("hash").get<std::string>();
      if (out.find(hash)) throw Error(ErrorCode::kConfig, "duplicate mock hash " + hash);
      out.add(std::move(hash), std::move(entry));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("malformed mock script: ") + e.what());
  }
  return out;
}

MockScript MockScript::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open mock script " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

MockScript MockScript::bundled(std::string_view name) {
  const std::string file = "mock/" + std::string(name) + ".json";
  auto text = bundled_file(file);
  if (!text) throw Error(ErrorCode::kConfig, "no bundled mock script " + file);
  return parse(*text);
}

void MockScript::add(std::string hash, ScriptEntry entry) { entries_[std::move(hash)] = std::move(entry); }

const ScriptEntry* MockScript::find(std::string_view hash) const {
  auto it = entries_.find(hash);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string MockScript::to_json() const {
  json entries = json::array();
  for (const auto& [hash, e] : entries_) {
    json item = {{"hash", hash}, {"responses", e.responses}};
    if (e.input_tokens) item["input_tokens"] = e.input_tokens;
    if (e.output_tokens) item["output_tokens"] = e.output_tokens;
    entries.push_back(item);
  }
  return json{{"version", 1}, {"entries", entries}}.dump(2) + "\n";
}

MockProvider::MockProvider(std::shared_ptr<const MockScript> script, std::size_t round)
    : script_(std::move(script)), round_(round) {
  if (!script_) throw Error(ErrorCode::kConfig, "mock provider needs a script");
}

ChatExchange MockProvider::complete(const std::string& system, const std::string& user,
                                    const GenerationParams& params) const {
  params.validate();
  const auto hash = prompt_hash(system, user);
  const auto* e = script_->find(hash);
  if (!e) throw Error(ErrorCode::kScriptMiss, "no scripted response for prompt " + hash);
  ChatExchange ex{system, user, e->responses[round_ % e->responses.size()], e->input_tokens, e->output_tokens, {}};
  if (ex.input_tokens == 0) ex.input_tokens = count_tokens(system) + count_tokens(user);
  if (ex.output_tokens == 0) ex.output_tokens = count_tokens(ex.response);
  return ex;
}

}  // namespace circugraph::llm
