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

#include "pipeline/usage.hpp"

namespace circugraph::pipeline {

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kTm: return "TM";
    case Stage::kQm: return "QM";
    case Stage::kQrc: return "QRC";
  }
  return "?";
}

void UsageRecord::add_tokens(Stage s, std::size_t input, std::size_t output) {
  auto& st = stages_[static_cast<std::size_t>(s)];
  st.input_tokens += input;
  st.output_tokens += output;
}

void UsageRecord::add_wall(Stage s, std::chrono::microseconds t) { stages_[static_cast<std::size_t>(s)].wall += t; }

StageUsage UsageRecord::total() const {
  StageUsage t;
  for (const auto& s : stages_) {
    t.input_tokens += s.input_tokens;
    t.output_tokens += s.output_tokens;
    t.wall += s.wall;
  }
  return t;
}

namespace {

class SteadyClock final : public Clock {
 public:
  std::chrono::microseconds now() override {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now().time_since_epoch());
  }
};

class TickClock final : public Clock {
 public:
  explicit TickClock(std::chrono::microseconds step) : step_(step) {}
  std::chrono::microseconds now() override { return t_ += step_; }

 private:
  std::chrono::microseconds step_;
  std::chrono::microseconds t_{0};
};

}  // namespace

ClockFactory steady_clock_factory() {
  return [] { return std::make_unique<SteadyClock>(); };
}

ClockFactory tick_clock_factory(std::chrono::microseconds step) {
  return [step] { return std::make_unique<TickClock>(step); };
}

}  // namespace circugraph::pipeline
