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

#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <string_view>

namespace circugraph::pipeline {

// Template Matching, Query Merging, Querying with Retrieved Context.
enum class Stage { kTm = 0, kQm = 1, kQrc = 2 };
inline constexpr std::array<Stage, 3> kStages = {Stage::kTm, Stage::kQm, Stage::kQrc};
std::string_view stage_name(Stage s);  // "TM", "QM", "QRC"

struct StageUsage {
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  std::chrono::microseconds wall{0};
  friend bool operator==(const StageUsage&, const StageUsage&) = default;
};

// Per-stage LLM token counts and wall time. total() is always the stage sum.
class UsageRecord {
 public:
  void add_tokens(Stage s, std::size_t input, std::size_t output);
  void add_wall(Stage s, std::chrono::microseconds t);
  const StageUsage& stage(Stage s) const { return stages_[static_cast<std::size_t>(s)]; }
  StageUsage total() const;
  friend bool operator==(const UsageRecord&, const UsageRecord&) = default;

 private:
  std::array<StageUsage, 3> stages_{};
};

// Monotonic time source. A fresh clock is made for every answer() call.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::microseconds now() = 0;
};
using ClockFactory = std::function<std::unique_ptr<Clock>()>;

ClockFactory steady_clock_factory();
// Each reading advances by `step`, so stage times depend only on the call
// sequence. Used where reports must be reproducible.
ClockFactory tick_clock_factory(std::chrono::microseconds step = std::chrono::microseconds(1000));

}  // namespace circugraph::pipeline
