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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circugraph {

// Every failure raised by the core carries one of these codes. The C API maps
// them one-to-one onto cgr_status values.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kInvariantViolation,
  kDuplicateDefinition,
  kInvalidSpec,
  kSyntax,
  kUnboundVariable,
  kTypeMismatch,
  kTransport,
  kProtocol,
  kDecode,
  kMissingBinding,
  kKindMismatch,
  kEmptyInput,
  kEmptyIndex,
  kNoMatch,
  kIncompatibleOutputs,
  kVariableCapture,
  kInvalidPlan,
  kAuth,
  kRateLimited,
  kScriptMiss,
  kSchemaViolation,
  kEmptySequence,
  kEmptyRounds,
  kConfig,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Graph file could not be tokenized; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string entity, std::string rule, std::size_t line = 0)
      : Error(ErrorCode::kInvariantViolation, format(entity, rule, line)),
        entity_(std::move(entity)),
        rule_(std::move(rule)),
        line_(line) {}

  const std::string& entity() const noexcept { return entity_; }
  const std::string& rule() const noexcept { return rule_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& entity, const std::string& rule,
                            std::size_t line) {
    std::string out = line ? "line " + std::to_string(line) + ": " : std::string();
    return out + entity + ": " + rule;
  }

  std::string entity_;
  std::string rule_;
  std::size_t line_;
};

// Query text rejected by the SPARQL-subset parser; `position` is a byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error(ErrorCode::kSyntax,
              "syntax error at offset " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ProtocolError : public Error {
 public:
  ProtocolError(int status, const std::string& message)
      : Error(ErrorCode::kProtocol, "HTTP " + std::to_string(status) + ": " + message),
        status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class RateLimited : public Error {
 public:
  RateLimited(int retry_after_seconds, const std::string& message)
      : Error(ErrorCode::kRateLimited, message), retry_after_(retry_after_seconds) {}
  int retry_after_seconds() const noexcept { return retry_after_; }

 private:
  int retry_after_;
};

}  // namespace circugraph
