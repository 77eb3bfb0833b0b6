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

#include "common/error.hpp"

namespace circugraph {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kDuplicateDefinition: return "DuplicateDefinition";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kTransport: return "TransportError";
    case ErrorCode::kProtocol: return "ProtocolError";
    case ErrorCode::kDecode: return "DecodeError";
    case ErrorCode::kMissingBinding: return "MissingBinding";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyIndex: return "EmptyIndex";
    case ErrorCode::kNoMatch: return "NoMatch";
    case ErrorCode::kIncompatibleOutputs: return "IncompatibleOutputs";
    case ErrorCode::kVariableCapture: return "VariableCapture";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kAuth: return "AuthError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kScriptMiss: return "ScriptMiss";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kEmptyRounds: return "EmptyRounds";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace circugraph
