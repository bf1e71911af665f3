// Copyright 2026 The embkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "embkit/error.hpp"

namespace embkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAntipodalPair: return "AntipodalPair";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kNeedTwoIdentities: return "NeedTwoIdentities";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kInsufficientImpostors: return "InsufficientImpostors";
    case ErrorCode::kEmptyFold: return "EmptyFold";
    case ErrorCode::kFoldCountMismatch: return "FoldCountMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kNaNPayload: return "NaNPayload";
    case ErrorCode::kDuplicateRow: return "DuplicateRow";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kOutputExists: return "OutputExists";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

Error Error::with_context(std::string_view context) const {
  return Error(code_, std::string(context) + ": " + detail_);
}

}  // namespace embkit
