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

#ifndef EMBKIT_ERROR_HPP_
#define EMBKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace embkit {

// Every failure raised by the library carries one of these codes. The CLI
// prints the code name verbatim so scripts can match on it.
enum class ErrorCode {
  kInvalidArgument,
  kZeroVector,
  kDimensionMismatch,
  kAntipodalPair,
  kEmptySet,
  kNeedTwoIdentities,
  kKTooLarge,
  kIndexOutOfRange,
  kEmptyClass,
  kInsufficientImpostors,
  kEmptyFold,
  kFoldCountMismatch,
  kBadMagic,
  kTruncatedFile,
  kNaNPayload,
  kDuplicateRow,
  kParseError,
  kConfigError,
  kOutputExists,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

  // Returns a copy whose detail is prefixed with `context` ("file.emb: ...").
  Error with_context(std::string_view context) const;

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace embkit

#endif  // EMBKIT_ERROR_HPP_
