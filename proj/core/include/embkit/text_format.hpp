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

#ifndef EMBKIT_TEXT_FORMAT_HPP_
#define EMBKIT_TEXT_FORMAT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embkit/evalkit.hpp"
#include "embkit/identity_bank.hpp"

namespace embkit {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

// RFC 4180 quoting, applied only when the field needs it.
std::string csv_field(std::string_view s);
// Splits one CSV record, honouring double-quoted fields. Throws ParseError
// on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

// label,score,nearest_label
std::string format_similarity_csv(std::span<const SimilarityReport> reports);
// threshold,far,tar
std::string format_roc_csv(const RocCurve& curve);

}  // namespace embkit

#endif  // EMBKIT_TEXT_FORMAT_HPP_
