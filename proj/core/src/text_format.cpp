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

#include "embkit/text_format.hpp"

#include <charconv>

#include "embkit/error.hpp"

namespace embkit {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\r' && c != '\n';
  };
  std::size_t b = 0;
  while (b < s.size() && !not_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && !not_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quote");
  return fields;
}

std::string format_similarity_csv(std::span<const SimilarityReport> reports) {
  std::string out = "label,score,nearest_label\n";
  for (const auto& r : reports) {
    out += csv_field(r.label);
    out += ',';
    out += format_double(r.score);
    out += ',';
    out += csv_field(r.nearest_label);
    out += '\n';
  }
  return out;
}

std::string format_roc_csv(const RocCurve& curve) {
  std::string out = "threshold,far,tar\n";
  for (const auto& p : curve.points) {
    out += format_double(p.threshold);
    out += ',';
    out += format_double(p.far);
    out += ',';
    out += format_double(p.tar);
    out += '\n';
  }
  return out;
}

}  // namespace embkit
