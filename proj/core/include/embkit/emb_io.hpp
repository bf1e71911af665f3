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

#ifndef EMBKIT_EMB_IO_HPP_
#define EMBKIT_EMB_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "embkit/evalkit.hpp"
#include "embkit/identity_bank.hpp"
#include "embkit/matrix.hpp"

namespace embkit {

// EMB1 layout, all little-endian:
//   bytes 0..3   "EMB1"
//   bytes 4..7   uint32 row count
//   bytes 8..11  uint32 dimension
//   then count * dim float32 values, row-major.
inline constexpr std::string_view kEmbMagic = "EMB1";
inline constexpr std::size_t kEmbHeaderBytes = 12;

// Values are narrowed to float32; non-finite results are rejected.
std::string encode_emb(const RowMatrix& rows);
// Throws BadMagic, TruncatedFile (any size mismatch) or NaNPayload.
RowMatrix decode_emb(std::string_view bytes);

RowMatrix read_emb(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes `contents` to a sibling temporary file and renames it over `path`
// on commit(). Destroying an uncommitted OutputFile removes the temporary,
// so a failed run never leaves a partial file at `path`.
class OutputFile {
 public:
  OutputFile(std::filesystem::path path, bool force);
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;
  OutputFile(OutputFile&& other) noexcept;
  OutputFile& operator=(OutputFile&&) = delete;
  ~OutputFile();

  const std::filesystem::path& path() const { return path_; }
  void write(std::string_view contents);
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  bool committed_ = false;
};

void write_file(const std::filesystem::path& path, std::string_view contents,
                bool force);
void write_emb(const std::filesystem::path& path, const RowMatrix& rows,
               bool force);

// One JSON Lines record mapping a label to an EMB1 row. Fields other than
// "label" and "row" are kept in `extra` and written back in their order.
struct LabelEntry {
  std::string label;
  std::size_t row = 0;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

std::vector<LabelEntry> parse_labels(std::string_view text,
                                     std::string_view source);
std::vector<LabelEntry> read_labels(const std::filesystem::path& path);
std::string format_label_line(const LabelEntry& entry);
std::string format_labels(const std::vector<LabelEntry>& entries);

// Throws DuplicateRow or IndexOutOfRange naming the manifest line.
void validate_labels(const std::vector<LabelEntry>& entries,
                     std::size_t row_count);

// Manifest order, one LabeledVector per entry.
std::vector<LabeledVector> join_labels(const std::vector<LabelEntry>& entries,
                                       const RowMatrix& rows);

// CSV with header a,b,label[,group][,fold]; label is 1 (genuine) or 0.
std::vector<VerificationPair> parse_pairs(std::string_view text,
                                          std::string_view source);
std::vector<VerificationPair> read_pairs(const std::filesystem::path& path);
std::string format_pairs(const std::vector<VerificationPair>& pairs);

}  // namespace embkit

#endif  // EMBKIT_EMB_IO_HPP_
