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

#include "embkit/emb_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <unordered_map>

#include "embkit/error.hpp"
#include "embkit/text_format.hpp"

namespace embkit {

namespace fs = std::filesystem;

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
}

std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(
             static_cast<unsigned char>(bytes[offset + i]))
         << (8 * i);
  }
  return v;
}

std::string path_string(const fs::path& p) { return p.string(); }

}  // namespace

std::string encode_emb(const RowMatrix& rows) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (rows.rows() > kMax || rows.cols() > kMax) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix too large for EMB1 (" + std::to_string(rows.rows()) +
                    " x " + std::to_string(rows.cols()) + ")");
  }
  std::string out;
  out.reserve(kEmbHeaderBytes + 4 * rows.rows() * rows.cols());
  out.append(kEmbMagic);
  put_u32(out, static_cast<std::uint32_t>(rows.rows()));
  put_u32(out, static_cast<std::uint32_t>(rows.cols()));
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (double v : rows.row(r)) {
      const float f = static_cast<float>(v);
      if (!std::isfinite(f)) {
        throw Error(ErrorCode::kNaNPayload,
                    "row " + std::to_string(r) +
                        " holds a value that is not a finite float32");
      }
      put_u32(out, std::bit_cast<std::uint32_t>(f));
    }
  }
  return out;
}

RowMatrix decode_emb(std::string_view bytes) {
  if (bytes.size() >= kEmbMagic.size() &&
      bytes.substr(0, kEmbMagic.size()) != kEmbMagic) {
    throw Error(ErrorCode::kBadMagic, "missing EMB1 magic");
  }
  if (bytes.size() < kEmbHeaderBytes) {
    throw Error(ErrorCode::kTruncatedFile,
                "file holds " + std::to_string(bytes.size()) +
                    " bytes, shorter than the 12-byte header");
  }
  const std::uint64_t count = get_u32(bytes, 4);
  const std::uint64_t dim = get_u32(bytes, 8);
  // Both factors are below 2^32, so the product fits in 64 bits.
  const std::uint64_t values = count * dim;
  const std::uint64_t expected = kEmbHeaderBytes + 4 * values;
  if (values > (std::numeric_limits<std::uint64_t>::max() - 12) / 4 ||
      bytes.size() != expected) {
    throw Error(ErrorCode::kTruncatedFile,
                "header declares " + std::to_string(count) + " x " +
                    std::to_string(dim) + " (" + std::to_string(expected) +
                    " bytes) but file holds " + std::to_string(bytes.size()) +
                    " bytes");
  }
  std::vector<double> data(values);
  for (std::uint64_t i = 0; i < values; ++i) {
    const float f =
        std::bit_cast<float>(get_u32(bytes, kEmbHeaderBytes + 4 * i));
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::kNaNPayload,
                  "row " + std::to_string(i / dim) + " column " +
                      std::to_string(i % dim) + " is not finite");
    }
    data[i] = f;
  }
  return RowMatrix(count, dim, std::move(data));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, path_string(path) + ": cannot open");
  }
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::kIoError, path_string(path) + ": read failed");
  }
  return contents;
}

RowMatrix read_emb(const fs::path& path) {
  const std::string bytes = read_file(path);
  try {
    return decode_emb(bytes);
  } catch (const Error& e) {
    throw e.with_context(path_string(path));
  }
}

OutputFile::OutputFile(fs::path path, bool force) : path_(std::move(path)) {
  std::error_code ec;
  if (!force && fs::exists(path_, ec)) {
    throw Error(ErrorCode::kOutputExists,
                path_string(path_) + ": exists (pass --force to overwrite)");
  }
  std::random_device rd;
  temp_ = path_;
  temp_ += ".tmp" + std::to_string(rd());
}

OutputFile::OutputFile(OutputFile&& other) noexcept
    : path_(std::move(other.path_)),
      temp_(std::move(other.temp_)),
      committed_(other.committed_) {
  other.committed_ = true;
}

OutputFile::~OutputFile() {
  if (!committed_) {
    std::error_code ec;
    fs::remove(temp_, ec);
  }
}

void OutputFile::write(std::string_view contents) {
  std::ofstream out(temp_, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, path_string(path_) + ": cannot create");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    throw Error(ErrorCode::kIoError, path_string(path_) + ": write failed");
  }
}

void OutputFile::commit() {
  std::error_code ec;
  fs::rename(temp_, path_, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                path_string(path_) + ": rename failed: " + ec.message());
  }
  committed_ = true;
}

void write_file(const fs::path& path, std::string_view contents, bool force) {
  OutputFile out(path, force);
  out.write(contents);
  out.commit();
}

void write_emb(const fs::path& path, const RowMatrix& rows, bool force) {
  write_file(path, encode_emb(rows), force);
}

std::vector<LabelEntry> parse_labels(std::string_view text,
                                     std::string_view source) {
  std::vector<LabelEntry> entries;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no);
    nlohmann::ordered_json obj;
    try {
      obj = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError, where + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kParseError, where + ": expected a JSON object");
    }
    LabelEntry entry;
    bool has_label = false;
    bool has_row = false;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "label") {
        if (!it.value().is_string()) {
          throw Error(ErrorCode::kParseError,
                      where + ": \"label\" must be a string");
        }
        entry.label = it.value().get<std::string>();
        has_label = true;
      } else if (it.key() == "row") {
        if (!it.value().is_number_unsigned()) {
          throw Error(ErrorCode::kParseError,
                      where + ": \"row\" must be a non-negative integer");
        }
        entry.row = it.value().get<std::size_t>();
        has_row = true;
      } else {
        entry.extra[it.key()] = it.value();
      }
    }
    if (!has_label || !has_row) {
      throw Error(ErrorCode::kParseError,
                  where + ": record needs both \"label\" and \"row\"");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<LabelEntry> read_labels(const fs::path& path) {
  return parse_labels(read_file(path), path_string(path));
}

std::string format_label_line(const LabelEntry& entry) {
  nlohmann::ordered_json obj;
  obj["label"] = entry.label;
  obj["row"] = entry.row;
  for (auto it = entry.extra.begin(); it != entry.extra.end(); ++it) {
    obj[it.key()] = it.value();
  }
  return obj.dump();
}

std::string format_labels(const std::vector<LabelEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += format_label_line(e);
    out += '\n';
  }
  return out;
}

void validate_labels(const std::vector<LabelEntry>& entries,
                     std::size_t row_count) {
  std::unordered_map<std::size_t, std::size_t> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::size_t row = entries[i].row;
    if (row >= row_count) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "entry " + std::to_string(i + 1) + " (label '" +
                      entries[i].label + "') references row " +
                      std::to_string(row) + " of " +
                      std::to_string(row_count));
    }
    auto [it, inserted] = seen.emplace(row, i);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateRow,
                  "row " + std::to_string(row) + " listed by entries " +
                      std::to_string(it->second + 1) + " and " +
                      std::to_string(i + 1));
    }
  }
}

std::vector<LabeledVector> join_labels(const std::vector<LabelEntry>& entries,
                                       const RowMatrix& rows) {
  validate_labels(entries, rows.rows());
  std::vector<LabeledVector> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    const auto r = rows.row(e.row);
    out.push_back(LabeledVector{e.label, std::vector<double>(r.begin(),
                                                             r.end())});
  }
  return out;
}

namespace {

template <typename T>
T parse_uint(std::string_view field, const std::string& where,
             std::string_view column) {
  T value{};
  const std::string_view f = trim(field);
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
  if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
    throw Error(ErrorCode::kParseError,
                where + ": column '" + std::string(column) +
                    "' expects a non-negative integer, got '" +
                    std::string(f) + "'");
  }
  return value;
}

}  // namespace

std::vector<VerificationPair> parse_pairs(std::string_view text,
                                          std::string_view source) {
  const auto lines = split(text, '\n');
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t first_data = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!trim(lines[i]).empty()) {
      header = split_csv_line(trim(lines[i]));
      first_data = i + 1;
      line_no = i + 1;
      break;
    }
  }
  const std::string head_where =
      std::string(source) + ":" + std::to_string(line_no);
  if (header.empty()) {
    throw Error(ErrorCode::kParseError,
                std::string(source) + ": missing header a,b,label");
  }
  for (auto& h : header) h = std::string(trim(h));
  int col_group = -1;
  int col_fold = -1;
  if (header.size() < 3 || header[0] != "a" || header[1] != "b" ||
      header[2] != "label") {
    throw Error(ErrorCode::kParseError,
                head_where + ": header must start with a,b,label");
  }
  for (std::size_t c = 3; c < header.size(); ++c) {
    if (header[c] == "group" && col_group < 0 && col_fold < 0) {
      col_group = static_cast<int>(c);
    } else if (header[c] == "fold" && col_fold < 0) {
      col_fold = static_cast<int>(c);
    } else {
      throw Error(ErrorCode::kParseError,
                  head_where + ": unexpected column '" + header[c] + "'");
    }
  }

  std::vector<VerificationPair> pairs;
  for (std::size_t i = first_data; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(i + 1);
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const Error& e) {
      throw e.with_context(where);
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  where + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
    }
    VerificationPair p;
    p.a = parse_uint<std::size_t>(fields[0], where, "a");
    p.b = parse_uint<std::size_t>(fields[1], where, "b");
    const std::string_view label = trim(fields[2]);
    if (label == "1") {
      p.genuine = true;
    } else if (label == "0") {
      p.genuine = false;
    } else {
      throw Error(ErrorCode::kParseError,
                  where + ": label must be 1 or 0, got '" +
                      std::string(label) + "'");
    }
    if (p.a == p.b) {
      throw Error(ErrorCode::kParseError,
                  where + ": pair compares row " + std::to_string(p.a) +
                      " with itself");
    }
    if (col_group >= 0) p.group = std::string(trim(fields[col_group]));
    if (col_fold >= 0) {
      p.fold = parse_uint<std::size_t>(fields[col_fold], where, "fold");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<VerificationPair> read_pairs(const fs::path& path) {
  return parse_pairs(read_file(path), path_string(path));
}

std::string format_pairs(const std::vector<VerificationPair>& pairs) {
  bool groups = !pairs.empty();
  bool folds = !pairs.empty();
  for (const auto& p : pairs) {
    groups = groups && p.group.has_value();
    folds = folds && p.fold.has_value();
  }
  std::string out = "a,b,label";
  if (groups) out += ",group";
  if (folds) out += ",fold";
  out += '\n';
  for (const auto& p : pairs) {
    out += std::to_string(p.a);
    out += ',';
    out += std::to_string(p.b);
    out += p.genuine ? ",1" : ",0";
    if (groups) {
      out += ',';
      out += csv_field(*p.group);
    }
    if (folds) {
      out += ',';
      out += std::to_string(*p.fold);
    }
    out += '\n';
  }
  return out;
}

}  // namespace embkit
