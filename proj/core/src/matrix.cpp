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

#include "embkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "embkit/error.hpp"

namespace embkit {

RowMatrix::RowMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

RowMatrix::RowMatrix(std::size_t rows, std::size_t cols,
                     std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix data holds " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(rows * cols));
  }
}

RowMatrix RowMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  RowMatrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void RowMatrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) {
    cols_ = values.size();
  } else if (values.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row " + std::to_string(rows_) + " has dimension " +
                    std::to_string(values.size()) + ", expected " +
                    std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

namespace {

constexpr std::size_t kPairwiseLeaf = 8;

template <typename RowAt>
void pairwise_sum(const RowAt& row_at, std::size_t begin, std::size_t end,
                  std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  if (end - begin <= kPairwiseLeaf) {
    for (std::size_t i = begin; i < end; ++i) {
      auto r = row_at(i);
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += r[c];
    }
    return;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  std::vector<double> right(out.size());
  pairwise_sum(row_at, begin, mid, out);
  pairwise_sum(row_at, mid, end, right);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] += right[c];
}

template <typename RowAt>
std::vector<double> mean_impl(const RowAt& row_at, std::size_t n,
                              std::size_t dim) {
  if (n == 0) throw Error(ErrorCode::kEmptySet, "mean of an empty set");
  std::vector<double> sum(dim);
  pairwise_sum(row_at, 0, n, sum);
  const double inv = 1.0 / static_cast<double>(n);
  for (double& s : sum) s *= inv;
  return sum;
}

}  // namespace

std::vector<double> mean_of_rows(const RowMatrix& m) {
  return mean_impl([&](std::size_t i) { return m.row(i); }, m.rows(),
                   m.cols());
}

std::vector<double> mean_of_rows(
    std::span<const std::span<const double>> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptySet, "mean of an empty set");
  const std::size_t dim = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i) + " has dimension " +
                      std::to_string(rows[i].size()) + ", expected " +
                      std::to_string(dim));
    }
  }
  return mean_impl([&](std::size_t i) { return rows[i]; }, rows.size(), dim);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimensions " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace embkit
