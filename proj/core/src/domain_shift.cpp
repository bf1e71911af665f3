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

#include "embkit/domain_shift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "embkit/error.hpp"
#include "embkit/parallel.hpp"

namespace embkit {

ShiftVector estimate_shift(const RowMatrix& target, const RowMatrix& source) {
  if (target.empty() || source.empty()) {
    throw Error(ErrorCode::kEmptySet,
                std::string("shift estimation needs a nonempty ") +
                    (target.empty() ? "target" : "source") + " population");
  }
  if (target.cols() != source.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target dimension " + std::to_string(target.cols()) +
                    " differs from source dimension " +
                    std::to_string(source.cols()));
  }
  const std::vector<double> mt = mean_of_rows(target);
  const std::vector<double> ms = mean_of_rows(source);
  ShiftVector shift;
  shift.delta.resize(mt.size());
  for (std::size_t i = 0; i < mt.size(); ++i) shift.delta[i] = mt[i] - ms[i];
  shift.source_count = source.rows();
  shift.target_count = target.rows();
  return shift;
}

namespace {

void check_shift_args(std::size_t dim, const ShiftVector& shift,
                      double strength) {
  if (dim != shift.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector dimension " + std::to_string(dim) +
                    " differs from shift dimension " +
                    std::to_string(shift.dim()));
  }
  if (!std::isfinite(strength)) {
    throw Error(ErrorCode::kInvalidArgument, "shift strength must be finite");
  }
}

}  // namespace

std::vector<double> apply_shift(std::span<const double> v,
                                const ShiftVector& shift, double strength) {
  check_shift_args(v.size(), shift, strength);
  std::vector<double> out(v.begin(), v.end());
  if (strength == 1.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += shift.delta[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += strength * shift.delta[i];
    }
  }
  return out;
}

RowMatrix apply_shift(const RowMatrix& rows, const ShiftVector& shift,
                      double strength, unsigned threads) {
  if (rows.empty()) return RowMatrix(0, shift.dim());
  check_shift_args(rows.cols(), shift, strength);
  RowMatrix out = rows;
  parallel_for(rows.rows(), threads, [&](std::size_t r) {
    auto dst = out.row(r);
    const auto shifted = apply_shift(rows.row(r), shift, strength);
    std::copy(shifted.begin(), shifted.end(), dst.begin());
  });
  return out;
}

}  // namespace embkit
