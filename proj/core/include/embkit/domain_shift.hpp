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

#ifndef EMBKIT_DOMAIN_SHIFT_HPP_
#define EMBKIT_DOMAIN_SHIFT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "embkit/matrix.hpp"

namespace embkit {

// Offset between the means of a target population and a source population.
struct ShiftVector {
  std::vector<double> delta;
  std::size_t source_count = 0;
  std::size_t target_count = 0;

  std::size_t dim() const { return delta.size(); }
};

// delta = mean(target) - mean(source). The populations may differ in size.
ShiftVector estimate_shift(const RowMatrix& target, const RowMatrix& source);

// v + strength * delta. The result is not renormalized.
std::vector<double> apply_shift(std::span<const double> v,
                                const ShiftVector& shift,
                                double strength = 1.0);

// Row-wise apply_shift over a whole matrix.
RowMatrix apply_shift(const RowMatrix& rows, const ShiftVector& shift,
                      double strength = 1.0, unsigned threads = 1);

}  // namespace embkit

#endif  // EMBKIT_DOMAIN_SHIFT_HPP_
