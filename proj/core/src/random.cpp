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

#include "embkit/random.hpp"

#include <algorithm>
#include <cmath>

namespace embkit {

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view label,
                          std::uint64_t index) {
  std::uint64_t h = splitmix64_mix(global_seed);
  for (std::size_t pos = 0; pos < label.size(); pos += 8) {
    std::uint64_t chunk = 0;
    const std::size_t n = std::min<std::size_t>(8, label.size() - pos);
    for (std::size_t b = 0; b < n; ++b) {
      chunk |= static_cast<std::uint64_t>(
                   static_cast<unsigned char>(label[pos + b]))
               << (8 * b);
    }
    h = splitmix64_mix(h ^ chunk);
  }
  h = splitmix64_mix(h ^ static_cast<std::uint64_t>(label.size()));
  return splitmix64_mix(h ^ index);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

// Marsaglia polar method; caches the second variate.
double Rng::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

// Marsaglia & Tsang (2000). Shapes below one use the boost
// Gamma(a) = Gamma(a + 1) * U^(1/a).
double Rng::gamma(double shape) {
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace embkit
