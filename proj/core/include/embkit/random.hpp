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

#ifndef EMBKIT_RANDOM_HPP_
#define EMBKIT_RANDOM_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace embkit {

// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds (seed, label bytes, index) into one 64-bit value. The label is
// absorbed in little-endian 8-byte chunks, zero padded, followed by its
// length, so "ab"+"c" and "a"+"bc" style collisions cannot occur.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view label,
                          std::uint64_t index);

// Caller-owned generator. All variates are computed here from raw 64-bit
// engine output, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  double normal();
  // Gamma(shape, 1); shape > 0.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace embkit

#endif  // EMBKIT_RANDOM_HPP_
