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

#ifndef EMBKIT_HYPERSPHERE_HPP_
#define EMBKIT_HYPERSPHERE_HPP_

#include <span>
#include <vector>

#include "embkit/random.hpp"

namespace embkit {

// Norms at or below this are treated as the zero vector.
inline constexpr double kZeroNormTolerance = 1e-12;
// Unit-flagged embeddings stay within this of norm 1.
inline constexpr double kUnitNormTolerance = 1e-6;
// Endpoints closer than this angle are treated as coincident by slerp().
inline constexpr double kCoincidentAngle = 1e-6;
// slerp() rejects endpoints within this angle of antipodal.
inline constexpr double kAntipodalMargin = 1e-6;

class Embedding {
 public:
  Embedding() = default;
  // Wraps raw values without normalizing. `unit` is checked against the
  // norm tolerance and throws InvalidArgument when it does not hold.
  explicit Embedding(std::vector<double> values, bool unit = false);

  std::span<const double> values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  bool is_unit() const { return unit_; }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
  bool unit_ = false;
};

struct BetaParams {
  double alpha = 2.0;
  double beta = 2.0;

  // Throws InvalidArgument unless both are finite and positive.
  void validate() const;
  double mean() const { return alpha / (alpha + beta); }
  double variance() const {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
  }
};

Embedding normalize(std::span<const double> v);

// Dot product of unit vectors clamped to [-1, 1].
double cosine(const Embedding& a, const Embedding& b);
double cosine(std::span<const double> a, std::span<const double> b);

// Geodesic angle in [0, pi].
double angle(const Embedding& a, const Embedding& b);

// Point at fraction `lambda` of the great-circle arc from `mu` to `e`.
// lambda must lie in [0, 1]. Near-coincident endpoints return `mu`;
// near-antipodal endpoints throw AntipodalPair.
Embedding slerp(const Embedding& mu, const Embedding& e, double lambda);

// Arithmetic mean of the inputs, projected back onto the sphere unless
// `renormalize` is false.
Embedding prototype(std::span<const Embedding> embs, bool renormalize = true);

double sample_lambda(const BetaParams& params, Rng& rng);

}  // namespace embkit

#endif  // EMBKIT_HYPERSPHERE_HPP_
