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

#include "embkit/hypersphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "embkit/error.hpp"
#include "embkit/matrix.hpp"

namespace embkit {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimensions " + std::to_string(a) + " and " +
                    std::to_string(b));
  }
}

}  // namespace

Embedding::Embedding(std::vector<double> values, bool unit)
    : values_(std::move(values)), unit_(unit) {
  if (unit_ && std::abs(l2_norm(values_) - 1.0) > kUnitNormTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding flagged unit has norm " +
                    std::to_string(l2_norm(values_)));
  }
}

void BetaParams::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0) ||
      !(std::isfinite(beta) && beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta parameters must be positive, got alpha=" +
                    std::to_string(alpha) + " beta=" + std::to_string(beta));
  }
}

Embedding normalize(std::span<const double> v) {
  const double norm = l2_norm(v);
  if (!(norm > kZeroNormTolerance)) {
    throw Error(ErrorCode::kZeroVector,
                "cannot normalize vector with norm " + std::to_string(norm));
  }
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= norm;
  return Embedding(std::move(out), true);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  return std::clamp(dot(a, b), -1.0, 1.0);
}

double cosine(const Embedding& a, const Embedding& b) {
  return cosine(a.values(), b.values());
}

double angle(const Embedding& a, const Embedding& b) {
  return std::acos(cosine(a, b));
}

Embedding slerp(const Embedding& mu, const Embedding& e, double lambda) {
  require_same_dim(mu.dim(), e.dim());
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  const double theta = angle(mu, e);
  if (theta >= std::numbers::pi - kAntipodalMargin) {
    throw Error(ErrorCode::kAntipodalPair,
                "endpoints are antipodal (angle " + std::to_string(theta) +
                    ")");
  }
  if (theta < kCoincidentAngle) return mu;
  if (lambda == 0.0) return mu;
  if (lambda == 1.0) return e;

  const double inv_sin = 1.0 / std::sin(theta);
  const double wa = std::sin((1.0 - lambda) * theta) * inv_sin;
  const double wb = std::sin(lambda * theta) * inv_sin;
  std::vector<double> out(mu.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = wa * mu[i] + wb * e[i];
  }
  return normalize(out);
}

Embedding prototype(std::span<const Embedding> embs, bool renormalize) {
  if (embs.empty()) {
    throw Error(ErrorCode::kEmptySet, "prototype of an empty set");
  }
  std::vector<std::span<const double>> rows;
  rows.reserve(embs.size());
  for (const auto& e : embs) rows.push_back(e.values());
  std::vector<double> mean = mean_of_rows(rows);
  if (!(l2_norm(mean) > kZeroNormTolerance)) {
    throw Error(ErrorCode::kZeroVector,
                "prototype mean vanishes (inputs cancel)");
  }
  if (!renormalize) return Embedding(std::move(mean), false);
  return normalize(mean);
}

double sample_lambda(const BetaParams& params, Rng& rng) {
  params.validate();
  const double x = rng.gamma(params.alpha);
  const double y = rng.gamma(params.beta);
  const double sum = x + y;
  // Both gammas can underflow for tiny shapes; split the mass evenly then.
  if (!(sum > 0.0)) return 0.5;
  return std::clamp(x / sum, 0.0, 1.0);
}

}  // namespace embkit
