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

#ifndef EMBKIT_SAMPLER_HPP_
#define EMBKIT_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "embkit/hypersphere.hpp"
#include "embkit/identity_bank.hpp"

namespace embkit {

inline constexpr std::size_t kDefaultImagesPerIdentity = 20;
inline constexpr std::size_t kDefaultSourcesPerIdentity = 5;
inline constexpr std::size_t kDefaultDecodeMultiplicity = 5;
inline constexpr double kDefaultBetaShape = 2.0;

struct PlanEntry {
  std::size_t index = 0;
  std::size_t direction = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

struct SamplePlan {
  std::string label;
  std::vector<PlanEntry> entries;

  friend bool operator==(const SamplePlan&, const SamplePlan&) = default;
};

// Plans k samples for one identity. Entry j walks toward source
// j mod min(S, max_sources) with lambda drawn from Beta(params) by a
// generator seeded with derive_seed(global_seed, label, j).
SamplePlan make_plan(const IdentityRecord& record, std::size_t k,
                     const BetaParams& params, std::uint64_t global_seed,
                     std::size_t max_sources = kDefaultSourcesPerIdentity);

// slerp(prototype, sources[direction], lambda) for every entry.
std::vector<Embedding> execute_plan(const IdentityRecord& record,
                                    const SamplePlan& plan);

struct ClusterSpec {
  std::size_t num_identities = 1;
  std::size_t dim = 2;
  std::size_t samples_per_id = 1;
  double concentration = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Label assigned to the i-th synthetic identity ("id00000", ...).
std::string cluster_label(std::size_t i);

// Synthetic identity clusters: a random unit center per identity and
// samples normalize(center + N(0, I) / concentration), identity-major.
std::vector<LabeledVector> gen_clusters(const ClusterSpec& spec);

}  // namespace embkit

#endif  // EMBKIT_SAMPLER_HPP_
