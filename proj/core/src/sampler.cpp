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

#include "embkit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "embkit/error.hpp"
#include "embkit/matrix.hpp"
#include "embkit/random.hpp"

namespace embkit {

SamplePlan make_plan(const IdentityRecord& record, std::size_t k,
                     const BetaParams& params, std::uint64_t global_seed,
                     std::size_t max_sources) {
  params.validate();
  if (record.sources.empty()) {
    throw Error(ErrorCode::kEmptySet,
                "identity '" + record.label + "' has no source embeddings");
  }
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "images per identity must be positive");
  }
  if (max_sources == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sources per identity must be positive");
  }
  const std::size_t directions = std::min(record.sources.size(), max_sources);
  SamplePlan plan{record.label, {}};
  plan.entries.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t seed = derive_seed(global_seed, record.label, j);
    Rng rng(seed);
    plan.entries.push_back(
        PlanEntry{j, j % directions, sample_lambda(params, rng), seed});
  }
  return plan;
}

std::vector<Embedding> execute_plan(const IdentityRecord& record,
                                    const SamplePlan& plan) {
  if (plan.label != record.label) {
    throw Error(ErrorCode::kInvalidArgument,
                "plan for '" + plan.label + "' applied to identity '" +
                    record.label + "'");
  }
  std::vector<Embedding> out;
  out.reserve(plan.entries.size());
  for (const PlanEntry& entry : plan.entries) {
    if (entry.direction >= record.sources.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "identity '" + record.label + "' entry " +
                      std::to_string(entry.index) + " direction " +
                      std::to_string(entry.direction) + " exceeds " +
                      std::to_string(record.sources.size()) + " sources");
    }
    try {
      out.push_back(slerp(record.prototype, record.sources[entry.direction],
                          entry.lambda));
    } catch (const Error& e) {
      throw e.with_context("identity '" + record.label + "' entry " +
                           std::to_string(entry.index));
    }
  }
  return out;
}

void ClusterSpec::validate() const {
  if (num_identities == 0 || dim == 0 || samples_per_id == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cluster counts and dimension must be positive");
  }
  if (!(std::isfinite(concentration) && concentration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "concentration must be positive");
  }
}

std::string cluster_label(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "id%05zu", i);
  return buf;
}

std::vector<LabeledVector> gen_clusters(const ClusterSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<LabeledVector> out;
  out.reserve(spec.num_identities * spec.samples_per_id);
  std::vector<double> raw(spec.dim);
  for (std::size_t id = 0; id < spec.num_identities; ++id) {
    Embedding center;
    do {
      for (double& x : raw) x = rng.normal();
    } while (!(l2_norm(raw) > kZeroNormTolerance));
    center = normalize(raw);
    const std::string label = cluster_label(id);
    for (std::size_t s = 0; s < spec.samples_per_id; ++s) {
      do {
        for (std::size_t d = 0; d < spec.dim; ++d) {
          raw[d] = center[d] + rng.normal() / spec.concentration;
        }
      } while (!(l2_norm(raw) > kZeroNormTolerance));
      const Embedding sample = normalize(raw);
      out.push_back(LabeledVector{
          label, std::vector<double>(sample.values().begin(),
                                     sample.values().end())});
    }
  }
  return out;
}

}  // namespace embkit
