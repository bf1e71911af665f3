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

#ifndef EMBKIT_IDENTITY_BANK_HPP_
#define EMBKIT_IDENTITY_BANK_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "embkit/hypersphere.hpp"

namespace embkit {

struct LabeledVector {
  std::string label;
  std::vector<double> values;
};

struct IdentityRecord {
  std::string label;
  std::vector<Embedding> sources;
  Embedding prototype;
};

struct SimilarityReport {
  std::string label;
  double score = 0.0;
  std::string nearest_label;
};

enum class SimilarityAggregate {
  kMax,   // cosine to the closest other identity
  kMean,  // mean cosine to every other identity
};

// Groups vectors by label in first-appearance order, normalizes them, keeps
// at most `max_sources` per label (earliest first), and computes prototypes.
// Errors raised for one identity name its label.
std::vector<IdentityRecord> build_bank(
    std::span<const LabeledVector> manifest,
    std::size_t max_sources = std::numeric_limits<std::size_t>::max());

// Throws InvalidArgument if the stored prototype is not the renormalized
// mean of the sources within the unit tolerance.
void verify_record(const IdentityRecord& record);

// Scores every identity against all others by prototype cosine and returns
// reports sorted ascending by score, ties by label. The nearest neighbour is
// the highest-cosine other identity (ties by label) for either aggregate.
// Rows are evaluated in blocks across `threads` workers; results do not
// depend on the worker count.
std::vector<SimilarityReport> score_identities(
    std::span<const IdentityRecord> bank,
    SimilarityAggregate aggregate = SimilarityAggregate::kMax,
    unsigned threads = 1);

// Labels of the first k reports.
std::vector<std::string> filter_top_k(std::span<const SimilarityReport> reports,
                                      std::size_t k);

}  // namespace embkit

#endif  // EMBKIT_IDENTITY_BANK_HPP_
