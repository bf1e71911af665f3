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

#include "embkit/identity_bank.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "embkit/error.hpp"
#include "embkit/matrix.hpp"
#include "embkit/parallel.hpp"

namespace embkit {

std::vector<IdentityRecord> build_bank(std::span<const LabeledVector> manifest,
                                       std::size_t max_sources) {
  if (manifest.empty()) {
    throw Error(ErrorCode::kEmptySet, "identity manifest is empty");
  }
  if (max_sources == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_sources must be positive");
  }
  const std::size_t dim = manifest.front().values.size();
  std::vector<IdentityRecord> bank;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const LabeledVector& item = manifest[i];
    if (item.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "identity '" + item.label + "' entry " + std::to_string(i) +
                      " has dimension " + std::to_string(item.values.size()) +
                      ", expected " + std::to_string(dim));
    }
    auto [it, inserted] = index.try_emplace(item.label, bank.size());
    if (inserted) bank.push_back(IdentityRecord{item.label, {}, {}});
    IdentityRecord& rec = bank[it->second];
    if (rec.sources.size() >= max_sources) continue;
    try {
      rec.sources.push_back(normalize(item.values));
    } catch (const Error& e) {
      throw e.with_context("identity '" + item.label + "' entry " +
                           std::to_string(i));
    }
  }
  for (IdentityRecord& rec : bank) {
    try {
      rec.prototype = prototype(rec.sources, true);
    } catch (const Error& e) {
      throw e.with_context("identity '" + rec.label + "'");
    }
  }
  return bank;
}

void verify_record(const IdentityRecord& record) {
  const Embedding expected = prototype(record.sources, true);
  if (expected.dim() != record.prototype.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "identity '" + record.label + "' prototype dimension differs");
  }
  for (std::size_t i = 0; i < expected.dim(); ++i) {
    if (std::abs(expected[i] - record.prototype[i]) > kUnitNormTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "identity '" + record.label +
                      "' prototype is not the mean of its sources");
    }
  }
}

namespace {

constexpr std::size_t kRowBlock = 32;
constexpr std::size_t kColBlock = 256;

struct Neighbour {
  double best = -2.0;
  std::size_t best_index = 0;
  double sum = 0.0;
};

}  // namespace

std::vector<SimilarityReport> score_identities(
    std::span<const IdentityRecord> bank, SimilarityAggregate aggregate,
    unsigned threads) {
  const std::size_t m = bank.size();
  if (m < 2) {
    throw Error(ErrorCode::kNeedTwoIdentities,
                "scoring needs at least two identities, got " +
                    std::to_string(m));
  }
  RowMatrix protos;
  {
    std::unordered_set<std::string_view> seen;
    for (const IdentityRecord& rec : bank) {
      if (!seen.insert(rec.label).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate identity label '" + rec.label + "'");
      }
      try {
        protos.append_row(rec.prototype.values());
      } catch (const Error& e) {
        throw e.with_context("identity '" + rec.label + "'");
      }
    }
  }

  std::vector<Neighbour> result(m);
  const std::size_t row_blocks = (m + kRowBlock - 1) / kRowBlock;
  parallel_for(row_blocks, threads, [&](std::size_t rb) {
    const std::size_t i0 = rb * kRowBlock;
    const std::size_t i1 = std::min(m, i0 + kRowBlock);
    for (std::size_t j0 = 0; j0 < m; j0 += kColBlock) {
      const std::size_t j1 = std::min(m, j0 + kColBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        Neighbour& nb = result[i];
        const auto pi = protos.row(i);
        for (std::size_t j = j0; j < j1; ++j) {
          if (j == i) continue;
          const double c = cosine(pi, protos.row(j));
          nb.sum += c;
          if (c > nb.best ||
              (c == nb.best && bank[j].label < bank[nb.best_index].label)) {
            nb.best = c;
            nb.best_index = j;
          }
        }
      }
    }
  });

  std::vector<SimilarityReport> reports;
  reports.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double score = aggregate == SimilarityAggregate::kMax
                             ? result[i].best
                             : result[i].sum / static_cast<double>(m - 1);
    reports.push_back(
        {bank[i].label, score, bank[result[i].best_index].label});
  }
  std::sort(reports.begin(), reports.end(),
            [](const SimilarityReport& a, const SimilarityReport& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.label < b.label;
            });
  return reports;
}

std::vector<std::string> filter_top_k(std::span<const SimilarityReport> reports,
                                      std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  }
  if (k > reports.size()) {
    throw Error(ErrorCode::kKTooLarge,
                "k=" + std::to_string(k) + " exceeds the " +
                    std::to_string(reports.size()) + " scored identities");
  }
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(reports[i].label);
  return labels;
}

}  // namespace embkit
