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

#ifndef EMBKIT_EVALKIT_HPP_
#define EMBKIT_EVALKIT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embkit/matrix.hpp"

namespace embkit {

// A pair is accepted as a match when score >= threshold. Every metric below
// uses this convention.

struct VerificationPair {
  std::size_t a = 0;
  std::size_t b = 0;
  bool genuine = false;
  std::optional<std::string> group;
  std::optional<std::size_t> fold;
};

struct ScoredPair {
  double score = 0.0;
  bool genuine = false;
  std::optional<std::string> group;
  std::optional<std::size_t> fold;
};

struct ScoreSet {
  std::vector<ScoredPair> pairs;

  // Convenience constructor: genuine scores first, then impostors, no groups
  // or folds.
  static ScoreSet from_lists(std::span<const double> genuine,
                             std::span<const double> impostor);

  std::vector<double> genuine_scores() const;
  std::vector<double> impostor_scores() const;
  std::size_t genuine_count() const;
  std::size_t impostor_count() const;
};

// Cosine similarity per pair. Rows whose norm is within the unit tolerance
// of one are used as-is; others are normalized on the fly.
ScoreSet score_pairs(const RowMatrix& embeddings,
                     std::span<const VerificationPair> pairs,
                     unsigned threads = 1);

struct RocPoint {
  double threshold = 0.0;
  double far = 0.0;
  double tar = 0.0;
  std::size_t accepted_impostors = 0;
  std::size_t accepted_genuines = 0;
};

// Points ordered by descending threshold. The first point sits just above
// the largest score (nothing accepted, far = tar = 0); the rest are the
// unique scores, ending at the smallest where far = tar = 1.
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t genuine_total = 0;
  std::size_t impostor_total = 0;
};

RocCurve roc(const ScoreSet& scores);

struct TarAtFar {
  double tar = 0.0;
  double threshold = 0.0;
  double achieved_far = 0.0;
};

// Smallest impostor count for which far_target is resolvable.
std::size_t required_impostors(double far_target);

// Highest-tar ROC point with far <= far_target. Among equal-tar points the
// one with the highest threshold (lowest far) is reported. No interpolation.
TarAtFar tar_at_far(const ScoreSet& scores, double far_target);

struct KFoldResult {
  double mean_accuracy = 0.0;
  std::vector<double> per_fold;
  std::vector<double> thresholds;
};

inline constexpr std::size_t kDefaultFolds = 10;

// Pairs carrying fold ids keep them; otherwise pair i of n falls in fold
// floor(i * folds / n). Each fold's threshold maximizes accuracy over the
// other folds among their unique scores, smallest threshold on ties.
KFoldResult kfold_accuracy(const ScoreSet& scores,
                           std::size_t folds = kDefaultFolds);

struct GroupStats {
  std::map<std::string, double> per_group;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

GroupStats group_stats(const std::map<std::string, double>& per_group);

// kfold_accuracy per group, then mean and population std across groups.
GroupStats group_accuracy(const ScoreSet& scores,
                          std::size_t folds = kDefaultFolds);

}  // namespace embkit

#endif  // EMBKIT_EVALKIT_HPP_
