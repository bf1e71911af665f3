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

#include "embkit/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "embkit/error.hpp"
#include "embkit/hypersphere.hpp"
#include "embkit/parallel.hpp"

namespace embkit {

ScoreSet ScoreSet::from_lists(std::span<const double> genuine,
                              std::span<const double> impostor) {
  ScoreSet s;
  s.pairs.reserve(genuine.size() + impostor.size());
  for (double g : genuine) s.pairs.push_back({g, true, {}, {}});
  for (double i : impostor) s.pairs.push_back({i, false, {}, {}});
  return s;
}

std::vector<double> ScoreSet::genuine_scores() const {
  std::vector<double> out;
  for (const auto& p : pairs) {
    if (p.genuine) out.push_back(p.score);
  }
  return out;
}

std::vector<double> ScoreSet::impostor_scores() const {
  std::vector<double> out;
  for (const auto& p : pairs) {
    if (!p.genuine) out.push_back(p.score);
  }
  return out;
}

std::size_t ScoreSet::genuine_count() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(),
                    [](const ScoredPair& p) { return p.genuine; }));
}

std::size_t ScoreSet::impostor_count() const {
  return pairs.size() - genuine_count();
}

ScoreSet score_pairs(const RowMatrix& embeddings,
                     std::span<const VerificationPair> pairs,
                     unsigned threads) {
  const std::size_t n = embeddings.rows();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.a >= n || p.b >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "pair " + std::to_string(i) + " references row " +
                      std::to_string(std::max(p.a, p.b)) + " of " +
                      std::to_string(n));
    }
    if (p.a == p.b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair " + std::to_string(i) + " compares row " +
                      std::to_string(p.a) + " with itself");
    }
  }

  // 0 marks a row used as-is.
  std::vector<double> norms(n, 0.0);
  std::vector<char> used(n, 0);
  for (const auto& p : pairs) used[p.a] = used[p.b] = 1;
  for (std::size_t r = 0; r < n; ++r) {
    if (!used[r]) continue;
    const double norm = l2_norm(embeddings.row(r));
    if (!(norm > kZeroNormTolerance)) {
      throw Error(ErrorCode::kZeroVector,
                  "embedding row " + std::to_string(r) + " has zero norm");
    }
    if (std::abs(norm - 1.0) > kUnitNormTolerance) norms[r] = norm;
  }

  ScoreSet out;
  out.pairs.resize(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto& p = pairs[i];
    double s = dot(embeddings.row(p.a), embeddings.row(p.b));
    if (norms[p.a] != 0.0) s /= norms[p.a];
    if (norms[p.b] != 0.0) s /= norms[p.b];
    out.pairs[i] = ScoredPair{std::clamp(s, -1.0, 1.0), p.genuine, p.group,
                              p.fold};
  });
  return out;
}

namespace {

void require_finite(const ScoreSet& scores) {
  for (std::size_t i = 0; i < scores.pairs.size(); ++i) {
    if (!std::isfinite(scores.pairs[i].score)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "score " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

RocCurve roc(const ScoreSet& scores) {
  require_finite(scores);
  RocCurve curve;
  curve.genuine_total = scores.genuine_count();
  curve.impostor_total = scores.impostor_count();
  if (curve.genuine_total == 0 || curve.impostor_total == 0) {
    throw Error(ErrorCode::kEmptyClass,
                std::string("ROC needs at least one ") +
                    (curve.genuine_total == 0 ? "genuine" : "impostor") +
                    " score");
  }

  std::vector<ScoredPair> sorted = scores.pairs;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredPair& a, const ScoredPair& b) {
              return a.score > b.score;
            });

  const double ng = static_cast<double>(curve.genuine_total);
  const double ni = static_cast<double>(curve.impostor_total);
  curve.points.push_back(RocPoint{
      std::nextafter(sorted.front().score, HUGE_VAL), 0.0, 0.0, 0, 0});
  std::size_t gen = 0;
  std::size_t imp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == t) {
      (sorted[i].genuine ? gen : imp) += 1;
      ++i;
    }
    curve.points.push_back(RocPoint{t, static_cast<double>(imp) / ni,
                                    static_cast<double>(gen) / ng, imp, gen});
  }
  return curve;
}

std::size_t required_impostors(double far_target) {
  const double r = 1.0 / far_target;
  // Absorb the representation error of targets like 1e-4.
  return static_cast<std::size_t>(std::ceil(r * (1.0 - 1e-12)));
}

TarAtFar tar_at_far(const ScoreSet& scores, double far_target) {
  if (!(far_target > 0.0 && far_target < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "far target must lie in (0, 1), got " +
                    std::to_string(far_target));
  }
  const std::size_t needed = required_impostors(far_target);
  const std::size_t have = scores.impostor_count();
  if (have < needed) {
    throw Error(ErrorCode::kInsufficientImpostors,
                "far target " + std::to_string(far_target) + " needs at least " +
                    std::to_string(needed) + " impostor scores, got " +
                    std::to_string(have));
  }
  const RocCurve curve = roc(scores);
  const RocPoint* best = &curve.points.front();
  for (const RocPoint& p : curve.points) {
    if (p.far > far_target) break;
    if (p.tar > best->tar) best = &p;
  }
  return TarAtFar{best->tar, best->threshold, best->far};
}

namespace {

std::vector<std::size_t> assign_folds(const ScoreSet& scores,
                                      std::size_t folds) {
  const std::size_t n = scores.pairs.size();
  std::size_t with_fold = 0;
  for (const auto& p : scores.pairs) with_fold += p.fold.has_value();
  std::vector<std::size_t> fold_of(n);
  if (with_fold == 0) {
    for (std::size_t i = 0; i < n; ++i) fold_of[i] = i * folds / n;
    return fold_of;
  }
  if (with_fold != n) {
    throw Error(ErrorCode::kFoldCountMismatch,
                "only " + std::to_string(with_fold) + " of " +
                    std::to_string(n) + " pairs carry a fold id");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t f = *scores.pairs[i].fold;
    if (f >= folds) {
      throw Error(ErrorCode::kFoldCountMismatch,
                  "pair " + std::to_string(i) + " has fold " +
                      std::to_string(f) + " but only " +
                      std::to_string(folds) + " folds were requested");
    }
    fold_of[i] = f;
  }
  return fold_of;
}

// Threshold over the given (score, genuine) samples maximizing accuracy,
// smallest threshold among ties.
double best_threshold(std::vector<std::pair<double, bool>> samples) {
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t total_gen = 0;
  for (const auto& s : samples) total_gen += s.second;

  std::size_t gen_below = 0;
  std::size_t imp_below = 0;
  std::size_t best_correct = 0;
  double best_t = samples.front().first;
  bool first = true;
  for (std::size_t i = 0; i < samples.size();) {
    const double t = samples[i].first;
    const std::size_t correct = (total_gen - gen_below) + imp_below;
    if (first || correct > best_correct) {
      best_correct = correct;
      best_t = t;
      first = false;
    }
    while (i < samples.size() && samples[i].first == t) {
      (samples[i].second ? gen_below : imp_below) += 1;
      ++i;
    }
  }
  return best_t;
}

}  // namespace

KFoldResult kfold_accuracy(const ScoreSet& scores, std::size_t folds) {
  require_finite(scores);
  if (folds < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "k-fold evaluation needs at least 2 folds");
  }
  const std::vector<std::size_t> fold_of = assign_folds(scores, folds);
  std::vector<std::size_t> fold_size(folds, 0);
  for (std::size_t f : fold_of) ++fold_size[f];
  for (std::size_t f = 0; f < folds; ++f) {
    if (fold_size[f] == 0) {
      throw Error(ErrorCode::kEmptyFold,
                  "fold " + std::to_string(f) + " of " +
                      std::to_string(folds) + " holds no pairs (" +
                      std::to_string(scores.pairs.size()) + " pairs total)");
    }
  }

  KFoldResult result;
  result.per_fold.resize(folds);
  result.thresholds.resize(folds);
  const std::size_t n = scores.pairs.size();
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::pair<double, bool>> train;
    train.reserve(n - fold_size[f]);
    for (std::size_t i = 0; i < n; ++i) {
      if (fold_of[i] != f) {
        train.emplace_back(scores.pairs[i].score, scores.pairs[i].genuine);
      }
    }
    const double t = best_threshold(std::move(train));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fold_of[i] != f) continue;
      const auto& p = scores.pairs[i];
      correct += ((p.score >= t) == p.genuine);
    }
    result.thresholds[f] = t;
    result.per_fold[f] =
        static_cast<double>(correct) / static_cast<double>(fold_size[f]);
  }
  double sum = 0.0;
  for (double a : result.per_fold) sum += a;
  result.mean_accuracy = sum / static_cast<double>(folds);
  return result;
}

GroupStats group_stats(const std::map<std::string, double>& per_group) {
  if (per_group.empty()) {
    throw Error(ErrorCode::kEmptySet, "no groups to summarize");
  }
  GroupStats stats;
  stats.per_group = per_group;
  const double g = static_cast<double>(per_group.size());
  double sum = 0.0;
  for (const auto& [_, acc] : per_group) sum += acc;
  stats.mean = sum / g;
  double sq = 0.0;
  for (const auto& [_, acc] : per_group) {
    sq += (acc - stats.mean) * (acc - stats.mean);
  }
  stats.std = std::sqrt(sq / g);
  return stats;
}

GroupStats group_accuracy(const ScoreSet& scores, std::size_t folds) {
  std::map<std::string, ScoreSet> by_group;
  for (std::size_t i = 0; i < scores.pairs.size(); ++i) {
    const auto& p = scores.pairs[i];
    if (!p.group) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair " + std::to_string(i) + " has no group");
    }
    by_group[*p.group].pairs.push_back(p);
  }
  std::map<std::string, double> per_group;
  for (const auto& [name, subset] : by_group) {
    try {
      per_group[name] = kfold_accuracy(subset, folds).mean_accuracy;
    } catch (const Error& e) {
      throw e.with_context("group '" + name + "'");
    }
  }
  return group_stats(per_group);
}

}  // namespace embkit
