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

#ifndef EMBKIT_TESTS_SUPPORT_ORACLES_HPP_
#define EMBKIT_TESTS_SUPPORT_ORACLES_HPP_

// Brute-force reference computations. Nothing here calls into the library's
// geometry or metric code; inputs are plain vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace embkit::oracle {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec unit(Vec v) {
  const double n = std::sqrt(dot(v, v));
  for (double& x : v) x /= n;
  return v;
}

inline Vec random_unit(std::mt19937_64& gen, std::size_t dim) {
  std::normal_distribution<double> nd;
  Vec v(dim);
  for (double& x : v) x = nd(gen);
  return unit(std::move(v));
}

// Rotation by lambda * theta inside span{mu, e}: build the orthonormal
// direction e_perp by Gram-Schmidt and walk along cos/sin.
inline Vec slerp_rotation(const Vec& mu, const Vec& e, double lambda) {
  const double c = std::clamp(dot(mu, e), -1.0, 1.0);
  const double theta = std::acos(c);
  Vec perp(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) perp[i] = e[i] - c * mu[i];
  const double pn = std::sqrt(dot(perp, perp));
  if (pn == 0.0) return mu;
  for (double& x : perp) x /= pn;
  Vec out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out[i] = std::cos(lambda * theta) * mu[i] +
             std::sin(lambda * theta) * perp[i];
  }
  return out;
}

struct Labeled {
  double score;
  bool genuine;
};

struct BruteRocPoint {
  double threshold;
  double far;
  double tar;
};

inline std::size_t count_accepted(const std::vector<Labeled>& s, double t,
                                  bool genuine) {
  std::size_t n = 0;
  for (const auto& x : s) n += (x.genuine == genuine && x.score >= t);
  return n;
}

inline std::size_t count_class(const std::vector<Labeled>& s, bool genuine) {
  std::size_t n = 0;
  for (const auto& x : s) n += (x.genuine == genuine);
  return n;
}

// Threshold scan over the unique scores (descending), preceded by the point
// just above the maximum where nothing is accepted.
inline std::vector<BruteRocPoint> roc(const std::vector<Labeled>& s) {
  std::set<double, std::greater<>> thresholds;
  for (const auto& x : s) thresholds.insert(x.score);
  const double ng = static_cast<double>(count_class(s, true));
  const double ni = static_cast<double>(count_class(s, false));
  std::vector<BruteRocPoint> out;
  out.push_back({std::nextafter(*thresholds.begin(), HUGE_VAL), 0.0, 0.0});
  for (double t : thresholds) {
    out.push_back({t, static_cast<double>(count_accepted(s, t, false)) / ni,
                   static_cast<double>(count_accepted(s, t, true)) / ng});
  }
  return out;
}

struct BruteTar {
  double tar;
  double threshold;
  double far;
};

// Maximal tar with far <= target; among equal tar, highest threshold.
inline BruteTar tar_at_far(const std::vector<Labeled>& s, double target) {
  const auto points = roc(s);
  BruteTar best{-1.0, 0.0, 0.0};
  for (const auto& p : points) {
    if (p.far > target) continue;
    if (p.tar > best.tar ||
        (p.tar == best.tar && p.threshold > best.threshold)) {
      best = {p.tar, p.threshold, p.far};
    }
  }
  return best;
}

struct BruteKFold {
  std::vector<double> per_fold;
  double mean;
};

// folds_of[i] gives the fold of sample i.
inline BruteKFold kfold(const std::vector<Labeled>& s,
                        const std::vector<std::size_t>& fold_of,
                        std::size_t folds) {
  BruteKFold out;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<Labeled> train, test;
    for (std::size_t i = 0; i < s.size(); ++i) {
      (fold_of[i] == f ? test : train).push_back(s[i]);
    }
    std::set<double> candidates;
    for (const auto& x : train) candidates.insert(x.score);
    double best_t = 0.0;
    long best_correct = -1;
    for (double t : candidates) {  // ascending, so ties keep the smallest
      long correct = 0;
      for (const auto& x : train) correct += ((x.score >= t) == x.genuine);
      if (correct > best_correct) {
        best_correct = correct;
        best_t = t;
      }
    }
    std::size_t ok = 0;
    for (const auto& x : test) ok += ((x.score >= best_t) == x.genuine);
    out.per_fold.push_back(static_cast<double>(ok) /
                           static_cast<double>(test.size()));
  }
  double sum = 0.0;
  for (double a : out.per_fold) sum += a;
  out.mean = sum / static_cast<double>(folds);
  return out;
}

inline std::vector<std::size_t> contiguous_folds(std::size_t n,
                                                 std::size_t folds) {
  std::vector<std::size_t> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i * folds / n;
  return f;
}

}  // namespace embkit::oracle

#endif  // EMBKIT_TESTS_SUPPORT_ORACLES_HPP_
