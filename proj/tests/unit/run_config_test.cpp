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

#include "embkit/run_config.hpp"

#include <map>

#include "embkit/error.hpp"
#include "gtest/gtest.h"

namespace embkit {
namespace {

TEST(RunConfigTest, Defaults) {
  const RunConfig c = parse_run_config("", "empty");
  EXPECT_EQ(c.images_per_id, 20u);
  EXPECT_EQ(c.alpha, 2.0);
  EXPECT_EQ(c.beta, 2.0);
  EXPECT_EQ(c.sources_per_id, 5u);
  EXPECT_EQ(c.shift_strength, 1.0);
  EXPECT_FALSE(c.top_k_identities.has_value());
  EXPECT_EQ(c.far_target, 1e-4);
  EXPECT_EQ(c.folds, 10u);
  EXPECT_EQ(c.decode_multiplicity, 5u);
  EXPECT_TRUE(c.explicit_keys.empty());
}

TEST(RunConfigTest, ParsesDocument) {
  const RunConfig c = parse_run_config(
      "# run\nglobal_seed = 18446744073709551615\nimages_per_id=10\n"
      "  alpha = 1.5\nbeta=3\ntop_k_identities = 48\nfar_target = 0.001\n",
      "run.cfg");
  EXPECT_EQ(c.global_seed, 18446744073709551615ULL);
  EXPECT_EQ(c.images_per_id, 10u);
  EXPECT_EQ(c.alpha, 1.5);
  EXPECT_EQ(c.beta, 3.0);
  EXPECT_EQ(c.top_k_identities, 48u);
  EXPECT_EQ(c.far_target, 0.001);
  EXPECT_TRUE(c.is_explicit("alpha"));
  EXPECT_FALSE(c.is_explicit("folds"));
}

TEST(RunConfigTest, Rejections) {
  for (const char* text :
       {"unknown = 1", "alpha", "alpha = -1", "alpha = x", "folds = 1",
        "far_target = 1", "images_per_id = 0", "global_seed = -3",
        "alpha = 1\nalpha = 2", "top_k_identities = 0", "shift_strength = inf",
        "sources_per_id = 2.5"}) {
    try {
      parse_run_config(text, "bad.cfg");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigError) << text;
    }
  }
}

TEST(RunConfigTest, EnvironmentOverrides) {
  RunConfig c = parse_run_config("alpha = 1\n", "x");
  const std::map<std::string, std::string> env{{"EMBKIT_ALPHA", "3"},
                                               {"EMBKIT_GLOBAL_SEED", "7"}};
  apply_env_overrides(c, [&](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
  EXPECT_EQ(c.alpha, 3.0);
  EXPECT_EQ(c.global_seed, 7u);
  EXPECT_TRUE(c.is_explicit("global_seed"));

  EXPECT_THROW(apply_env_overrides(c,
                                   [](const std::string& k)
                                       -> std::optional<std::string> {
                                     if (k == "EMBKIT_FOLDS") return "one";
                                     return std::nullopt;
                                   }),
               Error);
}

TEST(RunConfigTest, JsonKeyOrder) {
  const auto j = parse_run_config("", "x").to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.front(), "global_seed");
  EXPECT_EQ(keys.back(), "decode_multiplicity");
  EXPECT_EQ(keys.size(), 10u);
}

}  // namespace
}  // namespace embkit
