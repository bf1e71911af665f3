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

#ifndef EMBKIT_RUN_CONFIG_HPP_
#define EMBKIT_RUN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "embkit/evalkit.hpp"
#include "embkit/hypersphere.hpp"
#include "embkit/sampler.hpp"

namespace embkit {

// Flat `key = value` document. Blank lines and lines starting with '#' are
// ignored. Unknown or repeated keys are rejected.
struct RunConfig {
  std::uint64_t global_seed = 0;
  std::size_t images_per_id = kDefaultImagesPerIdentity;
  double alpha = kDefaultBetaShape;
  double beta = kDefaultBetaShape;
  std::size_t sources_per_id = kDefaultSourcesPerIdentity;
  double shift_strength = 1.0;
  std::optional<std::size_t> top_k_identities;
  double far_target = 1e-4;
  std::size_t folds = kDefaultFolds;
  std::size_t decode_multiplicity = kDefaultDecodeMultiplicity;

  // Keys assigned by a document or an environment override.
  std::set<std::string, std::less<>> explicit_keys;

  bool is_explicit(std::string_view key) const {
    return explicit_keys.contains(key);
  }
  BetaParams beta_params() const { return {alpha, beta}; }

  // Throws ConfigError naming the first out-of-range key.
  void validate() const;

  // Keys in document order, as written by to_json().
  nlohmann::ordered_json to_json() const;
};

inline constexpr std::string_view kEnvPrefix = "EMBKIT_";

// Sets one key from its textual value; throws ConfigError on unknown keys
// or malformed values.
void set_config_value(RunConfig& config, std::string_view key,
                      std::string_view value, std::string_view where);

RunConfig parse_run_config(std::string_view text, std::string_view source);
RunConfig load_run_config(const std::filesystem::path& path);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// For every key, EMBKIT_<KEY> (upper case) overrides the document value.
void apply_env_overrides(RunConfig& config, const EnvLookup& lookup);
EnvLookup process_env();

}  // namespace embkit

#endif  // EMBKIT_RUN_CONFIG_HPP_
