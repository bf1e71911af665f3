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

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "embkit/emb_io.hpp"
#include "embkit/error.hpp"
#include "embkit/text_format.hpp"

namespace embkit {

namespace {

constexpr std::array<std::string_view, 10> kKeys = {
    "global_seed",    "images_per_id",    "alpha",      "beta",
    "sources_per_id", "shift_strength",   "top_k_identities",
    "far_target",     "folds",            "decode_multiplicity",
};

[[noreturn]] void bad_value(std::string_view where, std::string_view key,
                            std::string_view value, std::string_view want) {
  throw Error(ErrorCode::kConfigError,
              std::string(where) + ": " + std::string(key) + " expects " +
                  std::string(want) + ", got '" + std::string(value) + "'");
}

template <typename T>
T parse_unsigned(std::string_view where, std::string_view key,
                 std::string_view value) {
  T out{};
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() ||
      ptr != value.data() + value.size()) {
    bad_value(where, key, value, "a non-negative integer");
  }
  return out;
}

double parse_real(std::string_view where, std::string_view key,
                  std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() ||
      ptr != value.data() + value.size() || !std::isfinite(out)) {
    bad_value(where, key, value, "a finite real number");
  }
  return out;
}

void range_error(std::string_view key, const std::string& why) {
  throw Error(ErrorCode::kConfigError, std::string(key) + " " + why);
}

}  // namespace

void RunConfig::validate() const {
  if (images_per_id < 1) range_error("images_per_id", "must be >= 1");
  if (!(alpha > 0.0)) range_error("alpha", "must be > 0");
  if (!(beta > 0.0)) range_error("beta", "must be > 0");
  if (sources_per_id < 1) range_error("sources_per_id", "must be >= 1");
  if (!std::isfinite(shift_strength)) {
    range_error("shift_strength", "must be finite");
  }
  if (top_k_identities && *top_k_identities < 1) {
    range_error("top_k_identities", "must be >= 1");
  }
  if (!(far_target > 0.0 && far_target < 1.0)) {
    range_error("far_target", "must lie in (0, 1)");
  }
  if (folds < 2) range_error("folds", "must be >= 2");
  if (decode_multiplicity < 1) {
    range_error("decode_multiplicity", "must be >= 1");
  }
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["global_seed"] = global_seed;
  j["images_per_id"] = images_per_id;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["sources_per_id"] = sources_per_id;
  j["shift_strength"] = shift_strength;
  if (top_k_identities) {
    j["top_k_identities"] = *top_k_identities;
  } else {
    j["top_k_identities"] = nullptr;
  }
  j["far_target"] = far_target;
  j["folds"] = folds;
  j["decode_multiplicity"] = decode_multiplicity;
  return j;
}

void set_config_value(RunConfig& c, std::string_view key,
                      std::string_view value, std::string_view where) {
  value = trim(value);
  if (key == "global_seed") {
    c.global_seed = parse_unsigned<std::uint64_t>(where, key, value);
  } else if (key == "images_per_id") {
    c.images_per_id = parse_unsigned<std::size_t>(where, key, value);
  } else if (key == "alpha") {
    c.alpha = parse_real(where, key, value);
  } else if (key == "beta") {
    c.beta = parse_real(where, key, value);
  } else if (key == "sources_per_id") {
    c.sources_per_id = parse_unsigned<std::size_t>(where, key, value);
  } else if (key == "shift_strength") {
    c.shift_strength = parse_real(where, key, value);
  } else if (key == "top_k_identities") {
    if (value == "none" || value.empty()) {
      c.top_k_identities.reset();
    } else {
      c.top_k_identities = parse_unsigned<std::size_t>(where, key, value);
    }
  } else if (key == "far_target") {
    c.far_target = parse_real(where, key, value);
  } else if (key == "folds") {
    c.folds = parse_unsigned<std::size_t>(where, key, value);
  } else if (key == "decode_multiplicity") {
    c.decode_multiplicity = parse_unsigned<std::size_t>(where, key, value);
  } else {
    throw Error(ErrorCode::kConfigError,
                std::string(where) + ": unknown key '" + std::string(key) +
                    "'");
  }
  c.explicit_keys.insert(std::string(key));
}

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, where + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw Error(ErrorCode::kConfigError,
                  where + ": key '" + std::string(key) + "' repeated");
    }
    set_config_value(config, key, line.substr(eq + 1), where);
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  try {
    return parse_run_config(read_file(path), path.string());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw e.with_context(path.string());
  }
}

void apply_env_overrides(RunConfig& config, const EnvLookup& lookup) {
  for (std::string_view key : kKeys) {
    std::string name(kEnvPrefix);
    for (char c : key) {
      name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (auto value = lookup(name)) {
      set_config_value(config, key, *value, "environment " + name);
    }
  }
  config.validate();
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

}  // namespace embkit
