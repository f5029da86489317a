#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pm::sampler {

/// Memory placement policy for kernel operands inside the arena.
enum class Policy {
  Trash,    ///< fresh (cold) offsets per invocation, advancing cursor
  InCache,  ///< fixed small window at offset 0, reused per invocation
};

std::string policy_name(Policy p);

/// Runtime configuration of one sampler instance.
struct SamplerConfig {
  std::uint64_t memory_bytes = 256ull * 1024 * 1024;
  Policy policy = Policy::Trash;
  std::vector<std::string> counters = {"ticks", "flops"};
  std::int64_t max_batch = 1000;
  std::uint64_t seed = 42;
  bool refill_on_wrap = true;
  std::int64_t warmup = 0;
};

/// Counter names with a built-in measurement backend.
const std::vector<std::string>& known_counters();

/// Parses the line-oriented `key = value` configuration dialect.
///
/// `#` starts a comment (full-line or trailing); blank lines are skipped;
/// unknown keys and invalid values raise pm::error with the line number.
/// Missing keys keep their defaults.
SamplerConfig parse_config(const std::string& text);

/// Renders a config back into the `key = value` dialect (all keys explicit).
std::string serialize_config(const SamplerConfig& cfg);

/// Convenience: assembles a config from explicit key/value overrides on top
/// of the defaults, using the same value parsing as parse_config.
SamplerConfig config_from_overrides(const std::map<std::string, std::string>& overrides);

}  // namespace pm::sampler
