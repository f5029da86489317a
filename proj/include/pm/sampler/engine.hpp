#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "pm/kernels/types.hpp"
#include "pm/sampler/arena.hpp"
#include "pm/sampler/config.hpp"

namespace pm::sampler {

/// Executes batches of sampling requests under one configuration and arena.
class Engine {
 public:
  explicit Engine(SamplerConfig cfg);

  /// Places all operands, then executes the batch back-to-back, measuring
  /// each configured counter per request. No stream I/O happens here.
  /// Requests must already be validated.
  std::vector<pm::kernels::CounterSet> run_batch(
      const std::vector<pm::kernels::SamplingRequest>& batch);

  const SamplerConfig& config() const { return cfg_; }
  Arena& arena() { return arena_; }

 private:
  SamplerConfig cfg_;
  Arena arena_;
  std::set<std::string> warmed_;  // canonical request lines already warmed up
};

/// The read-execute-write loop: reads request lines from `in` until `go`,
/// a full batch (config.max_batch), or end of input; runs each batch and
/// writes one result line per request to `out` (flushed per batch).
/// Malformed lines produce a `!`-prefixed diagnostic on `err` and are
/// skipped. Returns the process exit status (0 on success).
int main_loop(std::istream& in, std::ostream& out, std::ostream& err,
              const SamplerConfig& cfg);

}  // namespace pm::sampler
