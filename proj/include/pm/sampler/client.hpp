#pragma once

#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pm/kernels/types.hpp"
#include "pm/sampler/config.hpp"
#include "pm/sampler/engine.hpp"

namespace pm::sampler {

/// Measurement source abstraction: one batch of requests in, one CounterSet
/// per request out, order preserved.
class SamplerClient {
 public:
  virtual ~SamplerClient() = default;
  virtual std::vector<pm::kernels::CounterSet> sample(
      const std::vector<pm::kernels::SamplingRequest>& batch) = 0;
};

/// Runs an Engine inside this process.
class InProcessSampler : public SamplerClient {
 public:
  explicit InProcessSampler(const SamplerConfig& cfg) : engine_(cfg) {}
  std::vector<pm::kernels::CounterSet> sample(
      const std::vector<pm::kernels::SamplingRequest>& batch) override;

 private:
  Engine engine_;
};

/// Computes counters from a user callback — used by tests and synthetic
/// timing backends; nothing is executed.
class CallbackSampler : public SamplerClient {
 public:
  using Fn = std::function<pm::kernels::CounterSet(const pm::kernels::SamplingRequest&)>;
  explicit CallbackSampler(Fn fn) : fn_(std::move(fn)) {}
  std::vector<pm::kernels::CounterSet> sample(
      const std::vector<pm::kernels::SamplingRequest>& batch) override;

 private:
  Fn fn_;
};

/// Drives a sampler executable as a child process over the stream protocol:
/// writes request lines terminated by `go`, reads one result line per
/// request. The configuration is written to a temporary file passed via
/// --config; batches are chunked to the configured max_batch so pipe
/// buffers cannot fill up mid-write.
class SubprocessSampler : public SamplerClient {
 public:
  SubprocessSampler(std::string executable, const SamplerConfig& cfg);
  ~SubprocessSampler() override;

  SubprocessSampler(const SubprocessSampler&) = delete;
  SubprocessSampler& operator=(const SubprocessSampler&) = delete;

  std::vector<pm::kernels::CounterSet> sample(
      const std::vector<pm::kernels::SamplingRequest>& batch) override;

 private:
  void send_chunk(const std::vector<pm::kernels::SamplingRequest>& chunk,
                  std::vector<pm::kernels::CounterSet>& out);

  SamplerConfig cfg_;
  std::string config_path_;
  int child_pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

}  // namespace pm::sampler
