#include "pm/sampler/client.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "pm/common.hpp"
#include "pm/sampler/protocol.hpp"

namespace pm::sampler {

using pm::kernels::CounterSet;
using pm::kernels::SamplingRequest;

std::vector<CounterSet> InProcessSampler::sample(const std::vector<SamplingRequest>& batch) {
  return engine_.run_batch(batch);
}

std::vector<CounterSet> CallbackSampler::sample(const std::vector<SamplingRequest>& batch) {
  std::vector<CounterSet> results;
  results.reserve(batch.size());
  for (const SamplingRequest& r : batch) results.push_back(fn_(r));
  return results;
}

SubprocessSampler::SubprocessSampler(std::string executable, const SamplerConfig& cfg)
    : cfg_(cfg) {
  // a write to a dead child must surface as an error return, not a signal
  std::signal(SIGPIPE, SIG_IGN);

  config_path_ = "/tmp/sampler_cfg_" + std::to_string(::getpid()) + "_" +
                 std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".conf";
  {
    std::ofstream f(config_path_);
    if (!f) fail("cannot write sampler config file ", config_path_);
    f << serialize_config(cfg_);
  }

  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
    fail("pipe creation failed: ", std::strerror(errno));

  pid_t pid = ::fork();
  if (pid < 0) fail("fork failed: ", std::strerror(errno));
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl(executable.c_str(), executable.c_str(), "--config", config_path_.c_str(),
            static_cast<char*>(nullptr));
    std::fprintf(stderr, "! cannot execute %s: %s\n", executable.c_str(),
                 std::strerror(errno));
    std::_Exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  child_pid_ = pid;
  to_child_ = ::fdopen(to_child[1], "w");
  from_child_ = ::fdopen(from_child[0], "r");
  if (!to_child_ || !from_child_) fail("fdopen failed for sampler pipes");
}

SubprocessSampler::~SubprocessSampler() {
  if (to_child_) std::fclose(to_child_);  // EOF lets the child exit cleanly
  if (from_child_) std::fclose(from_child_);
  if (child_pid_ > 0) {
    int status = 0;
    ::waitpid(child_pid_, &status, 0);
  }
  if (!config_path_.empty()) ::unlink(config_path_.c_str());
}

void SubprocessSampler::send_chunk(const std::vector<SamplingRequest>& chunk,
                                   std::vector<CounterSet>& out) {
  for (const SamplingRequest& r : chunk) {
    std::string line = format_request_line(r);
    line += '\n';
    if (std::fwrite(line.data(), 1, line.size(), to_child_) != line.size())
      fail("sampler process is not accepting requests (pipe closed)");
  }
  if (std::fputs("go\n", to_child_) < 0 || std::fflush(to_child_) != 0)
    fail("sampler process is not accepting requests (pipe closed)");

  std::string line;
  for (size_t i = 0; i < chunk.size(); ++i) {
    line.clear();
    int c;
    while ((c = std::fgetc(from_child_)) != EOF && c != '\n')
      line.push_back(static_cast<char>(c));
    if (line.empty() && c == EOF)
      fail("sampler process ended the stream after ", out.size(),
           " results (expected ", out.size() + chunk.size() - i, " more)");
    std::string routine;
    CounterSet counters = parse_result_line(line, cfg_.counters, &routine);
    if (routine != chunk[i].routine)
      fail("result for '", routine, "' does not match request '", chunk[i].routine, "'");
    out.push_back(std::move(counters));
  }
}

std::vector<CounterSet> SubprocessSampler::sample(const std::vector<SamplingRequest>& batch) {
  // chunking keeps at most one max_batch of results buffered in the pipe
  size_t chunk_size = static_cast<size_t>(std::min<std::int64_t>(cfg_.max_batch, 512));
  std::vector<CounterSet> out;
  out.reserve(batch.size());
  for (size_t at = 0; at < batch.size(); at += chunk_size) {
    size_t end = std::min(batch.size(), at + chunk_size);
    std::vector<SamplingRequest> chunk(batch.begin() + at, batch.begin() + end);
    send_chunk(chunk, out);
  }
  return out;
}

}  // namespace pm::sampler
