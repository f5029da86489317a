#include "pm/sampler/engine.hpp"

#include <chrono>
#include <istream>
#include <ostream>

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"
#include "pm/sampler/protocol.hpp"

namespace pm::sampler {

using pm::kernels::CounterSet;
using pm::kernels::SamplingRequest;

namespace {

std::uint64_t now_ticks() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

}  // namespace

Engine::Engine(SamplerConfig cfg) : cfg_(std::move(cfg)), arena_(cfg_.memory_bytes, cfg_.seed) {}

std::vector<CounterSet> Engine::run_batch(const std::vector<SamplingRequest>& batch) {
  // placement phase: resolve every operand before any measurement happens
  std::vector<std::vector<double*>> operands(batch.size());
  std::vector<std::int64_t> warmups(batch.size(), 0);
  for (size_t i = 0; i < batch.size(); ++i) {
    std::vector<std::uint64_t> offsets = place_operands(batch[i], cfg_, arena_);
    for (std::uint64_t off : offsets) operands[i].push_back(arena_.at_offset(off));
    if (cfg_.warmup > 0) {
      std::string key = format_request_line(batch[i]);
      if (warmed_.insert(key).second) warmups[i] = cfg_.warmup;
    }
  }

  // measurement phase: back-to-back execution, no stream I/O
  std::vector<CounterSet> results(batch.size());
  for (size_t i = 0; i < batch.size(); ++i) {
    for (std::int64_t w = 0; w < warmups[i]; ++w)
      pm::kernels::execute_kernel(batch[i], operands[i]);
    std::uint64_t t0 = now_ticks();
    pm::kernels::execute_kernel(batch[i], operands[i]);
    std::uint64_t t1 = now_ticks();
    for (const std::string& name : cfg_.counters) {
      if (name == "ticks")
        results[i][name] = t1 - t0;
      else if (name == "flops")
        results[i][name] = pm::kernels::flop_count(batch[i]);
      else
        fail("counter '", name, "' has no backend");
    }
  }
  return results;
}

int main_loop(std::istream& in, std::ostream& out, std::ostream& err,
              const SamplerConfig& cfg) {
  Engine engine(cfg);
  std::vector<SamplingRequest> batch;

  auto flush_batch = [&] {
    if (batch.empty()) return;
    std::vector<CounterSet> results = engine.run_batch(batch);
    for (size_t i = 0; i < batch.size(); ++i)
      out << format_result_line(batch[i], results[i], cfg.counters) << '\n';
    out.flush();
    batch.clear();
  };

  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ParsedLine parsed;
    try {
      parsed = parse_request_line(line);
    } catch (const pm::error& e) {
      err << "! line " << line_no << ": " << e.what() << '\n';
      err.flush();
      continue;
    }
    switch (parsed.kind) {
      case ParsedLine::Kind::Skip: break;
      case ParsedLine::Kind::Go: flush_batch(); break;
      case ParsedLine::Kind::Request:
        batch.push_back(std::move(parsed.request));
        if (static_cast<std::int64_t>(batch.size()) >= cfg.max_batch) flush_batch();
        break;
    }
  }
  flush_batch();
  return 0;
}

}  // namespace pm::sampler
