#include "pm/sampler/arena.hpp"

#include <numeric>

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::sampler {

Xorshift64Star::Xorshift64Star(std::uint64_t seed)
    : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}

std::uint64_t Xorshift64Star::next_u64() {
  state ^= state >> 12;
  state ^= state << 25;
  state ^= state >> 27;
  return state * 2685821657736338717ull;
}

double Xorshift64Star::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Arena::Arena(std::uint64_t bytes, std::uint64_t seed)
    : data_(bytes / sizeof(double)), rng_(seed) {
  if (data_.empty()) fail("arena size ", bytes, " bytes is smaller than one element");
  for (double& v : data_) v = rng_.next_double();
}

void Arena::refill() {
  for (double& v : data_) v = rng_.next_double();
}

std::vector<std::uint64_t> Arena::place(const std::vector<std::uint64_t>& footprints,
                                        Policy policy, bool refill_on_wrap) {
  std::uint64_t total = std::accumulate(footprints.begin(), footprints.end(),
                                        std::uint64_t{0});
  if (total > capacity_bytes())
    fail("operand set of ", total, " bytes exceeds arena capacity of ",
         capacity_bytes(), " bytes");

  std::vector<std::uint64_t> offsets;
  offsets.reserve(footprints.size());
  if (policy == Policy::InCache) {
    std::uint64_t at = 0;
    for (std::uint64_t f : footprints) {
      offsets.push_back(at);
      at += f;
    }
    return offsets;
  }
  // trash: the whole operand set is placed contiguously; wrap before the set
  // if it would run past the end, so operands of one request never overlap
  if (cursor_ + total > capacity_bytes()) {
    cursor_ = 0;
    ++generation_;
    if (refill_on_wrap) refill();
  }
  for (std::uint64_t f : footprints) {
    offsets.push_back(cursor_);
    cursor_ += f;
  }
  return offsets;
}

std::vector<std::uint64_t> operand_footprints(const pm::kernels::SamplingRequest& request) {
  using pm::kernels::ArgKind;
  const auto& sig = pm::kernels::lookup_signature(request.routine);
  std::vector<std::uint64_t> footprints;
  for (size_t i = 0; i < sig.args.size(); ++i) {
    const ArgKind& kind = sig.args[i].second;
    if (kind.tag != ArgKind::Tag::MatrixData) continue;
    std::int64_t ld = 0;
    for (size_t j = 0; j < sig.args.size(); ++j)
      if (sig.args[j].second.tag == ArgKind::Tag::LeadingDim &&
          sig.args[j].second.bound_matrix == sig.args[i].first)
        ld = request.int_at(j);
    std::int64_t cols = kind.cols.eval(request, sig);
    footprints.push_back(static_cast<std::uint64_t>(ld) *
                         static_cast<std::uint64_t>(cols) * sizeof(double));
  }
  return footprints;
}

std::vector<std::uint64_t> place_operands(const pm::kernels::SamplingRequest& request,
                                          const SamplerConfig& config, Arena& arena) {
  return arena.place(operand_footprints(request), config.policy, config.refill_on_wrap);
}

}  // namespace pm::sampler
