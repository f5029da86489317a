#pragma once

#include <cstdint>
#include <vector>

#include "pm/kernels/types.hpp"
#include "pm/sampler/config.hpp"

namespace pm::sampler {

/// 64-bit xorshift* generator producing uniform doubles in [0,1).
///
/// State update: x ^= x>>12; x ^= x<<25; x ^= x>>27; output is
/// (x * 2685821657736338717) >> 11 scaled by 2^-53. A zero seed is replaced
/// by a fixed nonzero constant (the generator would otherwise be stuck).
struct Xorshift64Star {
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next_u64();
  double next_double();

  std::uint64_t state;
};

/// The preallocated memory chunk kernels run in, plus the placement cursor.
class Arena {
 public:
  /// Allocates `bytes` (rounded down to whole doubles) and fills the buffer
  /// with pseudo-random doubles in [0,1) from `seed`.
  Arena(std::uint64_t bytes, std::uint64_t seed);

  double* data() { return data_.data(); }
  std::uint64_t capacity_bytes() const { return data_.size() * sizeof(double); }
  std::uint64_t cursor() const { return cursor_; }
  std::uint64_t generation() const { return generation_; }

  /// Re-randomizes the whole buffer, continuing the generator's stream.
  void refill();

  /// Assigns byte offsets for a set of operand footprints (bytes, multiples
  /// of 8). Trash policy: sequential from the cursor, wrapping the whole set
  /// to offset 0 (generation+1, optional refill) if it would run past the
  /// end — placing the set contiguously keeps its operands non-overlapping.
  /// InCache policy: packed back-to-back from offset 0, cursor untouched.
  /// Throws pm::error if the total footprint exceeds the capacity.
  std::vector<std::uint64_t> place(const std::vector<std::uint64_t>& footprints,
                                   Policy policy, bool refill_on_wrap);

  /// Pointer to the double at byte offset `off` (must be 8-aligned).
  double* at_offset(std::uint64_t off) { return data_.data() + off / sizeof(double); }

 private:
  std::vector<double> data_;
  Xorshift64Star rng_;
  std::uint64_t cursor_ = 0;
  std::uint64_t generation_ = 0;
};

/// Byte footprints (ld * cols * 8) of the request's matrix operands, in
/// argument order.
std::vector<std::uint64_t> operand_footprints(const pm::kernels::SamplingRequest& request);

/// Places all matrix operands of one validated request; returns byte offsets
/// in matrix-argument order.
std::vector<std::uint64_t> place_operands(const pm::kernels::SamplingRequest& request,
                                          const SamplerConfig& config, Arena& arena);

}  // namespace pm::sampler
