#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/blocked/blocked.hpp"
#include "pm/kernels/types.hpp"

namespace pm::blocked {

/// Where a trace entry's matrix argument lives: an element offset into a
/// named operand (whose leading dimension is its full row count).
struct MatRef {
  std::string operand;
  std::int64_t row_off = 0;
  std::int64_t col_off = 0;
  bool operator==(const MatRef&) const = default;
};

/// One routine invocation of an unrolled blocked algorithm: the concrete
/// sampling request plus the placement of each matrix argument.
struct TraceEntry {
  pm::kernels::SamplingRequest request;
  std::vector<MatRef> mats;  // one per MatrixData argument, signature order
};

/// Unrolls a blocked algorithm into its exact sequence of routine
/// invocations for the given problem sizes and block size — without
/// touching any matrix data. Invocations where any size argument is zero
/// perform no work and are dropped. Every emitted request is validated
/// against its routine signature.
std::vector<TraceEntry> generate_trace(const BlockedAlgorithm& alg,
                                       const std::map<std::string, std::int64_t>& sizes,
                                       std::int64_t b);

}  // namespace pm::blocked
