#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/blocked/trace.hpp"

namespace pm::blocked {

/// Column-major storage for one operand, leading dimension = rows.
struct OperandBuffer {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;

  double& at(std::int64_t r, std::int64_t c) {
    return data[static_cast<std::size_t>(c * rows + r)];
  }
  double* block(std::int64_t row_off, std::int64_t col_off) {
    return data.data() + col_off * rows + row_off;
  }
};

/// Zero-initialized operand buffers matching the algorithm's operands.
std::map<std::string, OperandBuffer> make_operands(
    const BlockedAlgorithm& alg, const std::map<std::string, std::int64_t>& sizes);

/// Runs every trace invocation through the reference kernels, in place on
/// the operand buffers. Exists to verify algorithm definitions numerically;
/// prediction never calls it.
void execute_trace_kernels(const std::vector<TraceEntry>& trace,
                           std::map<std::string, OperandBuffer>& operands);

/// Exact total flop count of a trace (no data is touched).
std::uint64_t trace_flops(const std::vector<TraceEntry>& trace);

}  // namespace pm::blocked
