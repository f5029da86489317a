#include "pm/blocked/execute.hpp"

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::blocked {

std::map<std::string, OperandBuffer> make_operands(
    const BlockedAlgorithm& alg, const std::map<std::string, std::int64_t>& sizes) {
  std::map<std::string, OperandBuffer> operands;
  for (const auto& t : alg.operands) {
    OperandBuffer buf;
    buf.rows = sizes.at(t.rows_var);
    buf.cols = sizes.at(t.cols_var);
    buf.data.assign(static_cast<std::size_t>(buf.rows * buf.cols), 0.0);
    operands.emplace(t.operand, std::move(buf));
  }
  return operands;
}

void execute_trace_kernels(const std::vector<TraceEntry>& trace,
                           std::map<std::string, OperandBuffer>& operands) {
  for (const auto& entry : trace) {
    std::vector<double*> mats;
    mats.reserve(entry.mats.size());
    for (const auto& ref : entry.mats) {
      auto it = operands.find(ref.operand);
      if (it == operands.end()) fail("trace references unknown operand '", ref.operand, "'");
      mats.push_back(it->second.block(ref.row_off, ref.col_off));
    }
    pm::kernels::execute_kernel(entry.request, mats);
  }
}

std::uint64_t trace_flops(const std::vector<TraceEntry>& trace) {
  std::uint64_t total = 0;
  for (const auto& entry : trace) total += pm::kernels::flop_count(entry.request);
  return total;
}

}  // namespace pm::blocked
