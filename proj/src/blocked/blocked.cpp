#include "pm/blocked/blocked.hpp"

#include <algorithm>

#include "pm/common.hpp"

namespace pm::blocked {

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::TLBR: return "TLBR";
    case Direction::BRTL: return "BRTL";
    case Direction::TRBL: return "TRBL";
    case Direction::BLTR: return "BLTR";
    case Direction::LR: return "LR";
    case Direction::RL: return "RL";
    case Direction::TB: return "TB";
    case Direction::BT: return "BT";
    case Direction::None: return "None";
  }
  return "?";
}

std::int64_t AxisSplit::segment(int i) const {
  switch (i) {
    case 0: return e0;
    case 1: return e1;
    case 2: return e2;
  }
  fail("partition segment index ", i, " out of range");
}

std::int64_t AxisSplit::span(int lo, int hi) const {
  if (lo < 0 || hi > 2 || lo > hi) fail("partition span [", lo, ",", hi, "] out of range");
  std::int64_t total = 0;
  for (int i = lo; i <= hi; ++i) total += segment(i);
  return total;
}

std::int64_t AxisSplit::offset(int i) const {
  if (i < 0 || i > 2) fail("partition block index ", i, " out of range");
  std::int64_t total = 0;
  for (int j = 0; j < i; ++j) total += segment(j);
  return total;
}

TArg TArg::C(char c) {
  TArg a;
  a.kind = Kind::Code;
  a.code = c;
  return a;
}
TArg TArg::R(double v) {
  TArg a;
  a.kind = Kind::Real;
  a.real = v;
  return a;
}
TArg TArg::rows(std::string operand, PartRef part) {
  TArg a;
  a.kind = Kind::DimRows;
  a.operand = std::move(operand);
  a.part = part;
  return a;
}
TArg TArg::cols(std::string operand, PartRef part) {
  TArg a;
  a.kind = Kind::DimCols;
  a.operand = std::move(operand);
  a.part = part;
  return a;
}
TArg TArg::mat(std::string operand, PartRef part) {
  TArg a;
  a.kind = Kind::Mat;
  a.operand = std::move(operand);
  a.part = part;
  return a;
}
TArg TArg::ld() {
  TArg a;
  a.kind = Kind::Ld;
  return a;
}

const Traversal& BlockedAlgorithm::traversal(const std::string& operand) const {
  for (const auto& t : operands)
    if (t.operand == operand) return t;
  fail("algorithm ", id, " has no operand named '", operand, "'");
}

namespace {

std::int64_t size_of(const std::map<std::string, std::int64_t>& sizes,
                     const std::string& var, const std::string& id) {
  auto it = sizes.find(var);
  if (it == sizes.end()) fail("algorithm ", id, ": size parameter '", var, "' not given");
  if (it->second < 0) fail("algorithm ", id, ": size parameter '", var, "' is negative");
  return it->second;
}

std::int64_t traversal_extent(const Traversal& t,
                              const std::map<std::string, std::int64_t>& sizes,
                              const std::string& id) {
  const std::int64_t rows = size_of(sizes, t.rows_var, id);
  const std::int64_t cols = size_of(sizes, t.cols_var, id);
  switch (t.dir) {
    case Direction::TLBR:
    case Direction::BRTL:
    case Direction::TRBL:
    case Direction::BLTR:
      return std::max(rows, cols);
    case Direction::LR:
    case Direction::RL:
      return cols;
    case Direction::TB:
    case Direction::BT:
      return rows;
    case Direction::None:
      return 0;
  }
  return 0;
}

/// Splits one axis of extent `e` into positional segments. `forward` means
/// the processed segment sits at the low-index end of the axis.
AxisSplit split_axis(std::int64_t e, std::int64_t p, std::int64_t b_eff, bool forward) {
  const std::int64_t done = std::min(p, e);
  const std::int64_t cur = std::min(b_eff, e - done);
  const std::int64_t rest = e - done - cur;
  return forward ? AxisSplit{done, cur, rest} : AxisSplit{rest, cur, done};
}

AxisSplit whole_axis(std::int64_t e) { return AxisSplit{e, 0, 0}; }

}  // namespace

std::int64_t BlockedAlgorithm::extent(const std::map<std::string, std::int64_t>& sizes) const {
  std::int64_t ext = 0;
  for (const auto& t : operands) ext = std::max(ext, traversal_extent(t, sizes, id));
  return ext;
}

IterationState repartition(const BlockedAlgorithm& alg,
                           const std::map<std::string, std::int64_t>& sizes,
                           std::int64_t p, std::int64_t b) {
  const std::int64_t ext = alg.extent(sizes);
  if (p < 0 || p >= ext)
    fail("algorithm ", alg.id, ": loop position ", p, " outside [0, ", ext, ")");
  if (b < 1) fail("algorithm ", alg.id, ": block size must be at least 1");

  IterationState state;
  state.p = p;
  state.b_eff = std::min(b, ext - p);

  for (const auto& t : alg.operands) {
    const std::int64_t rows = size_of(sizes, t.rows_var, alg.id);
    const std::int64_t cols = size_of(sizes, t.cols_var, alg.id);
    PartTable table;
    switch (t.dir) {
      case Direction::TLBR:
        table.rows = split_axis(rows, p, state.b_eff, true);
        table.cols = split_axis(cols, p, state.b_eff, true);
        break;
      case Direction::BRTL:
        table.rows = split_axis(rows, p, state.b_eff, false);
        table.cols = split_axis(cols, p, state.b_eff, false);
        break;
      case Direction::TRBL:
        table.rows = split_axis(rows, p, state.b_eff, true);
        table.cols = split_axis(cols, p, state.b_eff, false);
        break;
      case Direction::BLTR:
        table.rows = split_axis(rows, p, state.b_eff, false);
        table.cols = split_axis(cols, p, state.b_eff, true);
        break;
      case Direction::LR:
        table.rows = whole_axis(rows);
        table.cols = split_axis(cols, p, state.b_eff, true);
        break;
      case Direction::RL:
        table.rows = whole_axis(rows);
        table.cols = split_axis(cols, p, state.b_eff, false);
        break;
      case Direction::TB:
        table.rows = split_axis(rows, p, state.b_eff, true);
        table.cols = whole_axis(cols);
        break;
      case Direction::BT:
        table.rows = split_axis(rows, p, state.b_eff, false);
        table.cols = whole_axis(cols);
        break;
      case Direction::None:
        table.rows = whole_axis(rows);
        table.cols = whole_axis(cols);
        break;
    }
    state.parts.emplace(t.operand, table);
  }
  return state;
}

}  // namespace pm::blocked
