#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/kernels/types.hpp"

namespace pm::blocked {

/// How a blocked loop traverses one operand. Diagonal directions partition
/// both axes into 3x3 blocks; band directions partition one axis into three
/// segments and keep the other whole; None leaves the operand unpartitioned.
/// The first letters name where processing starts (e.g. TLBR: the processed
/// part grows from the top-left corner toward the bottom-right).
enum class Direction { TLBR, BRTL, TRBL, BLTR, LR, RL, TB, BT, None };

std::string direction_name(Direction d);

/// One operand of a blocked algorithm: its dimensions are named size
/// parameters and it is traversed in a fixed direction.
struct Traversal {
  std::string operand;
  std::string rows_var;
  std::string cols_var;
  Direction dir = Direction::None;
};

/// A rectangular group of partition blocks, addressed by inclusive block
/// index ranges into the positional (top-left origin) partition grid.
/// {1,1,1,1} is the middle block; {1,2,1,1} stacks the middle and bottom
/// blocks of the middle column into one panel.
struct PartRef {
  int r0 = 0, r1 = 0, c0 = 0, c1 = 0;
  bool operator==(const PartRef&) const = default;
};

/// Extents of the three positional segments of one axis (top to bottom or
/// left to right). Band and None traversals put the whole extent into
/// segment 0.
struct AxisSplit {
  std::int64_t e0 = 0, e1 = 0, e2 = 0;

  std::int64_t segment(int i) const;
  /// Sum of segments lo..hi (inclusive).
  std::int64_t span(int lo, int hi) const;
  /// Sum of segments before block index i.
  std::int64_t offset(int i) const;
};

struct PartTable {
  AxisSplit rows, cols;
};

/// The partition geometry of one loop iteration: p operand entries have
/// been processed, the current step covers b_eff more.
struct IterationState {
  std::int64_t p = 0;
  std::int64_t b_eff = 0;
  std::map<std::string, PartTable> parts;
};

/// One argument of an update statement, evaluated against the iteration
/// state when a trace is generated:
///  - Code / Real: literal discrete code or scalar,
///  - DimRows / DimCols: row/column extent of an operand part,
///  - Mat: an operand part as a matrix operand,
///  - Ld: leading dimension, derived from the matrix argument it is bound
///    to (the operand's full row count — traces address unpacked operands).
struct TArg {
  enum class Kind { Code, Real, DimRows, DimCols, Mat, Ld };
  Kind kind = Kind::Ld;
  char code = 0;
  double real = 0.0;
  std::string operand;
  PartRef part;

  static TArg C(char c);
  static TArg R(double v);
  static TArg rows(std::string operand, PartRef part);
  static TArg cols(std::string operand, PartRef part);
  static TArg mat(std::string operand, PartRef part);
  static TArg ld();
};

/// One routine invocation of the loop body, with arguments aligned
/// one-to-one with the routine's signature.
struct UpdateStatement {
  std::string routine;
  std::vector<TArg> args;
};

/// A blocked algorithm: a loop over partitioned operands whose body invokes
/// computational routines on partition blocks. Executing it is never
/// required for performance prediction — the loop structure alone yields
/// the exact sequence of routine invocations.
struct BlockedAlgorithm {
  std::string id;         // operation name + variant number, e.g. "trinv3"
  std::string operation;  // e.g. "trinv"
  int variant = 0;
  std::vector<std::string> size_params;  // e.g. {"n"} or {"m", "n"}
  std::vector<Traversal> operands;
  std::vector<UpdateStatement> body;

  const Traversal& traversal(const std::string& operand) const;
  /// Loop trip extent: the largest traversed extent over all operands.
  std::int64_t extent(const std::map<std::string, std::int64_t>& sizes) const;
};

/// Partition geometry at loop position p with nominal block size b
/// (0 <= p < extent, b >= 1). The effective step is min(b, extent - p);
/// per-operand splits saturate at the operand's own extents.
IterationState repartition(const BlockedAlgorithm& alg,
                           const std::map<std::string, std::int64_t>& sizes,
                           std::int64_t p, std::int64_t b);

}  // namespace pm::blocked
