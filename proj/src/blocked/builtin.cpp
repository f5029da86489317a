#include "pm/blocked/builtin.hpp"

#include "pm/common.hpp"

namespace pm::blocked {

namespace {

PartRef block(int r, int c) { return PartRef{r, r, c, c}; }

// The current-column panel spanning the middle and bottom partition blocks.
constexpr PartRef kPanel{1, 2, 1, 1};
// The processed columns left of the panel, spanning the same rows.
constexpr PartRef kPanelLeft{1, 2, 0, 0};

UpdateStatement trmm(char side, double alpha, PartRef tri, PartRef rect,
                     const std::string& op = "L") {
  return {"dtrmm",
          {TArg::C(side), TArg::C('L'), TArg::C('N'), TArg::C('N'), TArg::rows(op, rect),
           TArg::cols(op, rect), TArg::R(alpha), TArg::mat(op, tri), TArg::ld(),
           TArg::mat(op, rect), TArg::ld()}};
}

UpdateStatement trsm(char side, char diag, double alpha, PartRef tri, PartRef rect,
                     const std::string& op) {
  return {"dtrsm",
          {TArg::C(side), TArg::C('L'), TArg::C('N'), TArg::C(diag), TArg::rows(op, rect),
           TArg::cols(op, rect), TArg::R(alpha), TArg::mat(op, tri), TArg::ld(),
           TArg::mat(op, rect), TArg::ld()}};
}

UpdateStatement trinv_unb(PartRef tri, const std::string& op = "L") {
  return {"dtrinv_unb",
          {TArg::C('N'), TArg::rows(op, tri), TArg::mat(op, tri), TArg::ld()}};
}

UpdateStatement getrf_unb(PartRef part, const std::string& op = "A") {
  return {"dgetrf_unb",
          {TArg::rows(op, part), TArg::cols(op, part), TArg::mat(op, part), TArg::ld()}};
}

std::vector<BlockedAlgorithm> make_builtins() {
  std::vector<BlockedAlgorithm> algs;

  auto add = [&](std::string operation, int variant, std::vector<std::string> size_params,
                 std::vector<Traversal> operands, std::vector<UpdateStatement> body) {
    BlockedAlgorithm alg;
    alg.operation = operation;
    alg.variant = variant;
    alg.id = operation + std::to_string(variant);
    alg.size_params = std::move(size_params);
    alg.operands = std::move(operands);
    alg.body = std::move(body);
    algs.push_back(std::move(alg));
  };

  // --- Lower-triangular inversion: L := L^{-1} ---------------------------
  // Lazy variants touch only processed blocks; eager variants keep the
  // unprocessed part updated. Both corners of the diagonal serve as start.

  add("trinv", 1, {"n"}, {{"L", "n", "n", Direction::TLBR}},
      {
          // L10 := L10 * inv(L00)   (inv(L00) already stored in place)
          trmm('R', 1.0, block(0, 0), block(1, 0)),
          // L10 := -inv(L11) * L10
          trsm('L', 'N', -1.0, block(1, 1), block(1, 0), "L"),
          trinv_unb(block(1, 1)),
      });

  add("trinv", 2, {"n"}, {{"L", "n", "n", Direction::BRTL}},
      {
          // L21 := inv(L22) * L21
          trmm('L', 1.0, block(2, 2), block(2, 1)),
          // L21 := -L21 * inv(L11)
          trsm('R', 'N', -1.0, block(1, 1), block(2, 1), "L"),
          trinv_unb(block(1, 1)),
      });

  add("trinv", 3, {"n"}, {{"L", "n", "n", Direction::TLBR}},
      {
          // L21 := -L21 * inv(L11)
          trsm('R', 'N', -1.0, block(1, 1), block(2, 1), "L"),
          // L20 += L21 * L10
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("L", block(2, 0)),
            TArg::cols("L", block(2, 0)), TArg::cols("L", block(2, 1)), TArg::R(1.0),
            TArg::mat("L", block(2, 1)), TArg::ld(), TArg::mat("L", block(1, 0)),
            TArg::ld(), TArg::R(1.0), TArg::mat("L", block(2, 0)), TArg::ld()}},
          // L10 := inv(L11) * L10
          trsm('L', 'N', 1.0, block(1, 1), block(1, 0), "L"),
          trinv_unb(block(1, 1)),
      });

  add("trinv", 4, {"n"}, {{"L", "n", "n", Direction::BRTL}},
      {
          // L21 := L21 * inv(L11)
          trsm('R', 'N', 1.0, block(1, 1), block(2, 1), "L"),
          // L20 -= L21 * L10
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("L", block(2, 0)),
            TArg::cols("L", block(2, 0)), TArg::cols("L", block(2, 1)), TArg::R(-1.0),
            TArg::mat("L", block(2, 1)), TArg::ld(), TArg::mat("L", block(1, 0)),
            TArg::ld(), TArg::R(1.0), TArg::mat("L", block(2, 0)), TArg::ld()}},
          // L10 := -inv(L11) * L10
          trsm('L', 'N', -1.0, block(1, 1), block(1, 0), "L"),
          trinv_unb(block(1, 1)),
      });

  // --- LU factorization without pivoting: A = L U ------------------------

  add("lu", 1, {"n"}, {{"A", "n", "n", Direction::TLBR}},
      {
          getrf_unb(kPanel),
          // A12 := inv(L11) * A12
          trsm('L', 'U', 1.0, block(1, 1), block(1, 2), "A"),
          // A22 -= A21 * A12
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("A", block(2, 2)),
            TArg::cols("A", block(2, 2)), TArg::cols("A", block(2, 1)), TArg::R(-1.0),
            TArg::mat("A", block(2, 1)), TArg::ld(), TArg::mat("A", block(1, 2)),
            TArg::ld(), TArg::R(1.0), TArg::mat("A", block(2, 2)), TArg::ld()}},
      });

  add("lu", 2, {"n"}, {{"A", "n", "n", Direction::TLBR}},
      {
          // A01 := inv(L00) * A01
          trsm('L', 'U', 1.0, block(0, 0), block(0, 1), "A"),
          // [A11; A21] -= [A10; A20] * A01
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("A", kPanel), TArg::cols("A", kPanel),
            TArg::cols("A", kPanelLeft), TArg::R(-1.0), TArg::mat("A", kPanelLeft),
            TArg::ld(), TArg::mat("A", block(0, 1)), TArg::ld(), TArg::R(1.0),
            TArg::mat("A", kPanel), TArg::ld()}},
          getrf_unb(kPanel),
      });

  add("lu", 3, {"n"}, {{"A", "n", "n", Direction::TLBR}},
      {
          // [A11; A21] -= [A10; A20] * A01
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("A", kPanel), TArg::cols("A", kPanel),
            TArg::cols("A", kPanelLeft), TArg::R(-1.0), TArg::mat("A", kPanelLeft),
            TArg::ld(), TArg::mat("A", block(0, 1)), TArg::ld(), TArg::R(1.0),
            TArg::mat("A", kPanel), TArg::ld()}},
          getrf_unb(kPanel),
          // A12 -= A10 * A02
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("A", block(1, 2)),
            TArg::cols("A", block(1, 2)), TArg::cols("A", block(1, 0)), TArg::R(-1.0),
            TArg::mat("A", block(1, 0)), TArg::ld(), TArg::mat("A", block(0, 2)),
            TArg::ld(), TArg::R(1.0), TArg::mat("A", block(1, 2)), TArg::ld()}},
          // A12 := inv(L11) * A12
          trsm('L', 'U', 1.0, block(1, 1), block(1, 2), "A"),
      });

  // --- Triangular Sylvester equation: A X + X B = C, X overwrites C ------
  // A is m x m lower triangular, B is n x n upper triangular.

  add("sylv", 1, {"m", "n"},
      {{"A", "m", "m", Direction::None},
       {"B", "n", "n", Direction::TLBR},
       {"C", "m", "n", Direction::LR}},
      {
          // C1 -= X0 * B01
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("C", block(0, 1)),
            TArg::cols("C", block(0, 1)), TArg::cols("C", block(0, 0)), TArg::R(-1.0),
            TArg::mat("C", block(0, 0)), TArg::ld(), TArg::mat("B", block(0, 1)),
            TArg::ld(), TArg::R(1.0), TArg::mat("C", block(0, 1)), TArg::ld()}},
          // A X1 + X1 B11 = C1
          {"dsylv_unb",
           {TArg::rows("C", block(0, 1)), TArg::cols("C", block(0, 1)),
            TArg::mat("A", block(0, 0)), TArg::ld(), TArg::mat("B", block(1, 1)),
            TArg::ld(), TArg::mat("C", block(0, 1)), TArg::ld()}},
      });

  add("sylv", 2, {"m", "n"},
      {{"A", "m", "m", Direction::TLBR},
       {"B", "n", "n", Direction::None},
       {"C", "m", "n", Direction::TB}},
      {
          // C1 -= A10 * X0
          {"dgemm",
           {TArg::C('N'), TArg::C('N'), TArg::rows("C", block(1, 0)),
            TArg::cols("C", block(1, 0)), TArg::cols("A", block(1, 0)), TArg::R(-1.0),
            TArg::mat("A", block(1, 0)), TArg::ld(), TArg::mat("C", block(0, 0)),
            TArg::ld(), TArg::R(1.0), TArg::mat("C", block(1, 0)), TArg::ld()}},
          // A11 X1 + X1 B = C1
          {"dsylv_unb",
           {TArg::rows("C", block(1, 0)), TArg::cols("C", block(1, 0)),
            TArg::mat("A", block(1, 1)), TArg::ld(), TArg::mat("B", block(0, 0)),
            TArg::ld(), TArg::mat("C", block(1, 0)), TArg::ld()}},
      });

  return algs;
}

const std::vector<BlockedAlgorithm>& builtins() {
  static const std::vector<BlockedAlgorithm> algs = make_builtins();
  return algs;
}

}  // namespace

const BlockedAlgorithm& builtin_algorithm(const std::string& operation, int variant) {
  for (const auto& alg : builtins())
    if (alg.operation == operation && alg.variant == variant) return alg;
  fail("unknown blocked algorithm: operation '", operation, "', variant ", variant);
}

const BlockedAlgorithm& algorithm_by_id(const std::string& id) {
  for (const auto& alg : builtins())
    if (alg.id == id) return alg;
  fail("unknown algorithm id '", id, "'");
}

std::vector<std::string> algorithm_ids() {
  std::vector<std::string> ids;
  for (const auto& alg : builtins()) ids.push_back(alg.id);
  return ids;
}

std::vector<std::string> operation_names() {
  std::vector<std::string> names;
  for (const auto& alg : builtins())
    if (names.empty() || names.back() != alg.operation) names.push_back(alg.operation);
  return names;
}

std::vector<const BlockedAlgorithm*> algorithms_for(const std::string& operation) {
  std::vector<const BlockedAlgorithm*> out;
  for (const auto& alg : builtins())
    if (alg.operation == operation) out.push_back(&alg);
  if (out.empty()) fail("unknown operation '", operation, "'");
  return out;
}

}  // namespace pm::blocked
