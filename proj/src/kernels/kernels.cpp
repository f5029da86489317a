// Deterministic reference implementations of the sampled kernels.
// Straightforward column-major loop nests, correctness over speed.
//
// Flop accounting conventions (the analytic oracle in flops.cpp mirrors these
// exactly):
//   - additions, subtractions, multiplications and divisions count 1 each;
//   - negation and sign folding are free (alpha in {+1,-1} costs nothing);
//   - zeroing an operand is free (beta=0 / alpha=0 paths);
//   - products accumulate directly into their target, so a gemm update with
//     alpha=+-1 and beta in {0,1} performs exactly 2mnk operations.

#include <cstdint>

#include "pm/kernels/registry.hpp"

namespace pm::kernels::detail {

namespace {

// Counted floating-point ops; `t` may be null for plain (timed) execution.
struct Ops {
  FlopTally* t;
  double add(double a, double b) {
    if (t) ++t->adds;
    return a + b;
  }
  double sub(double a, double b) {
    if (t) ++t->adds;
    return a - b;
  }
  double mul(double a, double b) {
    if (t) ++t->muls;
    return a * b;
  }
  double div(double a, double b) {
    if (t) ++t->divs;
    return a / b;
  }
};

bool is_sign(double a) { return a == 1.0 || a == -1.0; }

// ---- dgemm: C := alpha*op(A)*op(B) + beta*C ------------------------------
void k_dgemm(const SamplingRequest& req, const RoutineSignature& sig,
             const std::vector<double*>& mats, FlopTally* tally) {
  const char ta = req.discrete_arg(sig, "transA");
  const char tb = req.discrete_arg(sig, "transB");
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const std::int64_t k = req.size_arg(sig, "k");
  const double alpha = req.scalar_arg(sig, "alpha");
  const double beta = req.scalar_arg(sig, "beta");
  const std::int64_t ldA = req.int_at(7);
  const std::int64_t ldB = req.int_at(9);
  const std::int64_t ldC = req.int_at(12);
  double* A = mats[0];
  double* B = mats[1];
  double* C = mats[2];
  Ops o{tally};

  auto a = [&](std::int64_t i, std::int64_t l) {
    return ta == 'N' ? A[i + l * ldA] : A[l + i * ldA];
  };
  auto b = [&](std::int64_t l, std::int64_t j) {
    return tb == 'N' ? B[l + j * ldB] : B[j + l * ldB];
  };

  if (beta == 0.0) {
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t i = 0; i < m; ++i) C[i + j * ldC] = 0.0;
  } else if (beta != 1.0) {
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t i = 0; i < m; ++i)
        C[i + j * ldC] = o.mul(beta, C[i + j * ldC]);
  }
  if (alpha == 0.0) return;

  const bool neg = alpha == -1.0;
  const bool scaled = !is_sign(alpha);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t l = 0; l < k; ++l)
      for (std::int64_t i = 0; i < m; ++i) {
        double p = o.mul(a(i, l), b(l, j));
        if (scaled) p = o.mul(alpha, p);
        double& c = C[i + j * ldC];
        c = neg ? o.sub(c, p) : o.add(c, p);
      }
}

// shared alpha pre-pass for the triangular updates: B := alpha*B
// (alpha=0 zeroes B for free, alpha=-1 folds the sign for free)
bool apply_alpha(Ops& o, double alpha, double* B, std::int64_t ldB, std::int64_t m,
                 std::int64_t n) {
  if (alpha == 0.0) {
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t i = 0; i < m; ++i) B[i + j * ldB] = 0.0;
    return false;  // nothing left to do
  }
  if (alpha == -1.0) {
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t i = 0; i < m; ++i) B[i + j * ldB] = -B[i + j * ldB];
  } else if (alpha != 1.0) {
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t i = 0; i < m; ++i)
        B[i + j * ldB] = o.mul(alpha, B[i + j * ldB]);
  }
  return true;
}

// ---- dtrsm: B := alpha*op(A)^-1*B  or  alpha*B*op(A)^-1 -------------------
void k_dtrsm(const SamplingRequest& req, const RoutineSignature& sig,
             const std::vector<double*>& mats, FlopTally* tally) {
  const char side = req.discrete_arg(sig, "side");
  const char uplo = req.discrete_arg(sig, "uplo");
  const char ta = req.discrete_arg(sig, "transA");
  const char diag = req.discrete_arg(sig, "diag");
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const double alpha = req.scalar_arg(sig, "alpha");
  const std::int64_t ldA = req.int_at(8);
  const std::int64_t ldB = req.int_at(10);
  double* A = mats[0];
  double* B = mats[1];
  Ops o{tally};

  if (!apply_alpha(o, alpha, B, ldB, m, n)) return;

  auto a = [&](std::int64_t i, std::int64_t j) {
    return ta == 'N' ? A[i + j * ldA] : A[j + i * ldA];
  };
  const bool lower = (uplo == 'L') == (ta == 'N');  // structure of op(A)
  const bool unit = diag == 'U';

  if (side == 'L') {
    // solve op(A)*X = B', column by column
    for (std::int64_t j = 0; j < n; ++j) {
      if (lower) {
        for (std::int64_t i = 0; i < m; ++i) {
          double s = B[i + j * ldB];
          for (std::int64_t l = 0; l < i; ++l)
            s = o.sub(s, o.mul(a(i, l), B[l + j * ldB]));
          B[i + j * ldB] = unit ? s : o.div(s, a(i, i));
        }
      } else {
        for (std::int64_t i = m - 1; i >= 0; --i) {
          double s = B[i + j * ldB];
          for (std::int64_t l = i + 1; l < m; ++l)
            s = o.sub(s, o.mul(a(i, l), B[l + j * ldB]));
          B[i + j * ldB] = unit ? s : o.div(s, a(i, i));
        }
      }
    }
  } else {
    // solve X*op(A) = B': column j of X depends on prior columns of X
    if (!lower) {
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < m; ++i) {
          double s = B[i + j * ldB];
          for (std::int64_t l = 0; l < j; ++l)
            s = o.sub(s, o.mul(B[i + l * ldB], a(l, j)));
          B[i + j * ldB] = unit ? s : o.div(s, a(j, j));
        }
    } else {
      for (std::int64_t j = n - 1; j >= 0; --j)
        for (std::int64_t i = 0; i < m; ++i) {
          double s = B[i + j * ldB];
          for (std::int64_t l = j + 1; l < n; ++l)
            s = o.sub(s, o.mul(B[i + l * ldB], a(l, j)));
          B[i + j * ldB] = unit ? s : o.div(s, a(j, j));
        }
    }
  }
}

// ---- dtrmm: B := alpha*op(A)*B  or  alpha*B*op(A) -------------------------
void k_dtrmm(const SamplingRequest& req, const RoutineSignature& sig,
             const std::vector<double*>& mats, FlopTally* tally) {
  const char side = req.discrete_arg(sig, "side");
  const char uplo = req.discrete_arg(sig, "uplo");
  const char ta = req.discrete_arg(sig, "transA");
  const char diag = req.discrete_arg(sig, "diag");
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const double alpha = req.scalar_arg(sig, "alpha");
  const std::int64_t ldA = req.int_at(8);
  const std::int64_t ldB = req.int_at(10);
  double* A = mats[0];
  double* B = mats[1];
  Ops o{tally};

  if (!apply_alpha(o, alpha, B, ldB, m, n)) return;

  auto a = [&](std::int64_t i, std::int64_t j) {
    return ta == 'N' ? A[i + j * ldA] : A[j + i * ldA];
  };
  const bool lower = (uplo == 'L') == (ta == 'N');
  const bool unit = diag == 'U';

  if (side == 'L') {
    // X[i,j] = sum over l of op(A)[i,l]*B[l,j]; traversal order keeps the
    // not-yet-consumed B entries intact while overwriting in place
    for (std::int64_t j = 0; j < n; ++j) {
      if (lower) {
        for (std::int64_t i = m - 1; i >= 0; --i) {
          double s = unit ? B[i + j * ldB] : o.mul(a(i, i), B[i + j * ldB]);
          for (std::int64_t l = 0; l < i; ++l)
            s = o.add(s, o.mul(a(i, l), B[l + j * ldB]));
          B[i + j * ldB] = s;
        }
      } else {
        for (std::int64_t i = 0; i < m; ++i) {
          double s = unit ? B[i + j * ldB] : o.mul(a(i, i), B[i + j * ldB]);
          for (std::int64_t l = i + 1; l < m; ++l)
            s = o.add(s, o.mul(a(i, l), B[l + j * ldB]));
          B[i + j * ldB] = s;
        }
      }
    }
  } else {
    // X[i,j] = sum over l of B[i,l]*op(A)[l,j]
    if (!lower) {
      for (std::int64_t j = n - 1; j >= 0; --j)
        for (std::int64_t i = 0; i < m; ++i) {
          double s = unit ? B[i + j * ldB] : o.mul(B[i + j * ldB], a(j, j));
          for (std::int64_t l = 0; l < j; ++l)
            s = o.add(s, o.mul(B[i + l * ldB], a(l, j)));
          B[i + j * ldB] = s;
        }
    } else {
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < m; ++i) {
          double s = unit ? B[i + j * ldB] : o.mul(B[i + j * ldB], a(j, j));
          for (std::int64_t l = j + 1; l < n; ++l)
            s = o.add(s, o.mul(B[i + l * ldB], a(l, j)));
          B[i + j * ldB] = s;
        }
    }
  }
}

// ---- dtrinv_unb: in-place inversion of a lower-triangular matrix ----------
// Columns are processed right to left; when column j is handled, the trailing
// triangle already holds its own inverse, so the below-diagonal part becomes
// (inv(L22)*l21) * (-1/l_jj).
void k_dtrinv(const SamplingRequest& req, const RoutineSignature& sig,
              const std::vector<double*>& mats, FlopTally* tally) {
  const char diag = req.discrete_arg(sig, "diag");
  const std::int64_t n = req.size_arg(sig, "n");
  const std::int64_t ldA = req.int_at(3);
  double* A = mats[0];
  Ops o{tally};
  const bool unit = diag == 'U';

  for (std::int64_t j = n - 1; j >= 0; --j) {
    double ajj = -1.0;
    if (!unit) {
      A[j + j * ldA] = o.div(1.0, A[j + j * ldA]);
      ajj = -A[j + j * ldA];
    }
    double* v = A + (j + 1) + j * ldA;         // column below the diagonal
    double* T = A + (j + 1) + (j + 1) * ldA;   // trailing (inverted) triangle
    const std::int64_t q = n - 1 - j;
    for (std::int64_t i = q - 1; i >= 0; --i) {
      double s = unit ? v[i] : o.mul(T[i + i * ldA], v[i]);
      for (std::int64_t l = 0; l < i; ++l)
        s = o.add(s, o.mul(T[i + l * ldA], v[l]));
      v[i] = s;
    }
    for (std::int64_t i = 0; i < q; ++i)
      v[i] = unit ? -v[i] : o.mul(ajj, v[i]);
  }
}

// ---- dgetrf_unb: unblocked right-looking LU without pivoting --------------
void k_dgetrf(const SamplingRequest& req, const RoutineSignature& sig,
              const std::vector<double*>& mats, FlopTally* tally) {
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const std::int64_t ldA = req.int_at(3);
  double* A = mats[0];
  Ops o{tally};

  const std::int64_t mn = m < n ? m : n;
  for (std::int64_t t = 0; t < mn; ++t) {
    const double piv = A[t + t * ldA];
    for (std::int64_t i = t + 1; i < m; ++i)
      A[i + t * ldA] = o.div(A[i + t * ldA], piv);
    for (std::int64_t j = t + 1; j < n; ++j)
      for (std::int64_t i = t + 1; i < m; ++i)
        A[i + j * ldA] = o.sub(A[i + j * ldA], o.mul(A[i + t * ldA], A[t + j * ldA]));
  }
}

// ---- dsylv_unb: A*X + X*B = C, A lower (m x m), B upper (n x n) ------------
// X overwrites C; elements are solved in column-major order so every
// dependency is already final.
void k_dsylv(const SamplingRequest& req, const RoutineSignature& sig,
             const std::vector<double*>& mats, FlopTally* tally) {
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const std::int64_t ldA = req.int_at(3);
  const std::int64_t ldB = req.int_at(5);
  const std::int64_t ldC = req.int_at(7);
  double* A = mats[0];
  double* B = mats[1];
  double* C = mats[2];
  Ops o{tally};

  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < m; ++i) {
      double s = C[i + j * ldC];
      for (std::int64_t l = 0; l < i; ++l)
        s = o.sub(s, o.mul(A[i + l * ldA], C[l + j * ldC]));
      for (std::int64_t l = 0; l < j; ++l)
        s = o.sub(s, o.mul(C[i + l * ldC], B[l + j * ldB]));
      C[i + j * ldC] = o.div(s, o.add(A[i + i * ldA], B[j + j * ldB]));
    }
}

} // namespace

// analytic flop formulas, defined in flops.cpp
std::uint64_t flops_dgemm(const SamplingRequest&, const RoutineSignature&);
std::uint64_t flops_dtrsm(const SamplingRequest&, const RoutineSignature&);
std::uint64_t flops_dtrmm(const SamplingRequest&, const RoutineSignature&);
std::uint64_t flops_dtrinv(const SamplingRequest&, const RoutineSignature&);
std::uint64_t flops_dgetrf(const SamplingRequest&, const RoutineSignature&);
std::uint64_t flops_dsylv(const SamplingRequest&, const RoutineSignature&);

RoutineEntry make_dgemm() {
  RoutineSignature sig;
  sig.name = "dgemm";
  sig.args = {
      {"transA", ArgKind::discrete("NT")},
      {"transB", ArgKind::discrete("NT")},
      {"m", ArgKind::size()},
      {"n", ArgKind::size()},
      {"k", ArgKind::size()},
      {"alpha", ArgKind::scalar()},
      {"A", ArgKind::matrix(DimExpr::cond("transA", 'N', "m", "k"),
                            DimExpr::cond("transA", 'N', "k", "m"))},
      {"ldA", ArgKind::leading_dim("A")},
      {"B", ArgKind::matrix(DimExpr::cond("transB", 'N', "k", "n"),
                            DimExpr::cond("transB", 'N', "n", "k"))},
      {"ldB", ArgKind::leading_dim("B")},
      {"beta", ArgKind::scalar()},
      {"C", ArgKind::matrix(DimExpr::of("m"), DimExpr::of("n"))},
      {"ldC", ArgKind::leading_dim("C")},
  };
  return {std::move(sig), k_dgemm, flops_dgemm};
}

RoutineEntry make_dtrsm() {
  RoutineSignature sig;
  sig.name = "dtrsm";
  sig.args = {
      {"side", ArgKind::discrete("LR")},
      {"uplo", ArgKind::discrete("LU")},
      {"transA", ArgKind::discrete("NT")},
      {"diag", ArgKind::discrete("NU")},
      {"m", ArgKind::size()},
      {"n", ArgKind::size()},
      {"alpha", ArgKind::scalar()},
      {"A", ArgKind::matrix(DimExpr::cond("side", 'L', "m", "n"),
                            DimExpr::cond("side", 'L', "m", "n"))},
      {"ldA", ArgKind::leading_dim("A")},
      {"B", ArgKind::matrix(DimExpr::of("m"), DimExpr::of("n"))},
      {"ldB", ArgKind::leading_dim("B")},
  };
  return {std::move(sig), k_dtrsm, flops_dtrsm};
}

RoutineEntry make_dtrmm() {
  RoutineEntry e = make_dtrsm();
  e.signature.name = "dtrmm";
  e.kernel = k_dtrmm;
  e.flops = flops_dtrmm;
  return e;
}

RoutineEntry make_dtrinv_unb() {
  RoutineSignature sig;
  sig.name = "dtrinv_unb";
  sig.args = {
      {"diag", ArgKind::discrete("NU")},
      {"n", ArgKind::size()},
      {"A", ArgKind::matrix(DimExpr::of("n"), DimExpr::of("n"))},
      {"ldA", ArgKind::leading_dim("A")},
  };
  return {std::move(sig), k_dtrinv, flops_dtrinv};
}

RoutineEntry make_dgetrf_unb() {
  RoutineSignature sig;
  sig.name = "dgetrf_unb";
  sig.args = {
      {"m", ArgKind::size()},
      {"n", ArgKind::size()},
      {"A", ArgKind::matrix(DimExpr::of("m"), DimExpr::of("n"))},
      {"ldA", ArgKind::leading_dim("A")},
  };
  return {std::move(sig), k_dgetrf, flops_dgetrf};
}

RoutineEntry make_dsylv_unb() {
  RoutineSignature sig;
  sig.name = "dsylv_unb";
  sig.args = {
      {"m", ArgKind::size()},
      {"n", ArgKind::size()},
      {"A", ArgKind::matrix(DimExpr::of("m"), DimExpr::of("m"))},
      {"ldA", ArgKind::leading_dim("A")},
      {"B", ArgKind::matrix(DimExpr::of("n"), DimExpr::of("n"))},
      {"ldB", ArgKind::leading_dim("B")},
      {"C", ArgKind::matrix(DimExpr::of("m"), DimExpr::of("n"))},
      {"ldC", ArgKind::leading_dim("C")},
  };
  return {std::move(sig), k_dsylv, flops_dsylv};
}

} // namespace pm::kernels::detail
