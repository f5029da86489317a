#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pm/kernels/registry.hpp"

using namespace pm::kernels;
using testutil::Mat;
using testutil::req;

namespace {

/// Builds a random valid request for `name` with sizes in [0, max_size] and
/// scalars drawn from a branch-covering set.
SamplingRequest random_request(const RoutineSignature& sig, std::mt19937_64& rng,
                               std::int64_t max_size) {
  static const double scalar_pool[] = {1.0, -1.0, 0.0, 2.5, 0.7};
  std::uniform_int_distribution<std::int64_t> size_dist(0, max_size);
  std::uniform_int_distribution<int> scalar_dist(0, 4);
  std::uniform_int_distribution<std::int64_t> pad_dist(0, 3);

  SamplingRequest r;
  r.routine = sig.name;
  for (auto& [arg, kind] : sig.args) {
    switch (kind.tag) {
      case ArgKind::Tag::Discrete: {
        std::uniform_int_distribution<size_t> pick(0, kind.allowed.size() - 1);
        r.values.emplace_back(kind.allowed[pick(rng)]);
        break;
      }
      case ArgKind::Tag::Size: r.values.emplace_back(size_dist(rng)); break;
      case ArgKind::Tag::Scalar: r.values.emplace_back(scalar_pool[scalar_dist(rng)]); break;
      case ArgKind::Tag::MatrixData: r.values.emplace_back(MatrixPlaceholder{}); break;
      case ArgKind::Tag::LeadingDim: r.values.emplace_back(std::int64_t{0}); break;
      case ArgKind::Tag::Increment: r.values.emplace_back(std::int64_t{1}); break;
    }
  }
  // second pass: leading dimensions >= rows of their bound matrix
  for (size_t i = 0; i < sig.args.size(); ++i) {
    const ArgKind& kind = sig.args[i].second;
    if (kind.tag != ArgKind::Tag::LeadingDim) continue;
    const ArgKind& mk = sig.kind_of(kind.bound_matrix);
    std::int64_t rows = mk.rows.eval(r, sig);
    r.values[i] = std::max<std::int64_t>(1, rows) + pad_dist(rng);
  }
  return r;
}

/// Allocates scratch matrices for all MatrixData args and runs the kernel
/// with instrumentation.
FlopTally run_instrumented(const SamplingRequest& r, std::mt19937_64& rng) {
  const RoutineSignature& sig = lookup_signature(r.routine);
  std::vector<std::vector<double>> buffers;
  std::vector<double*> ptrs;
  std::uniform_real_distribution<double> d(0.1, 1.0);
  size_t mat_index = 0;
  for (size_t i = 0; i < sig.args.size(); ++i) {
    const ArgKind& kind = sig.args[i].second;
    if (kind.tag != ArgKind::Tag::MatrixData) continue;
    // the matching ld argument is the next LeadingDim bound to this arg
    std::int64_t ld = 0;
    for (size_t j = 0; j < sig.args.size(); ++j)
      if (sig.args[j].second.tag == ArgKind::Tag::LeadingDim &&
          sig.args[j].second.bound_matrix == sig.args[i].first)
        ld = r.int_at(j);
    std::int64_t cols = kind.cols.eval(r, sig);
    buffers.emplace_back(static_cast<size_t>(std::max<std::int64_t>(ld * cols, 1)));
    for (auto& v : buffers.back()) v = d(rng);
    ++mat_index;
  }
  (void)mat_index;
  for (auto& b : buffers) ptrs.push_back(b.data());
  return execute_kernel_instrumented(r, ptrs);
}

} // namespace

TEST_CASE("signature registry matches the BLAS/LAPACK argument orders") {
  const RoutineSignature& gemm = lookup_signature("dgemm");
  CHECK(gemm.args.size() == 13);
  CHECK(gemm.size_arg_names() == std::vector<std::string>{"m", "n", "k"});
  CHECK(gemm.discrete_arg_names() == std::vector<std::string>{"transA", "transB"});

  const RoutineSignature& trsm = lookup_signature("dtrsm");
  CHECK(trsm.discrete_arg_names() ==
        std::vector<std::string>{"side", "uplo", "transA", "diag"});
  CHECK(trsm.size_arg_names() == std::vector<std::string>{"m", "n"});

  CHECK(lookup_signature("dtrinv_unb").args.size() == 4);
  CHECK(lookup_signature("dgetrf_unb").args.size() == 4);
  CHECK(lookup_signature("dsylv_unb").args.size() == 8);

  CHECK_THROWS_WITH_AS(lookup_signature("dpotrf"), "unknown routine 'dpotrf'",
                       pm::error);
}

TEST_CASE("validate_request reports every violation") {
  // side outside the allowed set
  auto bad_side = req("dtrsm", {'X', 'L', 'N', 'N', std::int64_t{4}, std::int64_t{4},
                                1.0, MatrixPlaceholder{}, std::int64_t{4},
                                MatrixPlaceholder{}, std::int64_t{4}});
  auto v = validate_request(bad_side);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "side not in {L,R}");

  // leading dimension below the row count
  auto bad_ld = req("dgemm", {'N', 'N', std::int64_t{4}, std::int64_t{4}, std::int64_t{4},
                              1.0, MatrixPlaceholder{}, std::int64_t{2},
                              MatrixPlaceholder{}, std::int64_t{4}, 1.0,
                              MatrixPlaceholder{}, std::int64_t{4}});
  v = validate_request(bad_ld);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("ldA < rows(A)") == 0);

  // with transA=T the row count of A is k, so the same ldA can be fine
  auto ld_ok = req("dgemm", {'T', 'N', std::int64_t{4}, std::int64_t{4}, std::int64_t{2},
                             1.0, MatrixPlaceholder{}, std::int64_t{2},
                             MatrixPlaceholder{}, std::int64_t{2}, 1.0,
                             MatrixPlaceholder{}, std::int64_t{4}});
  CHECK(validate_request(ld_ok).empty());

  // several problems at once: all reported
  auto multi = req("dtrsm", {'X', 'L', 'N', 'N', std::int64_t{-1}, std::int64_t{4}, 1.0,
                             MatrixPlaceholder{}, std::int64_t{4}, MatrixPlaceholder{},
                             std::int64_t{0}});
  v = validate_request(multi);
  CHECK(v.size() == 3);  // side, m negative, ldB bound

  CHECK(validate_request(req("dpotrf", {})).size() == 1);

  auto wrong_arity = req("dgemm", {'N', 'N', std::int64_t{8}});
  v = validate_request(wrong_arity);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("argument count mismatch") == 0);
}

TEST_CASE("flop_count matches the instrumented kernels on random requests") {
  std::mt19937_64 rng(12345);
  const Registry& reg = Registry::builtin();
  for (const auto& name : reg.names()) {
    const RoutineSignature& sig = reg.at(name).signature;
    for (int trial = 0; trial < 60; ++trial) {
      SamplingRequest r = random_request(sig, rng, 12);
      REQUIRE(validate_request(r).empty());
      FlopTally t = run_instrumented(r, rng);
      CAPTURE(name);
      CAPTURE(trial);
      CHECK(t.total() == flop_count(r));
    }
  }
}

TEST_CASE("flop_count known values") {
  auto gemm = [](std::int64_t m, std::int64_t n, std::int64_t k, double alpha,
                 double beta) {
    return req("dgemm", {'N', 'N', m, n, k, alpha, MatrixPlaceholder{}, m,
                         MatrixPlaceholder{}, k, beta, MatrixPlaceholder{}, m});
  };
  CHECK(flop_count(gemm(1, 1, 1, 1.0, 0.0)) == 2);
  CHECK(flop_count(gemm(4, 4, 4, 1.0, 0.0)) == 128);
  CHECK(flop_count(gemm(4, 4, 4, 1.0, 1.0)) == 128);
  CHECK(flop_count(gemm(4, 4, 4, 1.0, 2.5)) == 128 + 16);
  CHECK(flop_count(gemm(4, 4, 4, 2.5, 0.0)) == 192);
  CHECK(flop_count(gemm(4, 4, 0, 1.0, 1.0)) == 0);
  CHECK(flop_count(gemm(0, 0, 0, 1.0, 1.0)) == 0);

  auto trsm = [](char side, char diag, std::int64_t m, std::int64_t n, double alpha) {
    std::int64_t t = side == 'L' ? m : n;
    return req("dtrsm", {side, 'L', 'N', diag, m, n, alpha, MatrixPlaceholder{}, t,
                         MatrixPlaceholder{}, m});
  };
  CHECK(flop_count(trsm('L', 'N', 4, 2, 1.0)) == 32);   // n * m^2
  CHECK(flop_count(trsm('R', 'N', 4, 2, 1.0)) == 16);   // m * n^2
  CHECK(flop_count(trsm('L', 'U', 4, 2, 1.0)) == 24);   // n * m(m-1)
  CHECK(flop_count(trsm('L', 'N', 4, 2, 0.0)) == 0);

  auto trinv = [](char diag, std::int64_t n) {
    return req("dtrinv_unb", {diag, n, MatrixPlaceholder{}, n});
  };
  CHECK(flop_count(trinv('N', 1)) == 1);
  CHECK(flop_count(trinv('N', 2)) == 4);
  CHECK(flop_count(trinv('N', 3)) == 11);
  CHECK(flop_count(trinv('N', 4)) == 24);
  CHECK(flop_count(trinv('U', 4)) == 8);
  CHECK(flop_count(trinv('N', 0)) == 0);

  auto sylv = [](std::int64_t m, std::int64_t n) {
    return req("dsylv_unb", {m, n, MatrixPlaceholder{}, m, MatrixPlaceholder{}, n,
                             MatrixPlaceholder{}, m});
  };
  CHECK(flop_count(sylv(3, 5)) == 120);
  CHECK(flop_count(sylv(0, 5)) == 0);
}

TEST_CASE("flop_count is polynomial of degree <= 3 on fixed branches") {
  // Tensor-product Lagrange interpolation through a 4-point-per-axis grid
  // reproduces any polynomial with per-axis degree <= 3; checking the
  // interpolant against flop_count at off-grid points certifies the
  // polynomial shape for the fixed discrete/scalar combination.
  auto lagrange = [](const std::vector<std::vector<std::int64_t>>& axes,
                     const std::vector<double>& values,
                     const std::vector<std::int64_t>& x) {
    size_t dim = axes.size();
    std::vector<size_t> idx(dim, 0);
    double total = 0.0;
    size_t count = values.size();
    for (size_t flat = 0; flat < count; ++flat) {
      size_t rem = flat;
      double w = 1.0;
      for (size_t d = 0; d < dim; ++d) {
        size_t id = rem % axes[d].size();
        rem /= axes[d].size();
        idx[d] = id;
        for (size_t o = 0; o < axes[d].size(); ++o) {
          if (o == id) continue;
          w *= static_cast<double>(x[d] - axes[d][o]) /
               static_cast<double>(axes[d][id] - axes[d][o]);
        }
      }
      total += w * values[flat];
    }
    return total;
  };

  struct Case {
    const char* name;
    std::vector<std::vector<std::int64_t>> axes;   // grid per size arg
    std::vector<std::int64_t> probe;               // off-grid point
    std::function<SamplingRequest(const std::vector<std::int64_t>&)> make;
  };
  std::vector<Case> cases;
  cases.push_back({"dgemm a1b1",
                   {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}},
                   {6, 5, 7},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dgemm", {'N', 'N', s[0], s[1], s[2], 1.0,
                                          MatrixPlaceholder{}, s[0], MatrixPlaceholder{},
                                          s[2], 1.0, MatrixPlaceholder{}, s[0]});
                   }});
  cases.push_back({"dgemm scaled",
                   {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}},
                   {5, 6, 8},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dgemm", {'T', 'N', s[0], s[1], s[2], 2.5,
                                          MatrixPlaceholder{}, s[2], MatrixPlaceholder{},
                                          s[2], 2.5, MatrixPlaceholder{}, s[0]});
                   }});
  cases.push_back({"dtrsm L",
                   {{1, 2, 3, 4}, {1, 2, 3, 4}},
                   {7, 6},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dtrsm", {'L', 'L', 'N', 'N', s[0], s[1], 1.0,
                                          MatrixPlaceholder{}, s[0], MatrixPlaceholder{},
                                          s[0]});
                   }});
  cases.push_back({"dtrmm R unit",
                   {{1, 2, 3, 4}, {1, 2, 3, 4}},
                   {6, 9},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dtrmm", {'R', 'U', 'T', 'U', s[0], s[1], -1.0,
                                          MatrixPlaceholder{}, s[1], MatrixPlaceholder{},
                                          s[0]});
                   }});
  cases.push_back({"dtrinv_unb",
                   {{1, 2, 3, 4}},
                   {9},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dtrinv_unb", {'N', s[0], MatrixPlaceholder{}, s[0]});
                   }});
  // dgetrf is polynomial only on a fixed min(m,n) branch; grid stays m >= n
  cases.push_back({"dgetrf m>=n",
                   {{4, 5, 6, 7}, {1, 2, 3, 4}},
                   {9, 3},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dgetrf_unb", {s[0], s[1], MatrixPlaceholder{}, s[0]});
                   }});
  cases.push_back({"dsylv_unb",
                   {{1, 2, 3, 4}, {1, 2, 3, 4}},
                   {6, 7},
                   [](const std::vector<std::int64_t>& s) {
                     return req("dsylv_unb", {s[0], s[1], MatrixPlaceholder{}, s[0],
                                              MatrixPlaceholder{}, s[1],
                                              MatrixPlaceholder{}, s[0]});
                   }});

  for (auto& c : cases) {
    CAPTURE(c.name);
    size_t total = 1;
    for (auto& ax : c.axes) total *= ax.size();
    std::vector<double> values(total);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rem = flat;
      std::vector<std::int64_t> pt(c.axes.size());
      for (size_t d = 0; d < c.axes.size(); ++d) {
        pt[d] = c.axes[d][rem % c.axes[d].size()];
        rem /= c.axes[d].size();
      }
      values[flat] = static_cast<double>(flop_count(c.make(pt)));
    }
    double predicted = lagrange(c.axes, values, c.probe);
    double actual = static_cast<double>(flop_count(c.make(c.probe)));
    CHECK(std::abs(predicted - actual) < 1e-6 * std::max(1.0, actual));
  }
}

TEST_CASE("execute_kernel is deterministic") {
  std::mt19937_64 rng(7);
  auto r = req("dgemm", {'N', 'T', std::int64_t{6}, std::int64_t{5}, std::int64_t{4},
                         0.7, MatrixPlaceholder{}, std::int64_t{6}, MatrixPlaceholder{},
                         std::int64_t{5}, 2.5, MatrixPlaceholder{}, std::int64_t{6}});
  Mat A(6, 4), B(5, 4), C1(6, 5);
  testutil::fill_random(A, rng);
  testutil::fill_random(B, rng);
  testutil::fill_random(C1, rng);
  Mat C2 = C1;
  execute_kernel(r, {A.ptr(), B.ptr(), C1.ptr()});
  execute_kernel(r, {A.ptr(), B.ptr(), C2.ptr()});
  CHECK(C1.data == C2.data);
}

TEST_CASE("dgemm trivial semantics") {
  std::mt19937_64 rng(8);
  Mat A(4, 1), B(1, 4), C(4, 4);
  testutil::fill_random(C, rng);
  Mat C0 = C;
  // k=0, beta=1: C unchanged
  auto r = req("dgemm", {'N', 'N', std::int64_t{4}, std::int64_t{4}, std::int64_t{0},
                         1.0, MatrixPlaceholder{}, std::int64_t{4}, MatrixPlaceholder{},
                         std::int64_t{1}, 1.0, MatrixPlaceholder{}, std::int64_t{4}});
  execute_kernel(r, {A.ptr(), B.ptr(), C.ptr()});
  CHECK(testutil::max_abs_diff(C, C0) == 0.0);
}

TEST_CASE("dtrmm unit-diagonal identity case") {
  std::mt19937_64 rng(9);
  Mat A(4, 4);  // strictly zero below diagonal, unit diagonal implied
  Mat B(4, 3);
  testutil::fill_random(B, rng);
  Mat B0 = B;
  auto r = req("dtrmm", {'L', 'L', 'N', 'U', std::int64_t{4}, std::int64_t{3}, 1.0,
                         MatrixPlaceholder{}, std::int64_t{4}, MatrixPlaceholder{},
                         std::int64_t{4}});
  execute_kernel(r, {A.ptr(), B.ptr()});
  CHECK(testutil::max_abs_diff(B, B0) == 0.0);
}

TEST_CASE("dtrsm solves against a multiply-back oracle") {
  std::mt19937_64 rng(10);
  for (char side : {'L', 'R'})
    for (char uplo : {'L', 'U'})
      for (char ta : {'N', 'T'})
        for (char diag : {'N', 'U'}) {
          CAPTURE(side);
          CAPTURE(uplo);
          CAPTURE(ta);
          CAPTURE(diag);
          const std::int64_t m = 7, n = 5;
          const std::int64_t t = side == 'L' ? m : n;
          Mat A = uplo == 'L' ? testutil::lower_triangular(t, rng)
                              : testutil::upper_triangular(t, rng);
          Mat B(m, n);
          testutil::fill_random(B, rng);
          Mat B0 = B;
          auto r = req("dtrsm", {side, uplo, ta, diag, m, n, 1.0, MatrixPlaceholder{},
                                 t, MatrixPlaceholder{}, m});
          execute_kernel(r, {A.ptr(), B.ptr()});
          // multiply back: op(A)*X (side=L) or X*op(A) (side=R) must equal B0
          Mat opA(t, t);
          for (std::int64_t i = 0; i < t; ++i)
            for (std::int64_t j = 0; j < t; ++j) {
              double v = ta == 'N' ? A.at(i, j) : A.at(j, i);
              bool in_lower = (uplo == 'L') == (ta == 'N') ? i >= j : i <= j;
              if (i == j) v = diag == 'U' ? 1.0 : v;
              opA.at(i, j) = in_lower ? v : 0.0;
            }
          Mat back = side == 'L' ? testutil::matmul(opA, B) : testutil::matmul(B, opA);
          CHECK(testutil::max_abs_diff(back, B0) < 1e-10);
        }
}

TEST_CASE("dtrinv_unb inverts lower-triangular matrices") {
  std::mt19937_64 rng(11);
  const std::int64_t n = 24;
  Mat L = testutil::lower_triangular(n, rng);
  Mat Lorig = L;
  auto r = req("dtrinv_unb", {'N', n, MatrixPlaceholder{}, n});
  execute_kernel(r, {L.ptr()});
  Mat P = testutil::matmul(L, Lorig);
  CHECK(testutil::max_abs_diff_identity(P) < 1e-10);

  // unit-diagonal variant ignores and preserves the stored diagonal
  Mat Lu = testutil::lower_triangular(n, rng);
  Mat LuOrig = Lu;
  auto ru = req("dtrinv_unb", {'U', n, MatrixPlaceholder{}, n});
  execute_kernel(ru, {Lu.ptr()});
  Mat unitL(n, n), unitInv(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) {
      unitL.at(i, j) = i == j ? 1.0 : (i > j ? LuOrig.at(i, j) : 0.0);
      unitInv.at(i, j) = i == j ? 1.0 : (i > j ? Lu.at(i, j) : 0.0);
    }
  CHECK(testutil::max_abs_diff_identity(testutil::matmul(unitInv, unitL)) < 1e-10);
}

TEST_CASE("dgetrf_unb reproduces A = L*U on diagonally dominant input") {
  std::mt19937_64 rng(12);
  const std::int64_t n = 3;
  Mat A = testutil::diagonally_dominant(n, rng);
  Mat A0 = A;
  auto r = req("dgetrf_unb", {n, n, MatrixPlaceholder{}, n});
  execute_kernel(r, {A.ptr()});
  Mat L(n, n), U(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) {
      L.at(i, j) = i == j ? 1.0 : (i > j ? A.at(i, j) : 0.0);
      U.at(i, j) = i <= j ? A.at(i, j) : 0.0;
    }
  CHECK(testutil::max_abs_diff(testutil::matmul(L, U), A0) < 1e-12);
}

TEST_CASE("dsylv_unb solves A*X + X*B = C") {
  std::mt19937_64 rng(13);
  const std::int64_t m = 9, n = 6;
  Mat A = testutil::lower_triangular(m, rng);
  Mat B = testutil::upper_triangular(n, rng);
  Mat X(m, n);
  testutil::fill_random(X, rng);
  // C = A*X + X*B via the naive oracle
  Mat C = testutil::matmul(A, X);
  Mat XB = testutil::matmul(X, B);
  for (size_t i = 0; i < C.data.size(); ++i) C.data[i] += XB.data[i];
  auto r = req("dsylv_unb",
               {m, n, MatrixPlaceholder{}, m, MatrixPlaceholder{}, n,
                MatrixPlaceholder{}, m});
  execute_kernel(r, {A.ptr(), B.ptr(), C.ptr()});
  CHECK(testutil::max_abs_diff(C, X) < 1e-10);
}
