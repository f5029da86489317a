#pragma once

// Shared helpers for the test suites: request builders, column-major matrix
// scratch buffers, and naive linear-algebra oracles used to cross-check the
// reference kernels.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pm/kernels/registry.hpp"

namespace testutil {

using pm::kernels::ArgValue;
using pm::kernels::MatrixPlaceholder;
using pm::kernels::SamplingRequest;

inline SamplingRequest req(std::string routine, std::vector<ArgValue> values) {
  SamplingRequest r;
  r.routine = std::move(routine);
  r.values = std::move(values);
  return r;
}

/// Column-major matrix buffer with explicit leading dimension.
struct Mat {
  std::int64_t rows = 0, cols = 0, ld = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::int64_t r, std::int64_t c, std::int64_t l = -1)
      : rows(r), cols(c), ld(l < 0 ? r : l), data(static_cast<size_t>(ld * c), 0.0) {}

  double& at(std::int64_t i, std::int64_t j) { return data[static_cast<size_t>(i + j * ld)]; }
  double at(std::int64_t i, std::int64_t j) const {
    return data[static_cast<size_t>(i + j * ld)];
  }
  double* ptr() { return data.data(); }
};

inline void fill_random(Mat& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (auto& v : m.data) v = d(rng);
}

/// Well-conditioned lower-triangular matrix: unit-scale diagonal, small
/// off-diagonal entries.
inline Mat lower_triangular(std::int64_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat L(n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = j + 1; i < n; ++i) L.at(i, j) = d(rng) / static_cast<double>(n);
    L.at(j, j) = 1.0 + 0.5 * std::abs(d(rng));
  }
  return L;
}

inline Mat upper_triangular(std::int64_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat U(n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = 0; i < j; ++i) U.at(i, j) = d(rng) / static_cast<double>(n);
    U.at(j, j) = 1.0 + 0.5 * std::abs(d(rng));
  }
  return U;
}

inline Mat diagonally_dominant(std::int64_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat A(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) A.at(i, j) = d(rng);
  for (std::int64_t i = 0; i < n; ++i) A.at(i, i) = static_cast<double>(n) + 1.0;
  return A;
}

/// Naive C := A*B (independent oracle; no reuse of the reference kernels).
inline Mat matmul(const Mat& A, const Mat& B) {
  Mat C(A.rows, B.cols);
  for (std::int64_t j = 0; j < B.cols; ++j)
    for (std::int64_t i = 0; i < A.rows; ++i) {
      double s = 0.0;
      for (std::int64_t l = 0; l < A.cols; ++l) s += A.at(i, l) * B.at(l, j);
      C.at(i, j) = s;
    }
  return C;
}

inline double max_abs_diff(const Mat& A, const Mat& B) {
  double m = 0.0;
  for (std::int64_t j = 0; j < A.cols; ++j)
    for (std::int64_t i = 0; i < A.rows; ++i)
      m = std::max(m, std::abs(A.at(i, j) - B.at(i, j)));
  return m;
}

inline double max_abs_diff_identity(const Mat& A) {
  double m = 0.0;
  for (std::int64_t j = 0; j < A.cols; ++j)
    for (std::int64_t i = 0; i < A.rows; ++i)
      m = std::max(m, std::abs(A.at(i, j) - (i == j ? 1.0 : 0.0)));
  return m;
}

} // namespace testutil
