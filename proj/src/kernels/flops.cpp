// Analytic flop oracle: exact closed forms for the operation counts of the
// reference kernels in kernels.cpp. Each formula is a polynomial in the size
// arguments once the discrete codes and the scalar branches (alpha in
// {0,+1,-1}, beta in {0,1}) are fixed.

#include <cstdint>

#include "pm/kernels/registry.hpp"

namespace pm::kernels::detail {

namespace {
bool is_sign(double a) { return a == 1.0 || a == -1.0; }

std::uint64_t u(std::int64_t v) { return static_cast<std::uint64_t>(v); }
} // namespace

std::uint64_t flops_dgemm(const SamplingRequest& req, const RoutineSignature& sig) {
  const std::uint64_t m = u(req.size_arg(sig, "m"));
  const std::uint64_t n = u(req.size_arg(sig, "n"));
  const std::uint64_t k = u(req.size_arg(sig, "k"));
  const double alpha = req.scalar_arg(sig, "alpha");
  const double beta = req.scalar_arg(sig, "beta");
  std::uint64_t fl = (beta != 0.0 && beta != 1.0) ? m * n : 0;
  if (alpha == 0.0) return fl;
  return fl + (is_sign(alpha) ? 2 : 3) * m * n * k;
}

// trsm and trmm share their cost structure: the triangular dimension T is m
// for side=L and n for side=R, and each of the `other` rows/columns costs
// T*(T-1) multiply/adds plus T divisions (trsm) or T diagonal multiplies
// (trmm) when diag=N.
std::uint64_t flops_dtrsm(const SamplingRequest& req, const RoutineSignature& sig) {
  const char side = req.discrete_arg(sig, "side");
  const char diag = req.discrete_arg(sig, "diag");
  const std::uint64_t m = u(req.size_arg(sig, "m"));
  const std::uint64_t n = u(req.size_arg(sig, "n"));
  const double alpha = req.scalar_arg(sig, "alpha");
  if (alpha == 0.0) return 0;
  const std::uint64_t T = side == 'L' ? m : n;
  const std::uint64_t other = side == 'L' ? n : m;
  std::uint64_t per_line = T == 0 ? 0 : T * (T - 1);
  if (diag == 'N') per_line += T;
  std::uint64_t fl = other * per_line;
  if (!is_sign(alpha)) fl += m * n;
  return fl;
}

std::uint64_t flops_dtrmm(const SamplingRequest& req, const RoutineSignature& sig) {
  const char side = req.discrete_arg(sig, "side");
  const char diag = req.discrete_arg(sig, "diag");
  const std::uint64_t m = u(req.size_arg(sig, "m"));
  const std::uint64_t n = u(req.size_arg(sig, "n"));
  const double alpha = req.scalar_arg(sig, "alpha");
  if (alpha == 0.0) return 0;
  const std::uint64_t T = side == 'L' ? m : n;
  const std::uint64_t other = side == 'L' ? n : m;
  const std::uint64_t per_line = diag == 'N' ? T * T : (T == 0 ? 0 : T * (T - 1));
  std::uint64_t fl = other * per_line;
  if (!is_sign(alpha)) fl += m * n;
  return fl;
}

std::uint64_t flops_dtrinv(const SamplingRequest& req, const RoutineSignature& sig) {
  const char diag = req.discrete_arg(sig, "diag");
  const std::uint64_t n = u(req.size_arg(sig, "n"));
  if (diag == 'N') return (n * n * n + 2 * n) / 3;
  if (n < 2) return 0;
  return n * (n - 1) * (n - 2) / 3;
}

std::uint64_t flops_dgetrf(const SamplingRequest& req, const RoutineSignature& sig) {
  const std::int64_t m = req.size_arg(sig, "m");
  const std::int64_t n = req.size_arg(sig, "n");
  const std::int64_t mn = m < n ? m : n;
  std::uint64_t fl = 0;
  for (std::int64_t t = 0; t < mn; ++t)
    fl += u(m - t - 1) + 2 * u(m - t - 1) * u(n - t - 1);
  return fl;
}

std::uint64_t flops_dsylv(const SamplingRequest& req, const RoutineSignature& sig) {
  const std::uint64_t m = u(req.size_arg(sig, "m"));
  const std::uint64_t n = u(req.size_arg(sig, "n"));
  return m * n * (m + n);
}

} // namespace pm::kernels::detail
