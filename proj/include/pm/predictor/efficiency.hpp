#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace pm::predictor {

/// Flops any algorithm for the operation must perform at minimum — the
/// yardstick predicted times are measured against:
///  - trinv: n(n+1)(n+2)/6,
///  - lu: the unblocked factorization count for a square matrix,
///  - sylv: the unblocked substitution count m n (m + n).
std::uint64_t useful_flops(const std::string& operation,
                           const std::map<std::string, std::int64_t>& sizes);

/// useful_flops / (peak * ticks): fraction of the peak rate (in flops per
/// tick) spent on useful work. Fails on non-positive ticks or peak.
double efficiency(const std::string& operation,
                  const std::map<std::string, std::int64_t>& sizes, double ticks,
                  double peak);

}  // namespace pm::predictor
