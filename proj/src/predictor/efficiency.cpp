#include "pm/predictor/efficiency.hpp"

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::predictor {

namespace {

std::int64_t size_of(const std::map<std::string, std::int64_t>& sizes,
                     const std::string& name) {
  auto it = sizes.find(name);
  if (it == sizes.end()) fail("size parameter '", name, "' not given");
  if (it->second < 0) fail("size parameter '", name, "' is negative");
  return it->second;
}

std::uint64_t unblocked_flops(const std::string& routine,
                              const std::vector<pm::kernels::ArgValue>& values) {
  pm::kernels::SamplingRequest req;
  req.routine = routine;
  req.values = values;
  return pm::kernels::flop_count(req);
}

}  // namespace

std::uint64_t useful_flops(const std::string& operation,
                           const std::map<std::string, std::int64_t>& sizes) {
  using pm::kernels::MatrixPlaceholder;
  if (operation == "trinv") {
    const std::int64_t n = size_of(sizes, "n");
    return static_cast<std::uint64_t>(n * (n + 1) * (n + 2) / 6);
  }
  if (operation == "lu") {
    const std::int64_t n = size_of(sizes, "n");
    return unblocked_flops("dgetrf_unb",
                           {n, n, MatrixPlaceholder{}, std::max<std::int64_t>(n, 1)});
  }
  if (operation == "sylv") {
    const std::int64_t m = size_of(sizes, "m");
    const std::int64_t n = size_of(sizes, "n");
    return unblocked_flops("dsylv_unb", {m, n, MatrixPlaceholder{}, std::max<std::int64_t>(m, 1),
                                         MatrixPlaceholder{}, std::max<std::int64_t>(n, 1),
                                         MatrixPlaceholder{}, std::max<std::int64_t>(m, 1)});
  }
  fail("unknown operation '", operation, "'");
}

double efficiency(const std::string& operation,
                  const std::map<std::string, std::int64_t>& sizes, double ticks,
                  double peak) {
  if (!(ticks > 0)) fail("cannot compute efficiency from non-positive ticks");
  if (!(peak > 0)) fail("peak rate must be positive");
  return static_cast<double>(useful_flops(operation, sizes)) / (peak * ticks);
}

}  // namespace pm::predictor
