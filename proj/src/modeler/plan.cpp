#include "pm/modeler/plan.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pm/common.hpp"

namespace pm::modeler {

std::int64_t monomial_count(int dim, int degree) {
  // C(dim + degree, degree)
  std::int64_t count = 1;
  for (int i = 1; i <= degree; ++i) count = count * (dim + i) / i;
  return count;
}

double halton(std::int64_t index, int base) {
  double result = 0.0;
  double f = 1.0;
  std::int64_t i = index;
  while (i > 0) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(i % base);
    i /= base;
  }
  return result;
}

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr std::size_t kPrimeCount = sizeof(kPrimes) / sizeof(kPrimes[0]);

std::vector<std::int64_t> halton_point(const pm::model::Box& box, std::int64_t index) {
  std::vector<std::int64_t> pt(box.dim());
  for (std::size_t d = 0; d < box.dim(); ++d) {
    const auto& iv = box.iv[d];
    const double u = halton(index, kPrimes[d % kPrimeCount]);
    std::int64_t v = iv.lo + static_cast<std::int64_t>(u * static_cast<double>(iv.hi - iv.lo));
    pt[d] = std::clamp<std::int64_t>(v, iv.lo, iv.hi - 1);
  }
  return pt;
}

// Enumerate the full integer lattice of a (small) box in odometer order.
void lattice_walk(const pm::model::Box& box,
                  const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> pt(box.dim());
  for (std::size_t d = 0; d < box.dim(); ++d) pt[d] = box.iv[d].lo;
  while (true) {
    if (!visit(pt)) return;
    std::size_t d = 0;
    while (d < box.dim()) {
      if (++pt[d] < box.iv[d].hi) break;
      pt[d] = box.iv[d].lo;
      ++d;
    }
    if (d == box.dim()) return;
  }
}

}  // namespace

SamplePlan plan_samples(const pm::model::Box& bounds, int degree) {
  const std::size_t dim = bounds.dim();
  if (dim == 0) fail("cannot plan samples for a zero-dimensional box");
  for (const auto& iv : bounds.iv)
    if (iv.hi <= iv.lo) fail("cannot plan samples for an empty box");

  const std::size_t fit_target =
      static_cast<std::size_t>(2 * monomial_count(static_cast<int>(dim), degree));
  const std::size_t check_target = dim + 2;

  std::set<std::vector<std::int64_t>> fit_set;

  // Corners: every combination of {lo, hi-1} (duplicates collapse for width-1 dims).
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    std::vector<std::int64_t> pt(dim);
    for (std::size_t d = 0; d < dim; ++d)
      pt[d] = (mask >> d) & 1 ? bounds.iv[d].hi - 1 : bounds.iv[d].lo;
    fit_set.insert(pt);
  }

  // Center of the box.
  std::vector<std::int64_t> center(dim);
  for (std::size_t d = 0; d < dim; ++d) center[d] = (bounds.iv[d].lo + bounds.iv[d].hi - 1) / 2;
  fit_set.insert(center);

  // Edge midpoints: one coordinate at the center, the rest at corner values.
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << (dim - 1)); ++mask) {
      std::vector<std::int64_t> pt(dim);
      std::size_t bit = 0;
      for (std::size_t e = 0; e < dim; ++e) {
        if (e == d) {
          pt[e] = center[e];
        } else {
          pt[e] = (mask >> bit) & 1 ? bounds.iv[e].hi - 1 : bounds.iv[e].lo;
          ++bit;
        }
      }
      fit_set.insert(pt);
    }
  }

  // If the lattice is small, exhaust it: every point goes into the fit set and
  // the check points are drawn from the same pool (disjoint quasi-random points
  // do not exist).
  double volume = 1.0;
  for (const auto& iv : bounds.iv) volume *= static_cast<double>(iv.hi - iv.lo);
  if (volume <= static_cast<double>(fit_target + check_target)) {
    SamplePlan plan;
    lattice_walk(bounds, [&](const std::vector<std::int64_t>& pt) {
      plan.fit.push_back(pt);
      return true;
    });
    std::size_t take = std::min<std::size_t>(check_target, plan.fit.size());
    plan.check.assign(plan.fit.begin(), plan.fit.begin() + static_cast<std::ptrdiff_t>(take));
    return plan;
  }

  // Quasi-random fill until the fit set is large enough. The Halton sequence is
  // deterministic, so plans are reproducible.
  std::int64_t index = 1;
  std::size_t stall = 0;
  while (fit_set.size() < fit_target && stall < 10000) {
    if (fit_set.insert(halton_point(bounds, index)).second)
      stall = 0;
    else
      ++stall;
    ++index;
  }
  if (fit_set.size() < fit_target) {
    // Dense lattice fallback for boxes whose lattice is barely larger than the target.
    lattice_walk(bounds, [&](const std::vector<std::int64_t>& pt) {
      fit_set.insert(pt);
      return fit_set.size() < fit_target;
    });
  }

  SamplePlan plan;
  plan.fit.assign(fit_set.begin(), fit_set.end());

  // Check points: further quasi-random points disjoint from the fit set.
  std::set<std::vector<std::int64_t>> check_set;
  stall = 0;
  while (check_set.size() < check_target && stall < 10000) {
    auto pt = halton_point(bounds, index);
    if (!fit_set.count(pt) && check_set.insert(pt).second)
      stall = 0;
    else
      ++stall;
    ++index;
  }
  if (check_set.size() < check_target) {
    lattice_walk(bounds, [&](const std::vector<std::int64_t>& pt) {
      if (!fit_set.count(pt)) check_set.insert(pt);
      return check_set.size() < check_target;
    });
  }
  plan.check.assign(check_set.begin(), check_set.end());
  if (plan.check.empty()) {
    // Degenerate lattice: reuse fit points so the check pass still measures something.
    std::size_t take = std::min<std::size_t>(check_target, plan.fit.size());
    plan.check.assign(plan.fit.begin(), plan.fit.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return plan;
}

}  // namespace pm::modeler
