#include "pm/model/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "pm/common.hpp"

namespace pm::model {

bool Box::contains(const std::vector<std::int64_t>& x) const {
  if (x.size() != iv.size()) return false;
  for (std::size_t d = 0; d < iv.size(); ++d)
    if (x[d] < iv[d].lo || x[d] >= iv[d].hi) return false;
  return true;
}

bool Box::contains_box(const Box& inner) const {
  if (inner.iv.size() != iv.size()) return false;
  for (std::size_t d = 0; d < iv.size(); ++d)
    if (inner.iv[d].lo < iv[d].lo || inner.iv[d].hi > iv[d].hi) return false;
  return true;
}

bool Box::intersects(const Box& other) const {
  for (std::size_t d = 0; d < iv.size(); ++d)
    if (iv[d].hi <= other.iv[d].lo || other.iv[d].hi <= iv[d].lo) return false;
  return true;
}

std::int64_t Box::volume() const {
  std::int64_t v = 1;
  for (const Interval& i : iv) {
    if (i.width() <= 0) return 0;
    v *= i.width();
  }
  return v;
}

std::int64_t Box::chebyshev_distance(const std::vector<std::int64_t>& x) const {
  std::int64_t dist = 0;
  for (std::size_t d = 0; d < iv.size(); ++d) {
    std::int64_t below = iv[d].lo - x[d];        // positive when x left of box
    std::int64_t above = x[d] - (iv[d].hi - 1);  // positive when x right of box
    dist = std::max({dist, below, above});
  }
  return dist;
}

const Polynomial& Region::poly(const std::string& counter,
                               const std::string& statistic) const {
  auto it = polys.find({counter, statistic});
  if (it == polys.end())
    fail("region has no polynomial for counter '", counter, "', statistic '",
         statistic, "'");
  return it->second;
}

const PiecewiseModel* RoutineModel::find_combo(const std::vector<char>& combo) const {
  for (const auto& [key, pw] : combos)
    if (key == combo) return &pw;
  return nullptr;
}

int RoutineModel::warned_regions() const {
  int n = 0;
  for (const auto& [key, pw] : combos)
    for (const Region& r : pw.regions)
      if (r.warned) ++n;
  return n;
}

EvalResult evaluate(const RoutineModel& model, const std::vector<char>& combo,
                    const std::vector<std::int64_t>& point, const std::string& counter,
                    const std::string& statistic) {
  const PiecewiseModel* pw = model.find_combo(combo);
  if (!pw) {
    std::string codes(combo.begin(), combo.end());
    fail("model for ", model.routine, " has no combination '", codes, "'");
  }
  if (point.size() != pw->domain.dim())
    fail("point of dimension ", point.size(), " against ", pw->domain.dim(),
         "-dimensional model for ", model.routine);
  if (pw->regions.empty()) fail("model for ", model.routine, " has no regions");

  // the containing region has distance 0 and is unique for a valid cover;
  // outside the domain the nearest region extrapolates
  std::size_t best = 0;
  std::int64_t best_dist = pw->regions[0].bounds.chebyshev_distance(point);
  for (std::size_t i = 1; i < pw->regions.size() && best_dist > 0; ++i) {
    std::int64_t d = pw->regions[i].bounds.chebyshev_distance(point);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  EvalResult result;
  result.value = pw->regions[best].poly(counter, statistic).evaluate(point);
  result.in_domain = pw->domain.contains(point);
  return result;
}

namespace {

std::string point_text(const std::vector<std::int64_t>& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
  out << ')';
  return out.str();
}

}  // namespace

std::vector<std::string> validate_cover(const PiecewiseModel& pw,
                                        std::int64_t exhaustive_limit) {
  std::vector<std::string> violations;
  const std::size_t dim = pw.domain.dim();

  for (std::size_t i = 0; i < pw.regions.size(); ++i) {
    const Box& b = pw.regions[i].bounds;
    if (b.dim() != dim || b.volume() == 0) {
      violations.push_back("region " + std::to_string(i) + " is empty or malformed");
      return violations;
    }
    if (!pw.domain.contains_box(b))
      violations.push_back("region " + std::to_string(i) + " extends outside the domain");
  }
  for (std::size_t i = 0; i < pw.regions.size(); ++i)
    for (std::size_t j = i + 1; j < pw.regions.size(); ++j)
      if (pw.regions[i].bounds.intersects(pw.regions[j].bounds))
        violations.push_back("regions " + std::to_string(i) + " and " +
                             std::to_string(j) + " overlap");

  auto covered = [&](const std::vector<std::int64_t>& x) {
    for (const Region& r : pw.regions)
      if (r.bounds.contains(x)) return true;
    return false;
  };

  const std::int64_t volume = pw.domain.volume();
  constexpr std::size_t kMaxReported = 100;
  if (volume <= exhaustive_limit) {
    std::vector<std::int64_t> x(dim);
    for (std::size_t d = 0; d < dim; ++d) x[d] = pw.domain.iv[d].lo;
    bool done = volume == 0;
    while (!done) {
      if (!covered(x)) {
        if (violations.size() < kMaxReported)
          violations.push_back("uncovered point " + point_text(x));
        else
          return violations;
      }
      std::size_t d = 0;
      while (d < dim) {
        if (++x[d] < pw.domain.iv[d].hi) break;
        x[d] = pw.domain.iv[d].lo;
        ++d;
      }
      done = d == dim;
    }
  } else {
    std::mt19937_64 rng(0xC0FFEE);
    std::vector<std::int64_t> x(dim);
    for (int trial = 0; trial < 10000; ++trial) {
      for (std::size_t d = 0; d < dim; ++d) {
        std::uniform_int_distribution<std::int64_t> pick(pw.domain.iv[d].lo,
                                                         pw.domain.iv[d].hi - 1);
        x[d] = pick(rng);
      }
      if (!covered(x)) {
        violations.push_back("uncovered point " + point_text(x));
        if (violations.size() >= kMaxReported) return violations;
      }
    }
  }
  return violations;
}

}  // namespace pm::model
