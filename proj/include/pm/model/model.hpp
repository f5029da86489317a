#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pm/model/polynomial.hpp"

namespace pm::model {

/// Half-open integer interval [lo, hi).
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Axis-aligned box of half-open intervals.
struct Box {
  std::vector<Interval> iv;

  std::size_t dim() const { return iv.size(); }
  bool contains(const std::vector<std::int64_t>& x) const;
  bool contains_box(const Box& inner) const;
  bool intersects(const Box& other) const;
  /// Number of integer lattice points covered.
  std::int64_t volume() const;
  /// Chebyshev distance from x to the nearest lattice point of the box
  /// (0 when x is inside).
  std::int64_t chebyshev_distance(const std::vector<std::int64_t>& x) const;
  bool operator==(const Box&) const = default;
};

/// One model region: a box carrying one polynomial per (counter, statistic).
struct Region {
  Box bounds;
  std::map<std::pair<std::string, std::string>, Polynomial> polys;
  bool warned = false;  // fit error above bound at minimum size

  const Polynomial& poly(const std::string& counter, const std::string& statistic) const;
};

/// Piecewise-polynomial model of one discrete-argument combination: a
/// disjoint cover of the domain box by regions.
struct PiecewiseModel {
  Box domain;
  std::vector<Region> regions;
  std::vector<std::string> statistics;
  std::vector<std::string> counters;
};

/// Full per-routine model: one PiecewiseModel per modeled discrete
/// combination, plus the record of every argument that was held fixed.
struct RoutineModel {
  std::string routine;
  std::vector<std::string> size_args;  // model dimensions, in signature order
  int degree = 3;
  std::vector<std::pair<std::vector<char>, PiecewiseModel>> combos;
  std::vector<std::pair<std::string, std::string>> fixed;  // arg name -> value text
  std::string ld_policy = "tight";
  std::int64_t total_samples = 0;

  const PiecewiseModel* find_combo(const std::vector<char>& combo) const;
  int warned_regions() const;
};

struct EvalResult {
  double value = 0.0;
  bool in_domain = true;
};

/// Evaluates one statistic of one counter at an integer point.
///
/// In-domain points are evaluated on their unique containing region;
/// out-of-domain points extrapolate from the Chebyshev-nearest region
/// (ties resolved toward the lowest region index) with in_domain=false.
EvalResult evaluate(const RoutineModel& model, const std::vector<char>& combo,
                    const std::vector<std::int64_t>& point, const std::string& counter,
                    const std::string& statistic);

/// Checks that regions are pairwise disjoint and exactly cover the domain.
/// Exhaustive lattice check when the domain has at most `exhaustive_limit`
/// points; otherwise a randomized point check plus pairwise box
/// intersection. Returns human-readable violations (empty = ok).
std::vector<std::string> validate_cover(const PiecewiseModel& pw,
                                        std::int64_t exhaustive_limit = 1000000);

}  // namespace pm::model
