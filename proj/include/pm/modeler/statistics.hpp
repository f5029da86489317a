#pragma once

#include <map>
#include <string>
#include <vector>

#include "pm/kernels/types.hpp"

namespace pm::modeler {

/// Aggregates of repeated measurements of one counter at one point.
struct StatisticsSummary {
  double min = 0, max = 0, median = 0, avg = 0, stddev = 0;

  /// Lookup by statistic name (min|median|avg|max|stddev).
  double stat(const std::string& name) const;
};

/// Order statistics and moments of a non-empty value list. The median of an
/// even-length list is the mean of the two central order statistics; stddev
/// is the population standard deviation (0 for a single value).
StatisticsSummary summarize(const std::vector<double>& values);

/// Per-counter summaries over one point's repetitions.
std::map<std::string, StatisticsSummary> summarize_counters(
    const std::vector<pm::kernels::CounterSet>& repetitions);

}  // namespace pm::modeler
