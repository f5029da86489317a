#include "pm/modeler/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "pm/common.hpp"

namespace pm::modeler {

double StatisticsSummary::stat(const std::string& name) const {
  if (name == "min") return min;
  if (name == "max") return max;
  if (name == "median") return median;
  if (name == "avg") return avg;
  if (name == "stddev") return stddev;
  fail("unknown statistic '", name, "'");
}

StatisticsSummary summarize(const std::vector<double>& values) {
  if (values.empty()) fail("cannot summarize an empty measurement list");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  StatisticsSummary s;
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t n = sorted.size();
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.avg = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double v : sorted) sq += (v - s.avg) * (v - s.avg);
  s.stddev = std::sqrt(sq / static_cast<double>(n));
  return s;
}

std::map<std::string, StatisticsSummary> summarize_counters(
    const std::vector<pm::kernels::CounterSet>& repetitions) {
  if (repetitions.empty()) fail("cannot summarize an empty measurement list");
  std::map<std::string, StatisticsSummary> out;
  for (const auto& [name, first_value] : repetitions.front()) {
    std::vector<double> values;
    values.reserve(repetitions.size());
    for (const auto& rep : repetitions) {
      auto it = rep.find(name);
      if (it == rep.end()) fail("counter '", name, "' missing from a repetition");
      values.push_back(static_cast<double>(it->second));
    }
    out[name] = summarize(values);
  }
  return out;
}

}  // namespace pm::modeler
