#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/blocked/trace.hpp"
#include "pm/model/model.hpp"

namespace pm::predictor {

/// The models a prediction draws from, keyed by routine name.
using ModelMap = std::map<std::string, pm::model::RoutineModel>;

/// Loads every model file (*.pm) in a directory; fails on duplicates for
/// the same routine or when none are found.
ModelMap load_models(const std::string& dir);

/// Accumulated per-statistic counter totals for one algorithm trace.
struct Prediction {
  std::vector<std::string> statistics;
  std::vector<std::string> counters;
  /// statistic -> counter -> summed predicted value over all invocations
  std::map<std::string, std::map<std::string, double>> totals;
  std::int64_t invocations = 0;
  /// invocations whose size point lay outside the model domain
  std::int64_t extrapolated = 0;

  double total(const std::string& stat, const std::string& counter) const;
};

/// Predicts counter totals for a trace by evaluating each invocation's
/// model at the invocation's sizes and summing — nothing is executed.
/// Counters are those common to every routine model used by the trace.
/// Out-of-domain points extrapolate and are counted (strict_domain turns
/// them into errors instead).
Prediction predict(const std::vector<pm::blocked::TraceEntry>& trace, const ModelMap& models,
                   const std::vector<std::string>& statistics, bool strict_domain = false);

}  // namespace pm::predictor
