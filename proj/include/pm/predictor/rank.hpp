#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pm/predictor/predict.hpp"

namespace pm::predictor {

struct RankOptions {
  std::vector<std::string> statistics = {"min", "median", "avg", "max"};
  double peak = 2.0;                 // flops per tick
  bool strict_domain = false;
  std::optional<std::int64_t> m;     // for two-size operations; defaults to n
};

/// One ranked configuration: predicted tick totals and efficiencies per
/// statistic. A noisy fit can predict a non-positive tick total; its
/// efficiency is then NaN rather than an error, so one bad statistic cannot
/// abort a whole table.
struct RankRow {
  std::string algorithm;
  std::int64_t n = 0;
  std::int64_t b = 0;
  std::map<std::string, double> ticks;
  std::map<std::string, double> efficiency;
  std::int64_t extrapolated = 0;
};

struct RankingTable {
  std::vector<std::string> statistics;
  std::vector<RankRow> rows;
};

/// Predicts every algorithm at every problem size (fixed block size) and
/// orders the rows per size by ascending median predicted ticks.
/// Prediction totals within a relative tolerance of 1e-6 count as ties and
/// fall back to algorithm-id order, so fit noise cannot flip a rank.
RankingTable rank_algorithms(const std::vector<std::string>& algorithm_ids,
                             const std::vector<std::int64_t>& n_grid, std::int64_t b,
                             const ModelMap& models, const RankOptions& opts = {});

/// Block-size tuning for one algorithm at one problem size: one row per
/// candidate block size (in grid order) plus the best block size per
/// statistic (ties resolved toward the smallest).
struct SweepResult {
  RankingTable table;
  std::map<std::string, std::int64_t> best_b;
};

SweepResult sweep_blocksize(const std::string& algorithm_id, std::int64_t n,
                            const std::vector<std::int64_t>& b_grid, const ModelMap& models,
                            const RankOptions& opts = {});

/// "lo:hi:step" (inclusive of every reachable value) or a single integer.
std::vector<std::int64_t> parse_grid(const std::string& text);

/// CSV rendering: algorithm,n,b,ticks_<stat>...,efficiency_<stat>...,extrapolated
std::string emit_csv(const RankingTable& table);

}  // namespace pm::predictor
