#include "pm/predictor/rank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pm/blocked/builtin.hpp"
#include "pm/common.hpp"
#include "pm/predictor/efficiency.hpp"

namespace pm::predictor {

namespace {

constexpr double kTieTolerance = 1e-6;

bool tied(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::map<std::string, std::int64_t> sizes_for(const pm::blocked::BlockedAlgorithm& alg,
                                              std::int64_t n, const RankOptions& opts) {
  std::map<std::string, std::int64_t> sizes;
  for (const auto& param : alg.size_params)
    sizes[param] = param == "m" ? opts.m.value_or(n) : n;
  return sizes;
}

RankRow evaluate_row(const pm::blocked::BlockedAlgorithm& alg, std::int64_t n, std::int64_t b,
                     const ModelMap& models, const RankOptions& opts) {
  const auto sizes = sizes_for(alg, n, opts);
  const auto trace = pm::blocked::generate_trace(alg, sizes, b);
  const Prediction pred = predict(trace, models, opts.statistics, opts.strict_domain);
  if (std::find(pred.counters.begin(), pred.counters.end(), "ticks") == pred.counters.end())
    fail("ranking predicts time, but not every routine model carries a 'ticks' counter; "
         "rebuild the models with ticks among the counters");

  RankRow row;
  row.algorithm = alg.id;
  row.n = n;
  row.b = b;
  row.extrapolated = pred.extrapolated;
  for (const auto& stat : opts.statistics) {
    const double ticks = pred.total(stat, "ticks");
    row.ticks[stat] = ticks;
    // noisy fits can predict a non-positive tick total; keep the row and
    // mark the efficiency as undefined instead of aborting the table
    row.efficiency[stat] = ticks > 0
                               ? efficiency(alg.operation, sizes, ticks, opts.peak)
                               : std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

/// The statistic rows are ordered by: median when ranked, else the first.
const std::string& sort_statistic(const std::vector<std::string>& statistics) {
  auto it = std::find(statistics.begin(), statistics.end(), "median");
  return it != statistics.end() ? *it : statistics.front();
}

}  // namespace

RankingTable rank_algorithms(const std::vector<std::string>& algorithm_ids,
                             const std::vector<std::int64_t>& n_grid, std::int64_t b,
                             const ModelMap& models, const RankOptions& opts) {
  if (algorithm_ids.empty()) fail("no algorithms to rank");
  if (n_grid.empty()) fail("empty problem size grid");
  if (opts.statistics.empty()) fail("no statistics requested");
  const std::string& sort_stat = sort_statistic(opts.statistics);

  RankingTable table;
  table.statistics = opts.statistics;
  for (std::int64_t n : n_grid) {
    std::vector<RankRow> rows;
    for (const auto& id : algorithm_ids)
      rows.push_back(evaluate_row(pm::blocked::algorithm_by_id(id), n, b, models, opts));

    std::stable_sort(rows.begin(), rows.end(), [&](const RankRow& a, const RankRow& c) {
      return a.ticks.at(sort_stat) < c.ticks.at(sort_stat);
    });
    // Predictions carry fit noise: totals within tolerance of the group
    // leader are ties, resolved by algorithm id so the order is stable.
    for (std::size_t lo = 0; lo < rows.size();) {
      std::size_t hi = lo + 1;
      while (hi < rows.size() &&
             tied(rows[lo].ticks.at(sort_stat), rows[hi].ticks.at(sort_stat)))
        ++hi;
      std::sort(rows.begin() + static_cast<std::ptrdiff_t>(lo),
                rows.begin() + static_cast<std::ptrdiff_t>(hi),
                [](const RankRow& a, const RankRow& c) { return a.algorithm < c.algorithm; });
      lo = hi;
    }
    for (auto& row : rows) table.rows.push_back(std::move(row));
  }
  return table;
}

SweepResult sweep_blocksize(const std::string& algorithm_id, std::int64_t n,
                            const std::vector<std::int64_t>& b_grid, const ModelMap& models,
                            const RankOptions& opts) {
  if (b_grid.empty()) fail("empty block size grid");
  if (opts.statistics.empty()) fail("no statistics requested");
  const auto& alg = pm::blocked::algorithm_by_id(algorithm_id);

  SweepResult result;
  result.table.statistics = opts.statistics;
  for (std::int64_t b : b_grid)
    result.table.rows.push_back(evaluate_row(alg, n, b, models, opts));

  for (const auto& stat : opts.statistics) {
    double best = result.table.rows.front().ticks.at(stat);
    for (const auto& row : result.table.rows) best = std::min(best, row.ticks.at(stat));
    // Smallest block size whose prediction ties the minimum.
    for (const auto& row : result.table.rows) {
      if (tied(row.ticks.at(stat), best) || row.ticks.at(stat) <= best) {
        result.best_b[stat] = row.b;
        break;
      }
    }
  }
  return result;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
  const auto parts = split_on(text, ':');
  auto to_value = [&](const std::string& tok) {
    std::int64_t v = 0;
    try {
      v = parse_int(tok);
    } catch (const pm::error&) {
      fail("invalid grid '", text, "': '", tok, "' is not an integer");
    }
    return v;
  };
  if (parts.size() == 1) {
    std::int64_t v = to_value(parts[0]);
    if (v < 1) fail("invalid grid '", text, "': values must be at least 1");
    return {v};
  }
  if (parts.size() != 3)
    fail("invalid grid '", text, "': expected 'lo:hi:step' or a single integer");
  const std::int64_t lo = to_value(parts[0]);
  const std::int64_t hi = to_value(parts[1]);
  const std::int64_t step = to_value(parts[2]);
  if (lo < 1) fail("invalid grid '", text, "': values must be at least 1");
  if (step < 1) fail("invalid grid '", text, "': step must be at least 1");
  if (hi < lo) fail("invalid grid '", text, "': upper bound below lower bound");
  std::vector<std::int64_t> values;
  for (std::int64_t v = lo; v <= hi; v += step) values.push_back(v);
  return values;
}

std::string emit_csv(const RankingTable& table) {
  std::ostringstream out;
  out << "algorithm,n,b";
  for (const auto& stat : table.statistics) out << ",ticks_" << stat;
  for (const auto& stat : table.statistics) out << ",efficiency_" << stat;
  out << ",extrapolated\n";
  for (const auto& row : table.rows) {
    out << row.algorithm << ',' << row.n << ',' << row.b;
    for (const auto& stat : table.statistics) out << ',' << format_double(row.ticks.at(stat));
    for (const auto& stat : table.statistics)
      out << ',' << format_double(row.efficiency.at(stat));
    out << ',' << row.extrapolated << '\n';
  }
  return out.str();
}

}  // namespace pm::predictor
