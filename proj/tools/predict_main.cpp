#include <CLI11.hpp>

#include <iostream>

#include "pm/blocked/builtin.hpp"
#include "pm/blocked/trace.hpp"
#include "pm/common.hpp"
#include "pm/predictor/efficiency.hpp"
#include "pm/predictor/predict.hpp"
#include "pm/predictor/rank.hpp"

namespace {

std::vector<std::string> parse_stats(const std::string& text) {
  std::vector<std::string> stats;
  for (const auto& tok : pm::split_on(text, ','))
    if (!tok.empty()) stats.push_back(tok);
  if (stats.empty()) pm::fail("no statistics given");
  return stats;
}

void list_algorithms() {
  for (const auto& id : pm::blocked::algorithm_ids()) std::cout << id << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predicts the performance counters of one blocked algorithm from routine "
               "models, without executing it."};
  std::string algorithm, models_dir, stats_text = "min,median,avg,max";
  std::int64_t n = 0, m = 0, blocksize = 0;
  double peak = 2.0;
  bool strict = false, list = false;
  app.add_option("--algorithm", algorithm, "Algorithm id (see --list-algorithms)");
  app.add_option("--models", models_dir, "Directory holding routine model files (*.pm)");
  app.add_option("--n", n, "Problem size n");
  app.add_option("--m", m, "Problem size m (two-size operations; defaults to n)");
  app.add_option("--blocksize", blocksize, "Block size b");
  app.add_option("--stats", stats_text, "Statistics to accumulate (comma-separated)");
  app.add_option("--peak", peak, "Peak flop rate per tick for the efficiency metric");
  app.add_flag("--strict-domain", strict, "Fail instead of extrapolating outside the domain");
  app.add_flag("--list-algorithms", list, "List the available algorithm ids and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      list_algorithms();
      return 0;
    }
    if (algorithm.empty() || models_dir.empty() || n < 1 || blocksize < 1)
      pm::fail("--algorithm, --models, --n and --blocksize are required");

    const auto& alg = pm::blocked::algorithm_by_id(algorithm);
    std::map<std::string, std::int64_t> sizes;
    for (const auto& param : alg.size_params)
      sizes[param] = param == "m" && m >= 1 ? m : n;

    const auto models = pm::predictor::load_models(models_dir);
    const auto stats = parse_stats(stats_text);
    const auto trace = pm::blocked::generate_trace(alg, sizes, blocksize);
    const auto pred = pm::predictor::predict(trace, models, stats, strict);

    std::cout << "algorithm " << alg.id;
    for (const auto& [param, value] : sizes) std::cout << "  " << param << " " << value;
    std::cout << "  b " << blocksize << "\n";
    std::cout << "invocations " << pred.invocations << "  extrapolated " << pred.extrapolated
              << "\n";
    for (const auto& stat : stats) {
      std::cout << stat << ":";
      for (const auto& counter : pred.counters)
        std::cout << "  " << counter << " " << pm::format_double(pred.total(stat, counter));
      if (std::find(pred.counters.begin(), pred.counters.end(), "ticks") !=
          pred.counters.end()) {
        // noisy fits can predict a non-positive tick total; report that
        // honestly instead of aborting the whole table
        const double ticks = pred.total(stat, "ticks");
        if (ticks > 0)
          std::cout << "  efficiency "
                    << pm::format_double(
                           pm::predictor::efficiency(alg.operation, sizes, ticks, peak));
        else
          std::cout << "  efficiency n/a (non-positive ticks)";
      }
      std::cout << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
