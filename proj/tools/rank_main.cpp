#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pm/blocked/builtin.hpp"
#include "pm/common.hpp"
#include "pm/predictor/rank.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ranks all variants of one operation by predicted performance over a grid "
               "of problem sizes."};
  std::string operation, models_dir, n_grid_text, out_path,
      stats_text = "min,median,avg,max";
  std::int64_t m = 0, blocksize = 0;
  double peak = 2.0;
  bool strict = false, list = false;
  app.add_option("--operation", operation, "Operation to rank (e.g. trinv, lu, sylv)");
  app.add_option("--models", models_dir, "Directory holding routine model files (*.pm)");
  app.add_option("--n", n_grid_text, "Problem size grid: lo:hi:step or a single value");
  app.add_option("--m", m, "Problem size m (two-size operations; defaults to each n)");
  app.add_option("--blocksize", blocksize, "Block size b");
  app.add_option("--out", out_path, "Write the CSV table to this file instead of stdout");
  app.add_option("--stats", stats_text, "Statistics to report (comma-separated)");
  app.add_option("--peak", peak, "Peak flop rate per tick for the efficiency metric");
  app.add_flag("--strict-domain", strict, "Fail instead of extrapolating outside the domain");
  app.add_flag("--list-algorithms", list, "List the available algorithm ids and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      for (const auto& id : pm::blocked::algorithm_ids()) std::cout << id << "\n";
      return 0;
    }
    if (operation.empty() || models_dir.empty() || n_grid_text.empty() || blocksize < 1)
      pm::fail("--operation, --models, --n and --blocksize are required");

    pm::predictor::RankOptions opts;
    opts.statistics.clear();
    for (const auto& tok : pm::split_on(stats_text, ','))
      if (!tok.empty()) opts.statistics.push_back(tok);
    opts.peak = peak;
    opts.strict_domain = strict;
    if (m >= 1) opts.m = m;

    std::vector<std::string> ids;
    for (const auto* alg : pm::blocked::algorithms_for(operation)) ids.push_back(alg->id);
    const auto n_grid = pm::predictor::parse_grid(n_grid_text);
    const auto models = pm::predictor::load_models(models_dir);
    const auto table = pm::predictor::rank_algorithms(ids, n_grid, blocksize, models, opts);
    const std::string csv = pm::predictor::emit_csv(table);

    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path);
      if (!out) pm::fail("cannot open output file '", out_path, "'");
      out << csv;
      std::cerr << "wrote " << out_path << " (" << table.rows.size() << " rows)\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
