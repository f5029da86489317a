#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pm/blocked/builtin.hpp"
#include "pm/common.hpp"
#include "pm/predictor/rank.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Tunes the block size of one algorithm at one problem size by predicting "
               "every candidate."};
  std::string algorithm, models_dir, b_grid_text, out_path,
      stats_text = "min,median,avg,max";
  std::int64_t n = 0, m = 0;
  double peak = 2.0;
  bool strict = false, list = false;
  app.add_option("--algorithm", algorithm, "Algorithm id (see --list-algorithms)");
  app.add_option("--models", models_dir, "Directory holding routine model files (*.pm)");
  app.add_option("--n", n, "Problem size n");
  app.add_option("--m", m, "Problem size m (two-size operations; defaults to n)");
  app.add_option("--blocksize", b_grid_text, "Block size grid: lo:hi:step or a single value");
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
    if (algorithm.empty() || models_dir.empty() || n < 1 || b_grid_text.empty())
      pm::fail("--algorithm, --models, --n and --blocksize are required");

    pm::predictor::RankOptions opts;
    opts.statistics.clear();
    for (const auto& tok : pm::split_on(stats_text, ','))
      if (!tok.empty()) opts.statistics.push_back(tok);
    opts.peak = peak;
    opts.strict_domain = strict;
    if (m >= 1) opts.m = m;

    const auto b_grid = pm::predictor::parse_grid(b_grid_text);
    const auto models = pm::predictor::load_models(models_dir);
    const auto result =
        pm::predictor::sweep_blocksize(algorithm, n, b_grid, models, opts);
    const std::string csv = pm::predictor::emit_csv(result.table);

    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path);
      if (!out) pm::fail("cannot open output file '", out_path, "'");
      out << csv;
    }
    for (const auto& stat : opts.statistics)
      std::cerr << "best blocksize by " << stat << ": " << result.best_b.at(stat) << "\n";
    if (!out_path.empty())
      std::cerr << "wrote " << out_path << " (" << result.table.rows.size() << " rows)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
