#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pm/common.hpp"
#include "pm/model/serialize.hpp"
#include "pm/modeler/builder.hpp"
#include "pm/modeler/config.hpp"
#include "pm/sampler/client.hpp"

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds a piecewise-polynomial performance model for one routine by "
               "driving a sampler over its size domain."};
  std::string routine, config_path, out_path, sampler_cmd;
  app.add_option("--routine", routine, "Routine to model (e.g. dgemm)");
  app.add_option("--config", config_path, "Modeler configuration file")->required();
  app.add_option("--out", out_path, "Output model file")->required();
  app.add_option("--sampler-cmd", sampler_cmd,
                 "Sampler executable to run as a child process (default: in-process)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream config_file(config_path);
    if (!config_file) pm::fail("cannot open config file '", config_path, "'");
    std::ostringstream config_text;
    config_text << config_file.rdbuf();
    pm::modeler::ModelerConfig cfg =
        pm::modeler::parse_modeler_config(config_text.str(), routine);

    // The sampler must measure exactly the counters the model records.
    auto overrides = cfg.sampler_overrides;
    const std::string counters = join(cfg.counters);
    auto it = overrides.find("counters");
    if (it != overrides.end() && it->second != counters)
      pm::fail("sampler_counters = ", it->second, " contradicts the model counters (",
               counters, ")");
    overrides["counters"] = counters;
    const pm::sampler::SamplerConfig sampler_cfg =
        pm::sampler::config_from_overrides(overrides);

    std::unique_ptr<pm::sampler::SamplerClient> sampler;
    if (sampler_cmd.empty())
      sampler = std::make_unique<pm::sampler::InProcessSampler>(sampler_cfg);
    else
      sampler = std::make_unique<pm::sampler::SubprocessSampler>(sampler_cmd, sampler_cfg);

    pm::modeler::BuildDiagnostics diag;
    pm::model::RoutineModel model = pm::modeler::build_routine_model(cfg, *sampler, &diag);
    pm::model::save_model(out_path, model);

    std::size_t regions = 0;
    for (const auto& [combo, pw] : model.combos) regions += pw.regions.size();
    std::cerr << "model: " << model.routine << " over " << join(cfg.modeled_args) << " ("
              << model.combos.size() << " combinations, " << regions << " regions)\n"
              << "sampling: " << diag.unique_points << " unique points, " << diag.executions
              << " executions\n";
    if (diag.warned_regions > 0)
      std::cerr << "warning: " << diag.warned_regions
                << " region(s) kept a fit above the error bound (smallest-width limit)\n";
    std::cerr << "wrote " << out_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
