#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pm/common.hpp"
#include "pm/sampler/config.hpp"
#include "pm/sampler/engine.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Microbenchmark sampler: executes routine invocation requests read from a "
               "stream and reports the configured performance counters per request."};
  std::string config_path, input_path, output_path;
  app.add_option("--config", config_path, "Sampler configuration file")->required();
  app.add_option("--input", input_path, "Read requests from this file instead of stdin");
  app.add_option("--output", output_path, "Write results to this file instead of stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream config_file(config_path);
    if (!config_file) pm::fail("cannot open config file '", config_path, "'");
    std::ostringstream config_text;
    config_text << config_file.rdbuf();
    const pm::sampler::SamplerConfig cfg = pm::sampler::parse_config(config_text.str());

    std::ifstream file_in;
    if (!input_path.empty()) {
      file_in.open(input_path);
      if (!file_in) pm::fail("cannot open input file '", input_path, "'");
    }
    std::ofstream file_out;
    if (!output_path.empty()) {
      file_out.open(output_path);
      if (!file_out) pm::fail("cannot open output file '", output_path, "'");
    }
    std::istream& in = input_path.empty() ? std::cin : file_in;
    std::ostream& out = output_path.empty() ? std::cout : file_out;
    return pm::sampler::main_loop(in, out, std::cerr, cfg);
  } catch (const std::exception& e) {
    std::cerr << "! " << e.what() << "\n";
    return 1;
  }
}
