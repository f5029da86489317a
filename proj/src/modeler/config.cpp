#include "pm/modeler/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"
#include "pm/sampler/config.hpp"

namespace pm::modeler {

const std::string& ModelerConfig::target() const {
  if (!target_counter.empty()) return target_counter;
  if (counters.empty()) fail("no counters configured");
  return counters.front();
}

double ModelerConfig::floor_for(const std::string& counter) const {
  auto it = floors.find(counter);
  if (it != floors.end()) return it->second;
  return counter == "ticks" ? 1e3 : 1e-9;
}

namespace {

[[noreturn]] void invalid_value(int line_no, const std::string& key, const std::string& value) {
  fail("line ", line_no, ": invalid value '", value, "' for key '", key, "'");
}

std::int64_t parse_int_value(int line_no, const std::string& key, const std::string& value,
                             std::int64_t min) {
  std::int64_t v = 0;
  try {
    v = parse_int(value);
  } catch (const pm::error&) {
    invalid_value(line_no, key, value);
  }
  if (v < min) invalid_value(line_no, key, value);
  return v;
}

double parse_real_value(int line_no, const std::string& key, const std::string& value) {
  double v = 0;
  try {
    v = parse_real(value);
  } catch (const pm::error&) {
    invalid_value(line_no, key, value);
  }
  return v;
}

std::vector<std::string> parse_name_list(int line_no, const std::string& key,
                                         const std::string& value) {
  std::vector<std::string> names;
  for (const std::string& tok : split_on(value, ',')) {
    if (tok.empty()) invalid_value(line_no, key, value);
    names.push_back(tok);
  }
  if (names.empty()) invalid_value(line_no, key, value);
  return names;
}

void apply_key(ModelerConfig& cfg, int line_no, const std::string& key,
               const std::string& value) {
  if (key == "routine") {
    cfg.routine = value;
  } else if (key.rfind("domain_", 0) == 0) {
    const std::string arg = key.substr(7);
    if (arg.empty()) fail("line ", line_no, ": unknown key '", key, "'");
    auto parts = split_on(value, ':');
    if (parts.size() != 2) invalid_value(line_no, key, value);
    pm::model::Interval iv;
    try {
      iv.lo = parse_int(parts[0]);
      iv.hi = parse_int(parts[1]);
    } catch (const pm::error&) {
      invalid_value(line_no, key, value);
    }
    if (iv.lo < 1 || iv.hi <= iv.lo) invalid_value(line_no, key, value);
    if (!cfg.domains.emplace(arg, iv).second)
      fail("line ", line_no, ": duplicate domain for argument '", arg, "'");
  } else if (key.rfind("fixed_", 0) == 0) {
    const std::string arg = key.substr(6);
    if (arg.empty() || value.empty()) invalid_value(line_no, key, value);
    cfg.fixed[arg] = value;
  } else if (key == "combos") {
    cfg.combos.clear();
    for (const std::string& tok : parse_name_list(line_no, key, value))
      cfg.combos.emplace_back(tok.begin(), tok.end());
  } else if (key == "counters") {
    cfg.counters = parse_name_list(line_no, key, value);
  } else if (key == "statistics") {
    cfg.statistics = parse_name_list(line_no, key, value);
  } else if (key == "target") {
    if (value.empty()) invalid_value(line_no, key, value);
    cfg.target_counter = value;
  } else if (key == "degree") {
    cfg.degree = static_cast<int>(parse_int_value(line_no, key, value, 0));
  } else if (key == "epsilon") {
    cfg.epsilon = parse_real_value(line_no, key, value);
    if (!(cfg.epsilon > 0)) invalid_value(line_no, key, value);
  } else if (key.rfind("floor_", 0) == 0) {
    const std::string counter = key.substr(6);
    if (counter.empty()) fail("line ", line_no, ": unknown key '", key, "'");
    double v = parse_real_value(line_no, key, value);
    if (!(v > 0)) invalid_value(line_no, key, value);
    cfg.floors[counter] = v;
  } else if (key == "repetitions") {
    cfg.repetitions = static_cast<int>(parse_int_value(line_no, key, value, 1));
  } else if (key == "strategy") {
    if (value == "expansion")
      cfg.strategy = Strategy::Expansion;
    else if (value == "refinement")
      cfg.strategy = Strategy::Refinement;
    else
      invalid_value(line_no, key, value);
  } else if (key == "growth") {
    cfg.growth = parse_int_value(line_no, key, value, 2);
  } else if (key == "initial_width") {
    cfg.initial_width = parse_int_value(line_no, key, value, 1);
  } else if (key == "min_width") {
    cfg.min_width = parse_int_value(line_no, key, value, 1);
  } else if (key == "ld") {
    if (value == "tight") {
      cfg.ld_policy = value;
    } else {
      parse_int_value(line_no, key, value, 1);
      cfg.ld_policy = value;
    }
  } else if (key.rfind("sampler_", 0) == 0) {
    const std::string sub = key.substr(8);
    if (sub.empty()) fail("line ", line_no, ": unknown key '", key, "'");
    cfg.sampler_overrides[sub] = value;
  } else {
    fail("line ", line_no, ": unknown key '", key, "'");
  }
}

}  // namespace

ModelerConfig parse_modeler_config(const std::string& text,
                                   const std::string& routine_override) {
  ModelerConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("line ", line_no, ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("line ", line_no, ": expected 'key = value'");
    apply_key(cfg, line_no, key, value);
  }
  if (!routine_override.empty()) {
    if (!cfg.routine.empty() && cfg.routine != routine_override)
      fail("routine '", routine_override, "' contradicts the configured routine '",
           cfg.routine, "'");
    cfg.routine = routine_override;
  }
  validate_modeler_config(cfg);
  return cfg;
}

void validate_modeler_config(ModelerConfig& cfg) {
  if (cfg.routine.empty()) fail("no routine configured");
  const auto& sig = pm::kernels::lookup_signature(cfg.routine);

  // Sampler overrides must themselves form a valid sampler configuration.
  pm::sampler::config_from_overrides(cfg.sampler_overrides);

  // Modeled arguments: the size arguments with a domain, in signature order.
  const auto size_args = sig.size_arg_names();
  cfg.modeled_args.clear();
  for (const auto& name : size_args)
    if (cfg.domains.count(name)) cfg.modeled_args.push_back(name);

  for (const auto& [arg, iv] : cfg.domains) {
    if (std::find(size_args.begin(), size_args.end(), arg) == size_args.end())
      fail("domain given for '", arg, "', which is not a size argument of ", cfg.routine);
    if (cfg.fixed.count(arg)) fail("argument '", arg, "' is both modeled and fixed");
    (void)iv;
  }
  if (cfg.modeled_args.empty()) fail("no modeled size arguments (no domain_* keys)");

  // Every size argument is either modeled or fixed to an integer.
  for (const auto& name : size_args) {
    if (cfg.domains.count(name)) continue;
    auto it = cfg.fixed.find(name);
    if (it == cfg.fixed.end())
      fail("size argument '", name, "' of ", cfg.routine, " is neither modeled nor fixed");
    std::int64_t v = 0;
    try {
      v = parse_int(it->second);
    } catch (const pm::error&) {
      fail("fixed value '", it->second, "' for size argument '", name, "' is not an integer");
    }
    if (v < 0) fail("fixed value for size argument '", name, "' must be non-negative");
  }

  // Fixed keys must name size or scalar arguments.
  for (const auto& [arg, value] : cfg.fixed) {
    int idx = sig.index_of(arg);
    if (idx < 0) fail("fixed value for unknown argument '", arg, "' of ", cfg.routine);
    const auto& kind = sig.args[static_cast<size_t>(idx)].second;
    using Tag = pm::kernels::ArgKind::Tag;
    if (kind.tag == Tag::Scalar) {
      try {
        parse_real(value);
      } catch (const pm::error&) {
        fail("fixed value '", value, "' for scalar argument '", arg, "' is not a number");
      }
    } else if (kind.tag != Tag::Size) {
      fail("argument '", arg, "' of ", cfg.routine, " cannot be fixed (only sizes and scalars)");
    }
  }

  // Combinations must match the discrete arguments code for code.
  const auto discrete = sig.discrete_arg_names();
  for (const auto& combo : cfg.combos) {
    if (combo.size() != discrete.size())
      fail("combination '", std::string(combo.begin(), combo.end()), "' has ", combo.size(),
           " codes, expected ", discrete.size(), " for ", cfg.routine);
    for (size_t i = 0; i < combo.size(); ++i) {
      const auto& kind = sig.kind_of(discrete[i]);
      if (kind.allowed.find(combo[i]) == std::string::npos)
        fail("code '", combo[i], "' is not valid for argument '", discrete[i], "' of ",
             cfg.routine);
    }
  }

  if (cfg.counters.empty()) fail("no counters configured");
  {
    std::set<std::string> seen;
    for (const auto& c : cfg.counters)
      if (!seen.insert(c).second) fail("duplicate counter '", c, "'");
  }
  if (cfg.statistics.empty()) fail("no statistics configured");
  static const std::set<std::string> known_stats = {"min", "median", "avg", "max", "stddev"};
  for (const auto& s : cfg.statistics)
    if (!known_stats.count(s)) fail("unknown statistic '", s, "'");
  if (!cfg.target_counter.empty() &&
      std::find(cfg.counters.begin(), cfg.counters.end(), cfg.target_counter) ==
          cfg.counters.end())
    fail("target counter '", cfg.target_counter, "' is not among the configured counters");

  if (cfg.degree < 0) fail("degree must be non-negative");
  if (!(cfg.epsilon > 0)) fail("epsilon must be positive");
  if (cfg.repetitions < 1) fail("repetitions must be at least 1");
  if (cfg.growth < 2) fail("growth must be at least 2");
  if (cfg.initial_width < 1) fail("initial_width must be at least 1");
  if (cfg.min_width < 1) fail("min_width must be at least 1");
  if (cfg.ld_policy != "tight") {
    std::int64_t v = 0;
    try {
      v = parse_int(cfg.ld_policy);
    } catch (const pm::error&) {
      fail("ld policy must be 'tight' or a positive integer");
    }
    if (v < 1) fail("ld policy must be 'tight' or a positive integer");
  }
}

}  // namespace pm::modeler
