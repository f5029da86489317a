#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/model/model.hpp"

namespace pm::modeler {

/// Model-construction strategy.
enum class Strategy { Expansion, Refinement };

/// Everything a model build needs: what to model, how accurately, and how
/// to drive the sampler.
struct ModelerConfig {
  std::string routine;
  std::vector<std::string> modeled_args;            // signature order
  std::map<std::string, pm::model::Interval> domains;  // per modeled size arg
  std::vector<std::vector<char>> combos;            // empty = full product
  std::map<std::string, std::string> fixed;         // non-modeled arg -> value text
  std::vector<std::string> counters = {"ticks", "flops"};
  std::vector<std::string> statistics = {"min", "median", "avg", "max", "stddev"};
  std::string target_counter;                       // default: first counter
  int degree = 3;
  double epsilon = 0.05;
  std::map<std::string, double> floors;             // per-counter error floor
  int repetitions = 10;
  Strategy strategy = Strategy::Expansion;
  std::int64_t growth = 2;
  std::int64_t initial_width = 8;
  std::int64_t min_width = 8;
  std::string ld_policy = "tight";                  // "tight" or an integer
  std::map<std::string, std::string> sampler_overrides;  // sampler config keys

  const std::string& target() const;
  /// Error floor for a counter: explicit entry, else 1e3 for ticks,
  /// else 1e-9.
  double floor_for(const std::string& counter) const;
};

/// Parses the modeler's `key = value` configuration dialect (same comment
/// and error conventions as the sampler's). Keys: routine, domain_<arg>,
/// fixed_<arg>, combos, counters, statistics, target, degree, epsilon,
/// floor_<counter>, repetitions, strategy, growth, initial_width,
/// min_width, ld, sampler_<key>. A non-empty routine_override wins over
/// (and must not contradict) the config's routine. Validates the result
/// against the routine signature.
ModelerConfig parse_modeler_config(const std::string& text,
                                   const std::string& routine_override = "");

/// Signature-level validation (also called by parse_modeler_config):
/// every size argument is either modeled with a domain or fixed; combos
/// match the discrete arguments; numeric parameters are in range. Derives
/// cfg.modeled_args (the size arguments with domains, in signature order).
void validate_modeler_config(ModelerConfig& cfg);

}  // namespace pm::modeler
