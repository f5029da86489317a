#include "pm/sampler/config.hpp"

#include <algorithm>
#include <sstream>

#include "pm/common.hpp"

namespace pm::sampler {

std::string policy_name(Policy p) {
  return p == Policy::Trash ? "trash" : "incache";
}

const std::vector<std::string>& known_counters() {
  static const std::vector<std::string> names = {"ticks", "flops"};
  return names;
}

namespace {

bool is_known_counter(const std::string& name) {
  const auto& k = known_counters();
  return std::find(k.begin(), k.end(), name) != k.end();
}

[[noreturn]] void invalid_value(int line_no, const std::string& key, const std::string& value) {
  fail("line ", line_no, ": invalid value '", value, "' for key '", key, "'");
}

std::int64_t parse_positive(int line_no, const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  try {
    v = parse_int(value);
  } catch (const pm::error&) {
    invalid_value(line_no, key, value);
  }
  if (v < 1) invalid_value(line_no, key, value);
  return v;
}

void apply_key(SamplerConfig& cfg, int line_no, const std::string& key,
               const std::string& value) {
  if (key == "memory_bytes") {
    cfg.memory_bytes = static_cast<std::uint64_t>(parse_positive(line_no, key, value));
  } else if (key == "policy") {
    if (value == "trash")
      cfg.policy = Policy::Trash;
    else if (value == "incache")
      cfg.policy = Policy::InCache;
    else
      invalid_value(line_no, key, value);
  } else if (key == "counters") {
    std::vector<std::string> names;
    for (const std::string& tok : split_on(value, ',')) {
      std::string name = trim(tok);
      if (name.empty()) invalid_value(line_no, key, value);
      if (!is_known_counter(name))
        fail("line ", line_no, ": unknown counter '", name, "' for key 'counters'");
      names.push_back(name);
    }
    if (names.empty()) invalid_value(line_no, key, value);
    cfg.counters = std::move(names);
  } else if (key == "max_batch") {
    cfg.max_batch = parse_positive(line_no, key, value);
  } else if (key == "seed") {
    try {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value));
    } catch (const pm::error&) {
      invalid_value(line_no, key, value);
    }
  } else if (key == "refill_on_wrap") {
    if (value == "true")
      cfg.refill_on_wrap = true;
    else if (value == "false")
      cfg.refill_on_wrap = false;
    else
      invalid_value(line_no, key, value);
  } else if (key == "warmup") {
    std::int64_t v = 0;
    try {
      v = parse_int(value);
    } catch (const pm::error&) {
      invalid_value(line_no, key, value);
    }
    if (v < 0) invalid_value(line_no, key, value);
    cfg.warmup = v;
  } else {
    fail("line ", line_no, ": unknown key '", key, "'");
  }
}

}  // namespace

SamplerConfig parse_config(const std::string& text) {
  SamplerConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("line ", line_no, ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("line ", line_no, ": expected 'key = value'");
    apply_key(cfg, line_no, key, value);
  }
  return cfg;
}

std::string serialize_config(const SamplerConfig& cfg) {
  std::ostringstream out;
  out << "memory_bytes = " << cfg.memory_bytes << "\n";
  out << "policy = " << policy_name(cfg.policy) << "\n";
  out << "counters = ";
  for (size_t i = 0; i < cfg.counters.size(); ++i)
    out << (i ? "," : "") << cfg.counters[i];
  out << "\n";
  out << "max_batch = " << cfg.max_batch << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "refill_on_wrap = " << (cfg.refill_on_wrap ? "true" : "false") << "\n";
  out << "warmup = " << cfg.warmup << "\n";
  return out.str();
}

SamplerConfig config_from_overrides(const std::map<std::string, std::string>& overrides) {
  std::ostringstream text;
  for (const auto& [key, value] : overrides) text << key << " = " << value << "\n";
  return parse_config(text.str());
}

}  // namespace pm::sampler
