#include "pm/predictor/predict.hpp"

#include <algorithm>
#include <filesystem>

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"
#include "pm/model/serialize.hpp"

namespace pm::predictor {

ModelMap load_models(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail("'", dir, "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pm")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) fail("no model files (*.pm) found in '", dir, "'");

  ModelMap models;
  for (const auto& path : files) {
    pm::model::RoutineModel m = pm::model::load_model(path.string());
    if (models.count(m.routine))
      fail("duplicate model for routine '", m.routine, "' in '", dir, "'");
    models.emplace(m.routine, std::move(m));
  }
  return models;
}

double Prediction::total(const std::string& stat, const std::string& counter) const {
  auto s = totals.find(stat);
  if (s == totals.end()) fail("prediction holds no statistic '", stat, "'");
  auto c = s->second.find(counter);
  if (c == s->second.end()) fail("prediction holds no counter '", counter, "'");
  return c->second;
}

namespace {

using Tag = pm::kernels::ArgKind::Tag;

std::vector<std::string> common_counters(const std::vector<pm::blocked::TraceEntry>& trace,
                                         const ModelMap& models) {
  std::vector<std::string> counters;
  bool first = true;
  for (const auto& entry : trace) {
    auto it = models.find(entry.request.routine);
    if (it == models.end() || it->second.combos.empty()) continue;
    const auto& model_counters = it->second.combos.front().second.counters;
    if (first) {
      counters = model_counters;
      first = false;
    } else {
      std::vector<std::string> kept;
      for (const auto& c : counters)
        if (std::find(model_counters.begin(), model_counters.end(), c) !=
            model_counters.end())
          kept.push_back(c);
      counters = std::move(kept);
    }
  }
  return counters;
}

}  // namespace

Prediction predict(const std::vector<pm::blocked::TraceEntry>& trace, const ModelMap& models,
                   const std::vector<std::string>& statistics, bool strict_domain) {
  Prediction pred;
  pred.statistics = statistics;
  pred.counters = common_counters(trace, models);
  pred.invocations = static_cast<std::int64_t>(trace.size());
  for (const auto& stat : statistics)
    for (const auto& counter : pred.counters) pred.totals[stat][counter] = 0.0;

  for (std::size_t e = 0; e < trace.size(); ++e) {
    const auto& request = trace[e].request;
    auto mit = models.find(request.routine);
    if (mit == models.end())
      fail("invocation ", e + 1, ": no model for routine '", request.routine, "'");
    const pm::model::RoutineModel& model = mit->second;
    const auto& sig = pm::kernels::lookup_signature(request.routine);

    // Discrete codes select the model combination.
    std::vector<char> combo;
    for (std::size_t i = 0; i < sig.args.size(); ++i)
      if (sig.args[i].second.tag == Tag::Discrete)
        combo.push_back(std::get<char>(request.values[i]));

    // The invocation's sizes in model-dimension order.
    std::vector<std::int64_t> point;
    point.reserve(model.size_args.size());
    for (const auto& name : model.size_args) point.push_back(request.size_arg(sig, name));

    // A model built with a size argument held fixed only speaks for
    // invocations using that exact size. Fixed scalars are not checked:
    // the flop conventions make alpha in {+1,-1} equivalent.
    for (const auto& [name, value] : model.fixed) {
      int idx = sig.index_of(name);
      if (idx < 0 || sig.args[static_cast<std::size_t>(idx)].second.tag != Tag::Size)
        continue;
      if (request.size_arg(sig, name) != parse_int(value))
        fail("invocation ", e + 1, ": the ", request.routine, " model fixes ", name, " = ",
             value, " but the trace uses ", name, " = ", request.size_arg(sig, name));
    }

    bool entry_in_domain = true;
    for (const auto& stat : statistics) {
      for (const auto& counter : pred.counters) {
        pm::model::EvalResult r = pm::model::evaluate(model, combo, point, counter, stat);
        pred.totals[stat][counter] += r.value;
        entry_in_domain = entry_in_domain && r.in_domain;
      }
    }
    if (!entry_in_domain) {
      if (strict_domain) {
        std::string coords;
        for (std::size_t d = 0; d < point.size(); ++d)
          coords += (d ? "," : "") + std::to_string(point[d]);
        fail("invocation ", e + 1, ": ", request.routine, " at (", coords,
             ") lies outside the model domain");
      }
      ++pred.extrapolated;
    }
  }
  return pred;
}

}  // namespace pm::predictor
