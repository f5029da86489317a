#include "pm/modeler/builder.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pm/kernels/registry.hpp"
#include "pm/modeler/fit.hpp"
#include "pm/modeler/plan.hpp"
#include "pm/sampler/protocol.hpp"

namespace pm::modeler {

namespace {

std::string combo_text(const std::vector<char>& combo) {
  return combo.empty() ? std::string("-") : std::string(combo.begin(), combo.end());
}

}  // namespace

ModelBuilder::ModelBuilder(ModelerConfig cfg, pm::sampler::SamplerClient& sampler)
    : cfg_(std::move(cfg)), sampler_(sampler) {
  validate_modeler_config(cfg_);
}

pm::kernels::SamplingRequest ModelBuilder::make_request(const std::vector<char>& combo,
                                                        const Point& point) const {
  using Tag = pm::kernels::ArgKind::Tag;
  const auto& sig = pm::kernels::lookup_signature(cfg_.routine);

  pm::kernels::SamplingRequest req;
  req.routine = cfg_.routine;
  req.values.resize(sig.args.size());

  std::size_t discrete_index = 0;
  for (std::size_t i = 0; i < sig.args.size(); ++i) {
    const auto& [name, kind] = sig.args[i];
    switch (kind.tag) {
      case Tag::Discrete: {
        if (discrete_index >= combo.size())
          fail("combination '", combo_text(combo), "' is too short for ", cfg_.routine);
        req.values[i] = combo[discrete_index++];
        break;
      }
      case Tag::Size: {
        auto it = std::find(cfg_.modeled_args.begin(), cfg_.modeled_args.end(), name);
        if (it != cfg_.modeled_args.end()) {
          std::size_t d = static_cast<std::size_t>(it - cfg_.modeled_args.begin());
          if (d >= point.size()) fail("point has too few coordinates for ", cfg_.routine);
          req.values[i] = point[d];
        } else {
          req.values[i] = parse_int(cfg_.fixed.at(name));
        }
        break;
      }
      case Tag::Scalar: {
        auto it = cfg_.fixed.find(name);
        req.values[i] = it == cfg_.fixed.end() ? 1.0 : parse_real(it->second);
        break;
      }
      case Tag::MatrixData:
        req.values[i] = pm::kernels::MatrixPlaceholder{};
        break;
      case Tag::LeadingDim:
        req.values[i] = std::int64_t{0};  // filled below, needs sizes resolved
        break;
      case Tag::Increment:
        req.values[i] = std::int64_t{1};
        break;
    }
  }
  if (discrete_index != combo.size())
    fail("combination '", combo_text(combo), "' is too long for ", cfg_.routine);

  // Leading dimensions need the size arguments above to be in place.
  for (std::size_t i = 0; i < sig.args.size(); ++i) {
    const auto& kind = sig.args[i].second;
    if (kind.tag != Tag::LeadingDim) continue;
    const auto& mat = sig.kind_of(kind.bound_matrix);
    const std::int64_t rows = mat.rows.eval(req, sig);
    if (cfg_.ld_policy == "tight") {
      req.values[i] = rows;
    } else {
      // A fixed leading dimension pads, it never truncates.
      req.values[i] = std::max(rows, parse_int(cfg_.ld_policy));
    }
  }

  auto violations = pm::kernels::validate_request(req);
  if (!violations.empty())
    fail("configured request is invalid for ", cfg_.routine, ": ", violations.front());
  return req;
}

void ModelBuilder::ensure_sampled(const std::vector<char>& combo,
                                  const std::vector<Point>& points) {
  std::vector<std::string> keys;
  std::vector<pm::kernels::SamplingRequest> fresh;
  std::set<std::string> queued;
  for (const auto& point : points) {
    auto req = make_request(combo, point);
    std::string key = pm::sampler::format_request_line(req);
    if (cache_.count(key) || !queued.insert(key).second) continue;
    keys.push_back(key);
    fresh.push_back(std::move(req));
  }
  if (fresh.empty()) return;

  // One batch per planning step: `repetitions` consecutive copies per point.
  std::vector<pm::kernels::SamplingRequest> batch;
  batch.reserve(fresh.size() * static_cast<std::size_t>(cfg_.repetitions));
  for (const auto& req : fresh)
    for (int r = 0; r < cfg_.repetitions; ++r) batch.push_back(req);

  std::vector<pm::kernels::CounterSet> results = sampler_.sample(batch);
  if (results.size() != batch.size())
    fail("sampler returned ", results.size(), " results for ", batch.size(), " requests");

  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const auto first = results.begin() + static_cast<std::ptrdiff_t>(
                                             i * static_cast<std::size_t>(cfg_.repetitions));
    std::vector<pm::kernels::CounterSet> reps(first, first + cfg_.repetitions);
    cache_[keys[i]] = summarize_counters(reps);
  }
  diag_.unique_points += static_cast<std::int64_t>(fresh.size());
  diag_.executions += static_cast<std::int64_t>(fresh.size()) * cfg_.repetitions;
}

const ModelBuilder::Summaries& ModelBuilder::summaries_for(const std::vector<char>& combo,
                                                           const Point& point) {
  auto req = make_request(combo, point);
  std::string key = pm::sampler::format_request_line(req);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ensure_sampled(combo, {point});
    it = cache_.find(key);
  }
  return it->second;
}

std::vector<double> ModelBuilder::values_at(const std::vector<char>& combo,
                                            const std::vector<Point>& points,
                                            const std::string& counter,
                                            const std::string& stat) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& point : points) {
    const auto& summaries = summaries_for(combo, point);
    auto it = summaries.find(counter);
    if (it == summaries.end())
      fail("counter '", counter, "' was not measured by the sampler");
    out.push_back(it->second.stat(stat));
  }
  return out;
}

ModelBuilder::TargetFit ModelBuilder::fit_target(const std::vector<char>& combo,
                                                 const pm::model::Box& box) {
  SamplePlan plan = plan_samples(box, cfg_.degree);
  std::vector<Point> all = plan.fit;
  all.insert(all.end(), plan.check.begin(), plan.check.end());
  ensure_sampled(combo, all);

  const std::string& target = cfg_.target();
  std::vector<double> fit_values = values_at(combo, plan.fit, target, "median");
  TargetFit result;
  result.poly = fit_polynomial(plan.fit, fit_values, cfg_.degree);
  std::vector<double> check_values = values_at(combo, plan.check, target, "median");
  result.error = fit_error(result.poly, plan.check, check_values, cfg_.floor_for(target));
  return result;
}

pm::model::Region ModelBuilder::finalize_region(const std::vector<char>& combo,
                                                const pm::model::Box& box,
                                                const TargetFit& fit) {
  pm::model::Region region;
  region.bounds = box;
  region.warned = fit.error > cfg_.epsilon;
  if (region.warned) ++diag_.warned_regions;

  SamplePlan plan = plan_samples(box, cfg_.degree);  // deterministic, already sampled
  const std::string& target = cfg_.target();

  for (const auto& counter : cfg_.counters) {
    for (const auto& stat : cfg_.statistics) {
      if (counter == target && stat == "median") {
        region.polys[{counter, stat}] = fit.poly;
        continue;
      }
      std::vector<double> values = values_at(combo, plan.fit, counter, stat);
      region.polys[{counter, stat}] = fit_polynomial(plan.fit, values, cfg_.degree);
    }
  }

  // Record the target fit's per-point relative check errors for diagnostics.
  std::vector<double> check_values = values_at(combo, plan.check, target, "median");
  const double floor = cfg_.floor_for(target);
  for (std::size_t i = 0; i < plan.check.size(); ++i) {
    const double predicted = fit.poly.evaluate(plan.check[i]);
    const double denom = std::max(std::abs(check_values[i]), floor);
    diag_.final_check_errors.push_back(std::abs(predicted - check_values[i]) / denom);
  }
  return region;
}

pm::model::PiecewiseModel ModelBuilder::expand_combo(const std::vector<char>& combo) {
  pm::model::Box domain;
  for (const auto& arg : cfg_.modeled_args) domain.iv.push_back(cfg_.domains.at(arg));
  const std::size_t dim = domain.dim();

  pm::model::PiecewiseModel pw;
  pw.domain = domain;
  pw.statistics = cfg_.statistics;
  pw.counters = cfg_.counters;

  std::deque<pm::model::Box> worklist{domain};
  while (!worklist.empty()) {
    pm::model::Box wbox = worklist.front();
    worklist.pop_front();

    // Seed region at the worklist box's low corner; its fit is recorded
    // unconditionally — a bad seed becomes a warned region, not a failure.
    pm::model::Box current = wbox;
    for (std::size_t d = 0; d < dim; ++d)
      current.iv[d].hi = std::min(wbox.iv[d].lo + cfg_.initial_width, wbox.iv[d].hi);
    TargetFit fit = fit_target(combo, current);

    // Grow dimensions cyclically until each is closed: a dimension closes
    // when it hits the worklist box edge or a grown fit misses the bound.
    std::vector<bool> open(dim, true);
    std::size_t open_count = dim;
    std::size_t d = 0;
    while (open_count > 0) {
      if (open[d]) {
        const std::int64_t width = current.iv[d].width();
        const std::int64_t new_hi =
            std::min(current.iv[d].lo + cfg_.growth * width, wbox.iv[d].hi);
        if (new_hi == current.iv[d].hi) {
          open[d] = false;
          --open_count;
        } else {
          pm::model::Box candidate = current;
          candidate.iv[d].hi = new_hi;
          TargetFit grown = fit_target(combo, candidate);
          if (grown.error <= cfg_.epsilon) {
            current = candidate;
            fit = grown;
          } else {
            open[d] = false;
            --open_count;
          }
        }
      }
      d = (d + 1) % dim;
    }
    pw.regions.push_back(finalize_region(combo, current, fit));

    // Guillotine subtraction of the accepted region from the worklist box:
    // piece d spans the region's extent in dimensions < d, the remainder
    // [region.hi, wbox.hi) in dimension d, and the full box beyond.
    for (std::size_t cut = 0; cut < dim; ++cut) {
      if (current.iv[cut].hi >= wbox.iv[cut].hi) continue;
      pm::model::Box piece = wbox;
      for (std::size_t e = 0; e < cut; ++e) piece.iv[e] = current.iv[e];
      piece.iv[cut] = {current.iv[cut].hi, wbox.iv[cut].hi};
      worklist.push_back(piece);
    }
  }
  return pw;
}

pm::model::PiecewiseModel ModelBuilder::refine_combo(const std::vector<char>& combo) {
  pm::model::Box domain;
  for (const auto& arg : cfg_.modeled_args) domain.iv.push_back(cfg_.domains.at(arg));

  pm::model::PiecewiseModel pw;
  pw.domain = domain;
  pw.statistics = cfg_.statistics;
  pw.counters = cfg_.counters;

  std::vector<pm::model::Box> stack{domain};
  while (!stack.empty()) {
    pm::model::Box box = stack.back();
    stack.pop_back();

    TargetFit fit = fit_target(combo, box);
    if (fit.error > cfg_.epsilon) {
      // Bisect the widest dimension (ties toward the lowest index) as long
      // as it is still wider than the minimum region width.
      std::size_t widest = 0;
      for (std::size_t d = 1; d < box.dim(); ++d)
        if (box.iv[d].width() > box.iv[widest].width()) widest = d;
      if (box.iv[widest].width() > cfg_.min_width) {
        const std::int64_t mid = (box.iv[widest].lo + box.iv[widest].hi) / 2;
        pm::model::Box lo_half = box, hi_half = box;
        lo_half.iv[widest].hi = mid;
        hi_half.iv[widest].lo = mid;
        stack.push_back(hi_half);  // popped second
        stack.push_back(lo_half);  // popped first: depth-first, low half first
        continue;
      }
    }
    pw.regions.push_back(finalize_region(combo, box, fit));
  }
  return pw;
}

pm::model::PiecewiseModel ModelBuilder::build_combo(const std::vector<char>& combo) {
  return cfg_.strategy == Strategy::Expansion ? expand_combo(combo) : refine_combo(combo);
}

pm::model::RoutineModel ModelBuilder::build() {
  const auto& sig = pm::kernels::lookup_signature(cfg_.routine);

  std::vector<std::vector<char>> combos = cfg_.combos;
  if (combos.empty()) {
    // Full Cartesian product of the discrete argument codes, first argument
    // slowest (odometer order).
    combos.push_back({});
    for (const auto& name : sig.discrete_arg_names()) {
      const auto& allowed = sig.kind_of(name).allowed;
      std::vector<std::vector<char>> next;
      for (const auto& prefix : combos) {
        for (char code : allowed) {
          auto extended = prefix;
          extended.push_back(code);
          next.push_back(std::move(extended));
        }
      }
      combos = std::move(next);
    }
  }

  pm::model::RoutineModel model;
  model.routine = cfg_.routine;
  model.size_args = cfg_.modeled_args;
  model.degree = cfg_.degree;
  model.ld_policy = cfg_.ld_policy;

  for (const auto& combo : combos) {
    pm::model::PiecewiseModel pw = build_combo(combo);
    auto violations = pm::model::validate_cover(pw);
    if (!violations.empty())
      fail("combination '", combo_text(combo), "' of ", cfg_.routine,
           " produced a broken region cover: ", violations.front());
    model.combos.emplace_back(combo, std::move(pw));
  }

  // Record every argument held fixed, in signature order (scalars default
  // to 1 when the configuration does not name them).
  using Tag = pm::kernels::ArgKind::Tag;
  for (const auto& [name, kind] : sig.args) {
    if (kind.tag == Tag::Size && !cfg_.domains.count(name)) {
      model.fixed.emplace_back(name, cfg_.fixed.at(name));
    } else if (kind.tag == Tag::Scalar) {
      auto it = cfg_.fixed.find(name);
      model.fixed.emplace_back(name, it == cfg_.fixed.end() ? "1" : it->second);
    }
  }
  model.total_samples = diag_.executions;
  return model;
}

pm::model::RoutineModel build_routine_model(const ModelerConfig& cfg,
                                            pm::sampler::SamplerClient& sampler,
                                            BuildDiagnostics* diagnostics) {
  ModelBuilder builder(cfg, sampler);
  pm::model::RoutineModel model = builder.build();
  if (diagnostics) *diagnostics = builder.diagnostics();
  return model;
}

}  // namespace pm::modeler
