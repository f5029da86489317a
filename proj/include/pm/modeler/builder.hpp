#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pm/model/model.hpp"
#include "pm/modeler/config.hpp"
#include "pm/modeler/statistics.hpp"
#include "pm/sampler/client.hpp"

namespace pm::modeler {

/// Observability of one build: sampling volume and final fit quality.
struct BuildDiagnostics {
  std::int64_t unique_points = 0;  // distinct sampling requests issued
  std::int64_t executions = 0;     // unique_points * repetitions
  int warned_regions = 0;
  /// Relative errors of the target-counter median fit on every finalized
  /// region's check points (across all combos).
  std::vector<double> final_check_errors;
};

/// Builds piecewise-polynomial models by driving a sampler: plans sample
/// points per region, fits polynomials, and grows or bisects regions until
/// the relative fit error meets the bound.
class ModelBuilder {
 public:
  ModelBuilder(ModelerConfig cfg, pm::sampler::SamplerClient& sampler);

  /// Runs the configured strategy for every discrete combination and
  /// assembles the routine model (cover-validated per combination).
  pm::model::RoutineModel build();

  /// Single-combination build, exposed for tests.
  pm::model::PiecewiseModel build_combo(const std::vector<char>& combo);

  const BuildDiagnostics& diagnostics() const { return diag_; }
  const ModelerConfig& config() const { return cfg_; }

 private:
  using Point = std::vector<std::int64_t>;
  using Summaries = std::map<std::string, StatisticsSummary>;

  pm::kernels::SamplingRequest make_request(const std::vector<char>& combo,
                                            const Point& point) const;
  /// Samples every not-yet-cached point (repetitions times each) in one
  /// protocol batch and returns per-point summaries.
  void ensure_sampled(const std::vector<char>& combo, const std::vector<Point>& points);
  const Summaries& summaries_for(const std::vector<char>& combo, const Point& point);
  std::vector<double> values_at(const std::vector<char>& combo,
                                const std::vector<Point>& points,
                                const std::string& counter, const std::string& stat);

  /// Fits the geometry target (median of the target counter) over a box.
  struct TargetFit {
    pm::model::Polynomial poly;
    double error = 0.0;
  };
  TargetFit fit_target(const std::vector<char>& combo, const pm::model::Box& box);

  pm::model::Region finalize_region(const std::vector<char>& combo,
                                    const pm::model::Box& box, const TargetFit& fit);

  pm::model::PiecewiseModel expand_combo(const std::vector<char>& combo);
  pm::model::PiecewiseModel refine_combo(const std::vector<char>& combo);

  ModelerConfig cfg_;
  pm::sampler::SamplerClient& sampler_;
  BuildDiagnostics diag_;
  // full request line -> per-counter summaries (one sampling per request)
  std::map<std::string, Summaries> cache_;
};

/// Convenience wrapper: parse nothing, just build with the given config.
pm::model::RoutineModel build_routine_model(const ModelerConfig& cfg,
                                            pm::sampler::SamplerClient& sampler,
                                            BuildDiagnostics* diagnostics = nullptr);

}  // namespace pm::modeler
