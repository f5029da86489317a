// End-to-end acceptance suite. Each criterion prints exactly one
// [PASS]/[FAIL] line; the exit code is the number of failed criteria.
//
// Run via ctest or directly:
//   acceptance --sampler <path-to-sampler-binary> --data <path-to-tests/data>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pm/blocked/builtin.hpp"
#include "pm/blocked/execute.hpp"
#include "pm/blocked/trace.hpp"
#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"
#include "pm/model/exact_models.hpp"
#include "pm/model/model.hpp"
#include "pm/modeler/builder.hpp"
#include "pm/modeler/fit.hpp"
#include "pm/modeler/plan.hpp"
#include "pm/modeler/statistics.hpp"
#include "pm/predictor/predict.hpp"
#include "pm/predictor/rank.hpp"
#include "pm/sampler/client.hpp"
#include "pm/sampler/config.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using pm::kernels::CounterSet;
using pm::kernels::MatrixPlaceholder;
using pm::kernels::SamplingRequest;
using pm::model::RoutineModel;
using pm::modeler::ModelerConfig;
using pm::modeler::Strategy;
using testutil::Mat;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

/// Same tie rule the ranking applies: totals within 1e-6 relative.
bool tied(double a, double b) {
  return std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1e-300});
}

double guarded_rel(double predicted, double exact) {
  return std::abs(predicted - exact) / std::max(1.0, std::abs(exact));
}

// ---------------------------------------------------------------------------
// criterion 1: both build strategies recover the analytic flop surfaces
// ---------------------------------------------------------------------------

ModelerConfig flops_build_config(const std::string& routine,
                                 std::map<std::string, pm::model::Interval> domains,
                                 Strategy strategy) {
  ModelerConfig cfg;
  cfg.routine = routine;
  cfg.domains = std::move(domains);
  cfg.counters = {"flops"};
  cfg.statistics = {"median"};
  cfg.target_counter = "flops";
  cfg.degree = 3;
  cfg.epsilon = 1e-6;
  cfg.repetitions = 1;
  cfg.strategy = strategy;
  return cfg;
}

SamplingRequest dgemm_request(char tA, char tB, std::int64_t m, std::int64_t n,
                              std::int64_t k) {
  return testutil::req("dgemm", {tA, tB, m, n, k, 1.0, MatrixPlaceholder{},
                                 tA == 'N' ? m : k, MatrixPlaceholder{}, tB == 'N' ? k : n,
                                 1.0, MatrixPlaceholder{}, m});
}

SamplingRequest dtrsm_request(char side, char uplo, char trans, char diag, std::int64_t m,
                              std::int64_t n) {
  return testutil::req("dtrsm", {side, uplo, trans, diag, m, n, 1.0, MatrixPlaceholder{},
                                 side == 'L' ? m : n, MatrixPlaceholder{}, m});
}

/// Evaluates the model's median flops at `points` many random points and
/// returns the worst guarded relative error against the analytic count.
double probe_flops_model(const RoutineModel& model, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    // pick a random combination and a random in-domain point
    const auto& [combo, pw] =
        model.combos[std::uniform_int_distribution<std::size_t>(0, model.combos.size() - 1)(
            rng)];
    std::vector<std::int64_t> point;
    for (const auto& iv : pw.domain.iv)
      point.push_back(std::uniform_int_distribution<std::int64_t>(iv.lo, iv.hi - 1)(rng));

    SamplingRequest request =
        model.routine == "dgemm"
            ? dgemm_request(combo[0], combo[1], point[0], point[1], point[2])
            : dtrsm_request(combo[0], combo[1], combo[2], combo[3], point[0], point[1]);
    const double exact = static_cast<double>(pm::kernels::flop_count(request));
    pm::model::EvalResult r = pm::model::evaluate(model, combo, point, "flops", "median");
    if (!r.in_domain) return 1.0;  // must never extrapolate in-domain probes
    worst = std::max(worst, guarded_rel(r.value, exact));
  }
  return worst;
}

Outcome criterion1(const std::string& sampler_path, std::vector<RoutineModel>& built) {
  const auto t0 = Clock::now();
  double worst = 0.0;

  for (Strategy strategy : {Strategy::Expansion, Strategy::Refinement}) {
    // dgemm over [1,64)^3, sampled inside this process
    {
      pm::sampler::SamplerConfig scfg;
      scfg.memory_bytes = 1 << 24;
      scfg.counters = {"flops"};
      pm::sampler::InProcessSampler sampler(scfg);
      ModelerConfig cfg = flops_build_config(
          "dgemm", {{"m", {1, 64}}, {"n", {1, 64}}, {"k", {1, 64}}}, strategy);
      built.push_back(pm::modeler::build_routine_model(cfg, sampler));
      worst = std::max(worst, probe_flops_model(built.back(), 1000, 11 + built.size()));
    }
    // dtrsm over [1,128)^2, sampled through the stream-protocol subprocess
    {
      pm::sampler::SamplerConfig scfg;
      scfg.memory_bytes = 1 << 24;
      scfg.counters = {"flops"};
      pm::sampler::SubprocessSampler sampler(sampler_path, scfg);
      ModelerConfig cfg =
          flops_build_config("dtrsm", {{"m", {1, 128}}, {"n", {1, 128}}}, strategy);
      built.push_back(pm::modeler::build_routine_model(cfg, sampler));
      worst = std::max(worst, probe_flops_model(built.back(), 1000, 11 + built.size()));
    }
  }

  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-9 && secs < 60.0;
  return {pass, "4 models (dgemm in-process, dtrsm via subprocess), 1000 probe points each, "
                "worst relative error " +
                    fmt(worst) + ", " + fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------
// criterion 2: both strategies detect a piecewise jump
// ---------------------------------------------------------------------------

Outcome criterion2(std::vector<pm::model::PiecewiseModel>& built) {
  const auto t0 = Clock::now();
  auto jump_value = [](std::int64_t n) { return n < 32 ? n : 10 * n; };
  pm::sampler::CallbackSampler sampler([&](const SamplingRequest& r) {
    CounterSet c;
    c["value"] = static_cast<std::uint64_t>(jump_value(r.int_at(1)));
    return c;
  });

  ModelerConfig cfg;
  cfg.routine = "dtrinv_unb";
  cfg.domains = {{"n", {1, 64}}};
  cfg.combos = {{'N'}};
  cfg.counters = {"value"};
  cfg.statistics = {"median"};
  cfg.target_counter = "value";
  cfg.floors = {{"value", 1e-9}};
  cfg.degree = 1;
  cfg.epsilon = 0.01;
  cfg.repetitions = 1;

  bool ok = true;
  std::string notes;
  for (Strategy strategy : {Strategy::Expansion, Strategy::Refinement}) {
    cfg.strategy = strategy;
    pm::modeler::ModelBuilder builder(cfg, sampler);
    pm::model::PiecewiseModel pw = builder.build_combo({'N'});
    built.push_back(pw);

    // at least two regions, with an interior boundary within min_width of 32
    std::int64_t nearest = 1 << 30;
    for (const auto& region : pw.regions) {
      for (std::int64_t edge : {region.bounds.iv[0].lo, region.bounds.iv[0].hi})
        if (edge != 1 && edge != 64) nearest = std::min(nearest, std::abs(edge - 32));
    }
    ok = ok && pw.regions.size() >= 2 && nearest <= cfg.min_width;
    notes += (strategy == Strategy::Expansion ? "expansion " : "refinement ") +
             std::to_string(pw.regions.size()) + " regions (boundary off by " +
             std::to_string(nearest) + "), ";
  }

  // brute force: one degree-1 fit across the whole domain cannot meet the bound
  pm::modeler::SamplePlan plan = pm::modeler::plan_samples(pm::model::Box{{{1, 64}}}, 1);
  std::vector<double> fit_values, check_values;
  for (const auto& p : plan.fit) fit_values.push_back(static_cast<double>(jump_value(p[0])));
  for (const auto& p : plan.check)
    check_values.push_back(static_cast<double>(jump_value(p[0])));
  pm::model::Polynomial single = pm::modeler::fit_polynomial(plan.fit, fit_values, 1);
  const double single_error =
      pm::modeler::fit_error(single, plan.check, check_values, 1e-9);
  ok = ok && single_error > cfg.epsilon;

  const double secs = seconds_since(t0);
  ok = ok && secs < 10.0;
  return {ok, notes + "single whole-domain fit error " + fmt(single_error) + " > 0.01, " +
                  fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------
// criterion 3: every model built above has a disjoint, exhaustive cover
// ---------------------------------------------------------------------------

Outcome criterion3(const std::vector<RoutineModel>& routine_models,
                   const std::vector<pm::model::PiecewiseModel>& piecewise) {
  int covers = 0;
  std::vector<std::string> violations;
  auto check = [&](const pm::model::PiecewiseModel& pw) {
    ++covers;
    if (pw.domain.volume() > 1000000) {
      violations.push_back("domain too large for an exhaustive lattice check");
      return;
    }
    auto v = pm::model::validate_cover(pw);
    violations.insert(violations.end(), v.begin(), v.end());
  };
  for (const auto& model : routine_models)
    for (const auto& [combo, pw] : model.combos) check(pw);
  for (const auto& pw : piecewise) check(pw);

  const bool pass = !violations.empty() ? false : covers > 0;
  std::string detail = std::to_string(covers) + " region covers checked exhaustively";
  if (!violations.empty()) detail += "; first violation: " + violations.front();
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// criterion 4: model predictions equal counted trace flops exactly
// ---------------------------------------------------------------------------

Outcome criterion4() {
  pm::predictor::ModelMap models;
  for (const auto& r : {"dgemm", "dtrsm", "dtrmm", "dtrinv_unb", "dgetrf_unb"})
    models.emplace(r, pm::model::exact_flops_model(r, 65));

  int checked = 0;
  for (std::int64_t n : {std::int64_t{8}, std::int64_t{16}, std::int64_t{33}, std::int64_t{64}}) {
    for (std::int64_t b : {std::int64_t{1}, std::int64_t{4}, std::int64_t{7}, n}) {
      std::int64_t trinv_total = -1;
      for (const std::string& op : {std::string("trinv"), std::string("lu")}) {
        const int variants = op == "trinv" ? 4 : 3;
        for (int v = 1; v <= variants; ++v) {
          const auto& alg = pm::blocked::builtin_algorithm(op, v);
          auto trace = pm::blocked::generate_trace(alg, {{"n", n}}, b);
          const auto counted = static_cast<std::int64_t>(pm::blocked::trace_flops(trace));
          pm::predictor::Prediction pred =
              pm::predictor::predict(trace, models, {"median"});
          const double predicted = pred.total("median", "flops");
          ++checked;
          if (std::llround(predicted) != counted ||
              guarded_rel(predicted, static_cast<double>(counted)) > 1e-3)
            return {false, alg.id + " at n=" + std::to_string(n) + " b=" + std::to_string(b) +
                               ": predicted " + fmt(predicted) + ", counted " +
                               std::to_string(counted)};
          if (op == "trinv") {
            if (trinv_total < 0) trinv_total = counted;
            if (counted != trinv_total)
              return {false, "trinv variants disagree at n=" + std::to_string(n) +
                                 " b=" + std::to_string(b)};
          }
        }
      }
    }
  }
  return {true, std::to_string(checked) +
                    " (algorithm, n, b) predictions equal the counted totals exactly; "
                    "trinv variants mutually equal"};
}

// ---------------------------------------------------------------------------
// criterion 5: ranking under a synthetic deterministic cost backend
// ---------------------------------------------------------------------------

const std::map<std::string, std::pair<double, double>> kCosts = {
    {"dgemm", {2.0, 100.0}},
    {"dtrsm", {3.0, 150.0}},
    {"dtrmm", {5.0, 200.0}},
    {"dtrinv_unb", {7.0, 250.0}},
};

double simulate_ticks(const std::vector<pm::blocked::TraceEntry>& trace) {
  double total = 0.0;
  for (const auto& e : trace) {
    const auto& [slope, overhead] = kCosts.at(e.request.routine);
    total += slope * static_cast<double>(pm::kernels::flop_count(e.request)) + overhead;
  }
  return total;
}

/// Direct-simulation ranking with the ranking's own tie rule.
std::vector<std::string> simulated_order(const std::vector<std::string>& ids, std::int64_t n,
                                         std::int64_t b) {
  std::vector<std::pair<double, std::string>> priced;
  for (const auto& id : ids)
    priced.emplace_back(
        simulate_ticks(pm::blocked::generate_trace(pm::blocked::algorithm_by_id(id),
                                                   {{"n", n}}, b)),
        id);
  std::stable_sort(priced.begin(), priced.end(),
                   [](const auto& a, const auto& c) { return a.first < c.first; });
  for (std::size_t lo = 0; lo < priced.size();) {
    std::size_t hi = lo + 1;
    while (hi < priced.size() && tied(priced[lo].first, priced[hi].first)) ++hi;
    std::sort(priced.begin() + static_cast<std::ptrdiff_t>(lo),
              priced.begin() + static_cast<std::ptrdiff_t>(hi),
              [](const auto& a, const auto& c) { return a.second < c.second; });
    lo = hi;
  }
  std::vector<std::string> order;
  for (const auto& [ticks, id] : priced) order.push_back(id);
  return order;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  pm::sampler::CallbackSampler synth([](const SamplingRequest& r) {
    const auto& [slope, overhead] = kCosts.at(r.routine);
    CounterSet c;
    c["ticks"] = static_cast<std::uint64_t>(
        std::llround(slope * static_cast<double>(pm::kernels::flop_count(r)) + overhead));
    return c;
  });

  // model every routine the traces invoke, over a domain covering n=512
  const std::map<std::string, std::vector<std::vector<char>>> combos = {
      {"dgemm", {{'N', 'N'}}},
      {"dtrsm", {{'L', 'L', 'N', 'N'}, {'R', 'L', 'N', 'N'}}},
      {"dtrmm", {{'L', 'L', 'N', 'N'}, {'R', 'L', 'N', 'N'}}},
      {"dtrinv_unb", {{'N'}}},
  };
  pm::predictor::ModelMap models;
  for (const auto& [routine, routine_combos] : combos) {
    ModelerConfig cfg;
    cfg.routine = routine;
    for (const auto& name : pm::kernels::lookup_signature(routine).size_arg_names())
      cfg.domains[name] = {1, 513};
    cfg.combos = routine_combos;
    cfg.counters = {"ticks"};
    cfg.statistics = {"median"};
    cfg.target_counter = "ticks";
    cfg.floors = {{"ticks", 1e-9}};
    cfg.degree = 3;
    cfg.epsilon = 1e-4;
    cfg.repetitions = 1;
    cfg.strategy = Strategy::Refinement;
    models.emplace(routine, pm::modeler::build_routine_model(cfg, synth));
  }

  pm::predictor::RankOptions opts;
  opts.statistics = {"median"};
  const std::vector<std::string> ids = {"trinv1", "trinv2", "trinv3", "trinv4"};

  // ranking at three problem sizes must match direct simulation
  pm::predictor::RankingTable table =
      pm::predictor::rank_algorithms(ids, {128, 256, 512}, 16, models, opts);
  std::size_t row = 0;
  for (std::int64_t n : {std::int64_t{128}, std::int64_t{256}, std::int64_t{512}}) {
    const std::vector<std::string> want = simulated_order(ids, n, 16);
    for (const auto& id : want) {
      if (table.rows.at(row).algorithm != id || table.rows.at(row).n != n)
        return {false, "rank order at n=" + std::to_string(n) + " diverges from simulation (" +
                           table.rows.at(row).algorithm + " vs " + id + ")"};
      ++row;
    }
  }

  // block-size tuning at n=256 must find the brute-force optimum
  const std::vector<std::int64_t> grid = {8, 16, 32, 64, 128};
  pm::predictor::SweepResult sweep =
      pm::predictor::sweep_blocksize("trinv3", 256, grid, models, opts);
  double best = 0.0;
  std::int64_t brute_b = 0;
  for (std::int64_t b : grid) {
    const double t = simulate_ticks(
        pm::blocked::generate_trace(pm::blocked::algorithm_by_id("trinv3"), {{"n", 256}}, b));
    if (brute_b == 0 || (t < best && !tied(t, best))) {
      best = t;
      brute_b = b;
    }
  }
  if (sweep.best_b.at("median") != brute_b)
    return {false, "sweep chose b=" + std::to_string(sweep.best_b.at("median")) +
                       ", brute force says b=" + std::to_string(brute_b)};

  const double secs = seconds_since(t0);
  return {secs < 300.0, "rank matches simulation at n in {128,256,512}; sweep optimum b=" +
                            std::to_string(brute_b) + " matches brute force, " + fmt(secs) +
                            " s"};
}

// ---------------------------------------------------------------------------
// criterion 6: sampler stream protocol on the golden request script
// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_sampler(const std::string& sampler, const std::filesystem::path& config,
                const std::filesystem::path& input, const std::filesystem::path& out,
                const std::filesystem::path& err) {
  const std::string cmd = "'" + sampler + "' --config '" + config.string() + "' --input '" +
                          input.string() + "' > '" + out.string() + "' 2> '" + err.string() +
                          "'";
  const int status = std::system(cmd.c_str());
  return status < 0 ? status : WEXITSTATUS(status);
}

Outcome criterion6(const std::string& sampler, const std::filesystem::path& data) {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "pm_acceptance";
  fs::create_directories(tmp);
  const fs::path requests = data / "golden_requests.txt";
  const std::string expected = read_file(data / "golden_expected.txt");

  // two deterministic runs: byte-identical and equal to the golden output
  for (int run = 1; run <= 2; ++run) {
    const int rc = run_sampler(sampler, data / "golden_flops.conf", requests,
                               tmp / ("out" + std::to_string(run) + ".txt"),
                               tmp / ("err" + std::to_string(run) + ".txt"));
    if (rc != 0) return {false, "flops run exited with " + std::to_string(rc)};
  }
  const std::string out1 = read_file(tmp / "out1.txt");
  const std::string out2 = read_file(tmp / "out2.txt");
  if (out1 != out2) return {false, "two flops runs differ"};
  if (out1 != expected) return {false, "flops output differs from the golden file"};
  const std::string err1 = read_file(tmp / "err1.txt");
  if (err1.find("! line 5: token-count mismatch for dgemm: got 3 arguments, expected 13") ==
      std::string::npos)
    return {false, "malformed request not reported on stderr"};

  // ticks run: identical apart from an inserted ticks column
  const int rc = run_sampler(sampler, data / "golden_ticks.conf", requests,
                             tmp / "out_ticks.txt", tmp / "err_ticks.txt");
  if (rc != 0) return {false, "ticks run exited with " + std::to_string(rc)};
  std::istringstream ticks_out(read_file(tmp / "out_ticks.txt"));
  std::istringstream golden(expected);
  std::string tline, gline;
  int lines = 0;
  while (std::getline(golden, gline)) {
    if (!std::getline(ticks_out, tline))
      return {false, "ticks output is shorter than the golden file"};
    const auto tfields = pm::split_on(tline, ' ');
    const auto gfields = pm::split_on(gline, ' ');
    if (tfields.size() != 3 || gfields.size() != 2 || tfields[0] != gfields[0] ||
        tfields[2] != gfields[1])
      return {false, "ticks line '" + tline + "' does not match '" + gline +
                         "' plus a ticks column"};
    if (tfields[1].find_first_not_of("0123456789") != std::string::npos)
      return {false, "ticks value '" + tfields[1] + "' is not a non-negative integer"};
    ++lines;
  }
  if (std::getline(ticks_out, tline)) return {false, "ticks output has extra lines"};

  return {true, "two byte-identical flops runs matching the golden output (" +
                    std::to_string(lines) +
                    " results), malformed line reported, ticks column inserts cleanly"};
}

// ---------------------------------------------------------------------------
// criterion 7: kernel-backend numerics of the blocked algorithms
// ---------------------------------------------------------------------------

void load_operand(pm::blocked::OperandBuffer& dst, const Mat& src) {
  for (std::int64_t j = 0; j < src.cols; ++j)
    for (std::int64_t i = 0; i < src.rows; ++i) dst.at(i, j) = src.at(i, j);
}

Mat unload_operand(const pm::blocked::OperandBuffer& src) {
  Mat m(src.rows, src.cols);
  for (std::int64_t j = 0; j < src.cols; ++j)
    for (std::int64_t i = 0; i < src.rows; ++i)
      m.at(i, j) = src.data[static_cast<std::size_t>(j * src.rows + i)];
  return m;
}

Outcome criterion7() {
  const std::int64_t n = 32;
  std::mt19937_64 rng(7);
  const Mat L = testutil::lower_triangular(n, rng);
  const Mat A = testutil::diagonally_dominant(n, rng);
  double worst = 0.0;

  for (int v = 1; v <= 4; ++v) {
    const auto& alg = pm::blocked::builtin_algorithm("trinv", v);
    for (std::int64_t b : {std::int64_t{5}, std::int64_t{8}, n}) {
      auto operands = pm::blocked::make_operands(alg, {{"n", n}});
      load_operand(operands.at("L"), L);
      pm::blocked::execute_trace_kernels(pm::blocked::generate_trace(alg, {{"n", n}}, b),
                                         operands);
      Mat inv = unload_operand(operands.at("L"));
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < j; ++i) inv.at(i, j) = 0.0;  // untouched scratch
      const double resid = testutil::max_abs_diff_identity(testutil::matmul(inv, L));
      worst = std::max(worst, resid);
      if (resid > 1e-8)
        return {false, alg.id + " b=" + std::to_string(b) +
                           ": ||inv(L)*L - I|| = " + fmt(resid)};
    }
  }

  for (int v = 1; v <= 3; ++v) {
    const auto& alg = pm::blocked::builtin_algorithm("lu", v);
    for (std::int64_t b : {std::int64_t{5}, std::int64_t{8}, n}) {
      auto operands = pm::blocked::make_operands(alg, {{"n", n}});
      load_operand(operands.at("A"), A);
      pm::blocked::execute_trace_kernels(pm::blocked::generate_trace(alg, {{"n", n}}, b),
                                         operands);
      Mat packed = unload_operand(operands.at("A"));
      Mat Lf(n, n), Uf(n, n);
      for (std::int64_t j = 0; j < n; ++j) {
        Lf.at(j, j) = 1.0;
        for (std::int64_t i = j + 1; i < n; ++i) Lf.at(i, j) = packed.at(i, j);
        for (std::int64_t i = 0; i <= j; ++i) Uf.at(i, j) = packed.at(i, j);
      }
      const double resid = testutil::max_abs_diff(testutil::matmul(Lf, Uf), A);
      worst = std::max(worst, resid);
      if (resid > 1e-8)
        return {false, alg.id + " b=" + std::to_string(b) + ": ||L*U - A|| = " + fmt(resid)};
    }
  }

  return {true, "4 inversion and 3 factorization variants at 32x32, b in {5,8,32}, worst "
                "residual " +
                    fmt(worst)};
}

// ---------------------------------------------------------------------------
// criterion 8: summary statistics on adversarial inputs
// ---------------------------------------------------------------------------

pm::modeler::StatisticsSummary naive_summary(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  pm::modeler::StatisticsSummary s;
  s.min = values.front();
  s.max = values.back();
  const std::size_t half = values.size() / 2;
  s.median = values.size() % 2 ? values[half] : (values[half - 1] + values[half]) / 2.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.avg = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.avg) * (v - s.avg);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

Outcome criterion8() {
  std::vector<std::vector<double>> lists = {
      {7.0},                                         // single element
      {4.0, 4.0, 4.0, 4.0},                          // constant
      {1, 2, 3, 4, 5, 6, 7, 8, 9},                   // sorted, odd length
      {9, 8, 7, 6, 5, 4, 3, 2, 1},                   // reversed
      {3, 1, 4, 1, 5, 9, 2, 6},                      // shuffled, even length
      {-2.5, 0.0, 2.5},                              // signed values
  };
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  std::vector<double> big(101);
  for (double& v : big) v = dist(rng);
  lists.push_back(big);

  int checked = 0;
  for (const auto& values : lists) {
    const auto got = pm::modeler::summarize(values);
    const auto want = naive_summary(values);
    for (auto [g, w] : {std::pair{got.min, want.min}, {got.max, want.max},
                        {got.median, want.median}, {got.avg, want.avg},
                        {got.stddev, want.stddev}}) {
      ++checked;
      if (std::abs(g - w) > 1e-9 * std::max(1.0, std::abs(w)))
        return {false, "summary field " + fmt(g) + " != oracle " + fmt(w)};
    }
    const bool invariants = got.min <= got.median && got.median <= got.max &&
                            got.min <= got.avg && got.avg <= got.max && got.stddev >= 0.0 &&
                            got.max - got.min >= 0.0;
    if (!invariants) return {false, "ordering invariants violated"};
  }
  return {true, std::to_string(lists.size()) + " adversarial lists, " +
                    std::to_string(checked) + " fields equal the sort-based oracle"};
}

// ---------------------------------------------------------------------------
// criterion 9: loose smoke test of real-timer modeling
// ---------------------------------------------------------------------------

Outcome criterion9() {
  auto attempt = [&]() -> std::pair<double, std::size_t> {
    pm::sampler::SamplerConfig scfg;
    scfg.memory_bytes = 64ull << 20;
    scfg.counters = {"ticks"};
    scfg.warmup = 1;
    pm::sampler::InProcessSampler sampler(scfg);

    ModelerConfig cfg;
    cfg.routine = "dgemm";
    cfg.domains = {{"m", {16, 128}}, {"n", {16, 128}}, {"k", {16, 128}}};
    cfg.combos = {{'N', 'N'}};
    cfg.counters = {"ticks"};
    cfg.statistics = {"median"};
    cfg.target_counter = "ticks";
    cfg.degree = 3;
    cfg.epsilon = 0.25;
    cfg.repetitions = 10;
    cfg.strategy = Strategy::Refinement;

    pm::modeler::BuildDiagnostics diag;
    pm::modeler::build_routine_model(cfg, sampler, &diag);
    if (diag.final_check_errors.empty()) return {0.0, 0};
    std::size_t within = 0;
    for (double e : diag.final_check_errors)
      if (e <= cfg.epsilon) ++within;
    return {static_cast<double>(within) /
                static_cast<double>(diag.final_check_errors.size()),
            diag.final_check_errors.size()};
  };

  // timing is inherently noisy: allow one retry before reporting failure
  auto [fraction, points] = attempt();
  int attempts = 1;
  if (fraction < 0.9) {
    std::tie(fraction, points) = attempt();
    ++attempts;
  }
  return {fraction >= 0.9 && points > 0,
          fmt(100.0 * fraction) + "% of " + std::to_string(points) +
              " check points within 25% relative error (attempt " +
              std::to_string(attempts) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one [PASS]/[FAIL] line per criterion; exits with the "
               "number of failures."};
  std::string sampler_path, data_dir;
  app.add_option("--sampler", sampler_path, "Path to the sampler executable")->required();
  app.add_option("--data", data_dir, "Path to the golden data directory")->required();
  CLI11_PARSE(app, argc, argv);

  std::vector<RoutineModel> routine_models;
  std::vector<pm::model::PiecewiseModel> jump_models;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"flop-model exactness from both build strategies",
       [&] { return criterion1(sampler_path, routine_models); }},
      {"piecewise jump detection", [&] { return criterion2(jump_models); }},
      {"disjoint exhaustive region covers",
       [&] { return criterion3(routine_models, jump_models); }},
      {"trace predictions equal counted flops", [] { return criterion4(); }},
      {"synthetic-cost ranking matches direct simulation", [] { return criterion5(); }},
      {"sampler protocol golden run",
       [&] { return criterion6(sampler_path, data_dir); }},
      {"blocked algorithms are numerically correct", [] { return criterion7(); }},
      {"summary statistics match a sort-based oracle", [] { return criterion8(); }},
      {"real-timer modeling smoke test", [] { return criterion9(); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %zu: %s — %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
