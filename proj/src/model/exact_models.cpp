#include "pm/model/exact_models.hpp"

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::model {

namespace {

/// flop polynomial of one routine for one discrete combination, with all
/// scalar arguments fixed to 1 (the traces' alpha = ±1 costs the same)
Polynomial flop_polynomial(const std::string& routine, const std::vector<char>& combo,
                           std::size_t dim) {
  Polynomial p(dim, 3);
  if (routine == "dgemm") {
    // dims (m, n, k): 2mnk regardless of the transpose codes
    p.set_term({1, 1, 1}, 2.0);
  } else if (routine == "dtrsm" || routine == "dtrmm") {
    // dims (m, n); work is other * T^2 (non-unit) or other * T(T-1) (unit,
    // and dtrsm always skips the diagonal multiply but adds T divisions)
    char side = combo.at(0);
    char diag = combo.at(3);
    bool left = side == 'L';
    std::vector<int> cubic = left ? std::vector<int>{2, 1} : std::vector<int>{1, 2};
    std::vector<int> quad = {1, 1};
    p.set_term(cubic, 1.0);
    if (diag == 'U') p.set_term(quad, -1.0);
  } else if (routine == "dtrinv_unb") {
    char diag = combo.at(0);
    if (diag == 'N') {
      // (n^3 + 2n)/3
      p.set_term({3}, 1.0 / 3.0);
      p.set_term({1}, 2.0 / 3.0);
    } else {
      // n(n-1)(n-2)/3
      p.set_term({3}, 1.0 / 3.0);
      p.set_term({2}, -1.0);
      p.set_term({1}, 2.0 / 3.0);
    }
  } else if (routine == "dgetrf_unb") {
    // dims (m, n), m >= n branch: m n^2 - n^3/3 - n^2/2 - n/6
    p.set_term({1, 2}, 1.0);
    p.set_term({0, 3}, -1.0 / 3.0);
    p.set_term({0, 2}, -1.0 / 2.0);
    p.set_term({0, 1}, -1.0 / 6.0);
  } else if (routine == "dsylv_unb") {
    // dims (m, n): mn(m + n)
    p.set_term({2, 1}, 1.0);
    p.set_term({1, 2}, 1.0);
  } else {
    fail("no flop polynomial for routine '", routine, "'");
  }
  return p;
}

void all_combos(const pm::kernels::RoutineSignature& sig,
                std::vector<std::vector<char>>& out) {
  std::vector<const pm::kernels::ArgKind*> discrete;
  for (const auto& [name, kind] : sig.args)
    if (kind.tag == pm::kernels::ArgKind::Tag::Discrete) discrete.push_back(&kind);
  std::vector<char> current;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == discrete.size()) {
      out.push_back(current);
      return;
    }
    for (char c : discrete[i]->allowed) {
      current.push_back(c);
      self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
}

}  // namespace

RoutineModel exact_flops_model(const std::string& routine, std::int64_t size_hi,
                               std::vector<std::vector<char>> combos) {
  const auto& sig = pm::kernels::lookup_signature(routine);
  RoutineModel model;
  model.routine = routine;
  model.size_args = sig.size_arg_names();
  model.degree = 3;
  model.ld_policy = "tight";
  for (const auto& [name, kind] : sig.args)
    if (kind.tag == pm::kernels::ArgKind::Tag::Scalar) model.fixed.emplace_back(name, "1");

  if (combos.empty()) all_combos(sig, combos);

  const std::size_t dim = model.size_args.size();
  const std::vector<std::string> stats = {"min", "median", "avg", "max"};
  for (const std::vector<char>& combo : combos) {
    PiecewiseModel pw;
    pw.counters = {"flops"};
    pw.statistics = stats;
    for (std::size_t d = 0; d < dim; ++d) pw.domain.iv.push_back({1, size_hi});
    Region region;
    region.bounds = pw.domain;
    Polynomial p = flop_polynomial(routine, combo, dim);
    for (const std::string& s : stats) region.polys.emplace(std::make_pair("flops", s), p);
    pw.regions.push_back(std::move(region));
    model.combos.emplace_back(combo, std::move(pw));
  }
  return model;
}

}  // namespace pm::model
