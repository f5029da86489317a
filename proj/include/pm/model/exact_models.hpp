#pragma once

#include <cstdint>
#include <vector>

#include "pm/model/model.hpp"

namespace pm::model {

/// Builds a single-region "flops" model whose evaluation reproduces the
/// analytic flop count of the routine for unit scalar arguments — the
/// oracle backend for prediction tests.
///
/// The domain is [1, size_hi) in every size dimension. `combos` selects the
/// discrete combinations to include; empty means every combination in the
/// signature's Cartesian product. The dgetrf_unb model covers the m >= n
/// branch (panel shapes), which is the shape every blocked factorization
/// trace produces.
RoutineModel exact_flops_model(const std::string& routine, std::int64_t size_hi,
                               std::vector<std::vector<char>> combos = {});

}  // namespace pm::model
