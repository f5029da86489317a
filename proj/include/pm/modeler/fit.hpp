#pragma once

#include <cstdint>
#include <vector>

#include "pm/model/polynomial.hpp"

namespace pm::modeler {

/// All exponent vectors of total degree <= degree in dim variables, in
/// lexicographic order.
std::vector<std::vector<int>> monomial_exponents(int dim, int degree);

/// Least-squares fit of a polynomial of total degree <= degree through
/// (points[i], values[i]). Coordinates are affinely rescaled to [-1,1] per
/// dimension for conditioning and the solution mapped back, so the returned
/// polynomial applies to the original coordinates. Rank-deficient systems
/// (few points, degenerate geometry) yield the minimum-norm solution.
pm::model::Polynomial fit_polynomial(const std::vector<std::vector<std::int64_t>>& points,
                                     const std::vector<double>& values, int degree);

/// max over checkpoints of |p(x) - v| / max(|v|, floor).
double fit_error(const pm::model::Polynomial& poly,
                 const std::vector<std::vector<std::int64_t>>& points,
                 const std::vector<double>& values, double floor);

}  // namespace pm::modeler
