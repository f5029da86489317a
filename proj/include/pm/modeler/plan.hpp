#pragma once

#include <cstdint>
#include <vector>

#include "pm/model/model.hpp"

namespace pm::modeler {

/// The integer lattice points a region is sampled at: a fit set the
/// polynomial is regressed on and a disjoint check set the fit error is
/// measured on (check points coincide with fit points only when the region
/// has too few lattice points).
struct SamplePlan {
  std::vector<std::vector<std::int64_t>> fit;
  std::vector<std::vector<std::int64_t>> check;
};

/// Number of monomials of total degree <= degree in dim variables:
/// C(dim + degree, degree).
std::int64_t monomial_count(int dim, int degree);

/// Element `index` of the base-`base` Halton sequence, in (0, 1).
double halton(std::int64_t index, int base);

/// Deterministic sample layout for one region: all corners, the center,
/// per-dimension edge midpoints, then quasi-random fill until the fit set
/// has at least twice the monomial count; the check set holds dim+2 further
/// quasi-random points disjoint from the fit set.
SamplePlan plan_samples(const pm::model::Box& bounds, int degree);

}  // namespace pm::modeler
