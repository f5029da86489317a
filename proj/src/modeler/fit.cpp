#include "pm/modeler/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

#include "pm/common.hpp"

namespace pm::modeler {

std::vector<std::vector<int>> monomial_exponents(int dim, int degree) {
  std::vector<std::vector<int>> exps;
  std::vector<int> current(static_cast<std::size_t>(dim), 0);
  std::function<void(int, int)> recurse = [&](int d, int remaining) {
    if (d == dim) {
      exps.push_back(current);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      current[static_cast<std::size_t>(d)] = e;
      recurse(d + 1, remaining - e);
    }
    current[static_cast<std::size_t>(d)] = 0;
  };
  recurse(0, degree);
  std::sort(exps.begin(), exps.end());
  return exps;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

pm::model::Polynomial fit_polynomial(const std::vector<std::vector<std::int64_t>>& points,
                                     const std::vector<double>& values, int degree) {
  if (points.size() != values.size())
    fail("fit: point/value count mismatch (", points.size(), " vs ", values.size(), ")");
  if (points.empty()) fail("fit: no sample points");
  const std::size_t dim = points[0].size();
  for (const auto& pt : points)
    if (pt.size() != dim) fail("fit: point dimension mismatch");

  // Rescale each coordinate to [-1, 1] for conditioning: t = a*x + b.
  std::vector<double> a(dim), b(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    std::int64_t mn = points[0][d], mx = points[0][d];
    for (const auto& pt : points) {
      mn = std::min(mn, pt[d]);
      mx = std::max(mx, pt[d]);
    }
    if (mx > mn) {
      a[d] = 2.0 / static_cast<double>(mx - mn);
      b[d] = -static_cast<double>(mx + mn) / static_cast<double>(mx - mn);
    } else {
      // Degenerate direction: the fit cannot depend on it.
      a[d] = 0.0;
      b[d] = 0.0;
    }
  }

  const auto exps = monomial_exponents(static_cast<int>(dim), degree);
  Eigen::MatrixXd V(static_cast<Eigen::Index>(points.size()),
                    static_cast<Eigen::Index>(exps.size()));
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t c = 0; c < exps.size(); ++c) {
      double term = 1.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double t = a[d] * static_cast<double>(points[r][d]) + b[d];
        for (int e = 0; e < exps[c][d]; ++e) term *= t;
      }
      V(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = term;
    }
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
  for (std::size_t r = 0; r < values.size(); ++r) y(static_cast<Eigen::Index>(r)) = values[r];

  // Minimum-norm least squares; rank deficiency (few points, degenerate
  // directions) resolves to the smallest-coefficient solution.
  Eigen::VectorXd c = V.completeOrthogonalDecomposition().solve(y);

  // Map coefficients back to original coordinates by expanding (a*x + b)^e.
  pm::model::Polynomial poly(dim, degree);
  std::vector<int> expanded(dim, 0);
  for (std::size_t ci = 0; ci < exps.size(); ++ci) {
    const double coeff = c(static_cast<Eigen::Index>(ci));
    if (coeff == 0.0) continue;
    std::function<void(std::size_t, double)> expand = [&](std::size_t d, double factor) {
      if (factor == 0.0) return;
      if (d == dim) {
        poly.add_term(expanded, factor);
        return;
      }
      const int e = exps[ci][d];
      for (int k = 0; k <= e; ++k) {
        expanded[d] = k;
        expand(d + 1, factor * binomial(e, k) * std::pow(a[d], k) * std::pow(b[d], e - k));
      }
      expanded[d] = 0;
    };
    expand(0, coeff);
  }
  return poly;
}

double fit_error(const pm::model::Polynomial& poly,
                 const std::vector<std::vector<std::int64_t>>& points,
                 const std::vector<double>& values, double floor) {
  if (points.size() != values.size()) fail("fit_error: point/value count mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double predicted = poly.evaluate(points[i]);
    const double denom = std::max(std::abs(values[i]), floor);
    worst = std::max(worst, std::abs(predicted - values[i]) / denom);
  }
  return worst;
}

}  // namespace pm::modeler
