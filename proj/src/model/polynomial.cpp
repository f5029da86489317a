#include "pm/model/polynomial.hpp"

#include <numeric>

#include "pm/common.hpp"

namespace pm::model {

Polynomial::Polynomial(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0) fail("polynomial degree bound must be non-negative");
}

Polynomial Polynomial::constant(std::size_t dim, double value, int degree) {
  Polynomial p(dim, degree);
  p.set_term(std::vector<int>(dim, 0), value);
  return p;
}

void Polynomial::set_term(const std::vector<int>& exponents, double coefficient) {
  if (exponents.size() != dim_)
    fail("exponent vector of length ", exponents.size(), " in ", dim_,
         "-dimensional polynomial");
  int total = 0;
  for (int e : exponents) {
    if (e < 0) fail("negative exponent in polynomial term");
    total += e;
  }
  if (total > degree_)
    fail("term of total degree ", total, " exceeds bound ", degree_);
  if (coefficient == 0.0)
    terms_.erase(exponents);
  else
    terms_[exponents] = coefficient;
}

void Polynomial::add_term(const std::vector<int>& exponents, double coefficient) {
  auto it = terms_.find(exponents);
  double updated = (it == terms_.end() ? 0.0 : it->second) + coefficient;
  set_term(exponents, updated);
}

double Polynomial::coefficient(const std::vector<int>& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  if (x.size() != dim_)
    fail("evaluating ", dim_, "-dimensional polynomial at a point of dimension ",
         x.size());
  double total = 0.0;
  for (const auto& [exps, coeff] : terms_) {
    double term = coeff;
    for (std::size_t d = 0; d < dim_; ++d)
      for (int e = 0; e < exps[d]; ++e) term *= x[d];
    total += term;
  }
  return total;
}

double Polynomial::evaluate(const std::vector<std::int64_t>& x) const {
  std::vector<double> xd(x.begin(), x.end());
  return evaluate(xd);
}

}  // namespace pm::model
