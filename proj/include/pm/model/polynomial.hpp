#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace pm::model {

/// Sparse multivariate polynomial over integer-valued size coordinates.
///
/// Terms map an exponent vector (one entry per dimension) to its real
/// coefficient; exponent vectors are kept in lexicographic order by the
/// underlying map, which fixes the serialization order. Zero-coefficient
/// terms are never stored. `degree` is the declared total-degree bound.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t dim, int degree);

  static Polynomial constant(std::size_t dim, double value, int degree = 0);

  /// Inserts/overwrites one term; a zero coefficient removes the term.
  /// Throws pm::error if the exponent vector has the wrong length or its
  /// total degree exceeds the declared bound.
  void set_term(const std::vector<int>& exponents, double coefficient);

  /// Adds to an existing coefficient (creating the term when absent).
  void add_term(const std::vector<int>& exponents, double coefficient);

  double coefficient(const std::vector<int>& exponents) const;

  double evaluate(const std::vector<double>& x) const;
  double evaluate(const std::vector<std::int64_t>& x) const;

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, double>& terms() const { return terms_; }

  bool operator==(const Polynomial& other) const {
    return dim_ == other.dim_ && terms_ == other.terms_;
  }

 private:
  std::size_t dim_ = 0;
  int degree_ = 0;
  std::map<std::vector<int>, double> terms_;
};

}  // namespace pm::model
