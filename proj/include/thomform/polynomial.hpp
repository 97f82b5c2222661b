#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "thomform/scalar.hpp"

namespace thomform {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<int>;

/// Graded lexicographic order, largest first. This is the canonical
/// printing order of polynomial terms.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using VariableNames = std::vector<std::string>;

/// "x1", ..., "x<dim>".
VariableNames default_variable_names(std::size_t dim);

/// Sparse multivariate polynomial with Scalar coefficients. Variables are
/// addressed by 1-based index to match the coordinate conventions x_1..x_n.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLexGreater>;

  explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}
  static Polynomial constant(std::size_t dim, const Scalar& c);
  static Polynomial variable(std::size_t dim, std::size_t index);
  static Polynomial monomial(std::size_t dim, Monomial exponents, const Scalar& c);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  int degree() const;
  bool is_constant() const;

  void add_term(const Monomial& m, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Polynomial derive(std::size_t index) const;
  /// Multiplies by x_index^power.
  Polynomial times_variable(std::size_t index, int power = 1) const;
  /// Replaces x_index by value (exact).
  Polynomial substitute(std::size_t index, const Scalar& value) const;

  double eval(std::span<const double> point) const;

  std::string str(const VariableNames& names) const;
  std::string str() const { return str(default_variable_names(dim_)); }

 private:
  void check_index(std::size_t index) const;
  std::size_t dim_;
  Terms terms_;
};

/// Text of a single monomial such as "x1^2 * x3"; empty for the constant.
std::string monomial_str(const Monomial& m, const VariableNames& names);

}  // namespace thomform
