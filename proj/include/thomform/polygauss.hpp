#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thomform/polynomial.hpp"

namespace thomform {

/// Diagonal Gaussian exp(-pi * sum_i c_i x_i^2) with rational c_i.
class GaussExponent {
 public:
  explicit GaussExponent(std::size_t dim = 0) : coeffs_(dim) {}
  explicit GaussExponent(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t dim() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;

  GaussExponent operator+(const GaussExponent& o) const;
  GaussExponent operator-(const GaussExponent& o) const;
  friend bool operator==(const GaussExponent& a, const GaussExponent& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const GaussExponent& a, const GaussExponent& b);

  /// sum_i c_i x_i^2
  double quadratic(std::span<const double> point) const;

  /// "exp(-pi*(x1^2+2*x2^2))"; `scale` is inserted before the bracket,
  /// e.g. "t^2*".
  std::string str(const VariableNames& names, std::string_view scale = {}) const;

 private:
  std::vector<Rational> coeffs_;
};

/// Finite sum of polynomial x diagonal Gaussian terms over x_1..x_dim.
class PolyGauss {
 public:
  using Parts = std::map<GaussExponent, Polynomial>;

  explicit PolyGauss(std::size_t dim = 0) : dim_(dim) {}
  PolyGauss(const Polynomial& p, const GaussExponent& g);
  explicit PolyGauss(const Polynomial& p) : PolyGauss(p, GaussExponent(p.dim())) {}

  static PolyGauss constant(std::size_t dim, const Scalar& c);
  static PolyGauss gaussian(const GaussExponent& g);
  static PolyGauss variable(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return parts_.empty(); }
  const Parts& parts() const { return parts_; }
  void add_part(const GaussExponent& g, const Polynomial& p);

  PolyGauss operator-() const;
  PolyGauss& operator+=(const PolyGauss& o);
  PolyGauss& operator-=(const PolyGauss& o);
  PolyGauss& operator*=(const Scalar& s);
  friend PolyGauss operator+(PolyGauss a, const PolyGauss& b) { return a += b; }
  friend PolyGauss operator-(PolyGauss a, const PolyGauss& b) { return a -= b; }
  friend PolyGauss operator*(const PolyGauss& a, const PolyGauss& b);
  friend PolyGauss operator*(PolyGauss a, const Scalar& s) { return a *= s; }
  friend PolyGauss operator*(const Scalar& s, PolyGauss a) { return a *= s; }
  friend bool operator==(const PolyGauss& a, const PolyGauss& b) {
    return a.dim_ == b.dim_ && a.parts_ == b.parts_;
  }

  PolyGauss times(const Polynomial& p) const;
  PolyGauss times(const GaussExponent& g) const;

  double eval(std::span<const double> point) const;

  /// `gauss_scale` is forwarded to GaussExponent::str.
  std::string str(const VariableNames& names, std::string_view gauss_scale = {}) const;
  std::string str() const { return str(default_variable_names(dim_)); }
  static PolyGauss parse(std::string_view text, const VariableNames& names);
  static PolyGauss parse(std::string_view text, std::size_t dim) {
    return parse(text, default_variable_names(dim));
  }

 private:
  std::size_t dim_;
  Parts parts_;
};

/// Exact product; Gaussian exponents add, polynomials multiply.
PolyGauss polygauss_mul(const PolyGauss& a, const PolyGauss& b);

/// Partial derivative in x_index (1-based).
PolyGauss polygauss_derive(const PolyGauss& a, std::size_t index);

/// (x_alpha - (1/2pi) d/dx_alpha) applied to a.
PolyGauss howe_shift(const PolyGauss& a, std::size_t alpha);

/// Exact value of the integral of x^n exp(-c pi x^2) over the real line.
/// Requires sqrt(c) to lie in the scalar ring (c = r^2 2^k); otherwise throws
/// and the caller should integrate numerically.
Scalar gauss_moment(unsigned n, const Rational& c);

/// Embeds a into `new_dim` variables, old x_{i+1} becoming x_{target[i]}.
PolyGauss remap_variables(const PolyGauss& a, std::size_t new_dim,
                          const std::vector<std::size_t>& target);

double polygauss_eval(const PolyGauss& a, std::span<const double> point);

/// Parses a scalar-ring expression (no variables) in the canonical grammar.
Scalar parse_scalar_expression(std::string_view text);
/// Parses a polynomial (no exp factors).
Polynomial parse_polynomial(std::string_view text, const VariableNames& names);

}  // namespace thomform
