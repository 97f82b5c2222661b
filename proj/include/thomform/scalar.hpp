#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "thomform/rational.hpp"

namespace thomform {

/// Exact element of Q[sqrt2^{±1}, sqrtpi^{±1}].
///
/// Stored as a map (sqrt2 exponent, sqrtpi exponent) -> rational. Even powers
/// of sqrt2 are folded into the rational, so the sqrt2 exponent is 0 or 1.
/// Powers of pi are never folded; pi is treated as transcendental. Zero
/// rationals are never stored, so equality is map equality.
class Scalar {
 public:
  struct Key {
    int sqrt2 = 0;
    int sqrt_pi = 0;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, Rational>;

  Scalar() = default;
  Scalar(const Rational& r);  // NOLINT(google-explicit-constructor)
  Scalar(long r);             // NOLINT(google-explicit-constructor)
  Scalar(int r) : Scalar(static_cast<long>(r)) {}  // NOLINT

  /// r * sqrt2^sqrt2_power * sqrtpi^sqrt_pi_power, any integer powers.
  static Scalar monomial(const Rational& r, int sqrt2_power, int sqrt_pi_power);
  static Scalar sqrt2(int power = 1) { return monomial(1, power, 0); }
  static Scalar sqrt_pi(int power = 1) { return monomial(1, 0, power); }
  static Scalar pi(int power = 1) { return monomial(1, 0, 2 * power); }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::optional<Rational> as_rational() const;
  bool is_single_term() const { return terms_.size() == 1; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Inverse of a single-term scalar.
  Scalar inverse() const;

  double to_double() const;

  /// Canonical text, e.g. "-1/4 * pi^-1" or "1/2 * sqrt2 * pi^(-1/2)".
  std::string str() const;
  static Scalar parse(std::string_view text);

 private:
  void add_term(const Key& k, const Rational& r);
  Terms terms_;
};

}  // namespace thomform
