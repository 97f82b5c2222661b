#include "thomform/scalar.hpp"

#include <cmath>
#include <numbers>

#include "thomform/polygauss.hpp"

namespace thomform {

namespace {

int floor_div2(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

// |r| * sqrt2^k.sqrt2 * sqrtpi^k.sqrt_pi without sign.
std::string magnitude_str(const Scalar::Key& k, const Rational& r) {
  Rational mag = abs(r);
  std::string out;
  auto append = [&out](const std::string& f) {
    if (!out.empty()) out += " * ";
    out += f;
  };
  bool bare = k.sqrt2 == 0 && k.sqrt_pi == 0;
  if (mag != 1 || bare) append(to_string(mag));
  if (k.sqrt2 != 0) append("sqrt2");
  if (k.sqrt_pi != 0) {
    if (k.sqrt_pi % 2 == 0) {
      int m = k.sqrt_pi / 2;
      append(m == 1 ? std::string("pi") : "pi^" + std::to_string(m));
    } else {
      append("pi^(" + std::to_string(k.sqrt_pi) + "/2)");
    }
  }
  return out;
}

}  // namespace

Scalar::Scalar(const Rational& r) {
  if (r != 0) terms_.emplace(Key{}, r);
}

Scalar::Scalar(long r) : Scalar(Rational(r)) {}

Scalar Scalar::monomial(const Rational& r, int sqrt2_power, int sqrt_pi_power) {
  Scalar s;
  if (r == 0) return s;
  int folded = floor_div2(sqrt2_power);
  Rational value = r * power_of_two(folded);
  s.terms_.emplace(Key{sqrt2_power - 2 * folded, sqrt_pi_power}, value);
  return s;
}

std::optional<Rational> Scalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first == Key{}) return terms_.begin()->second;
  return std::nullopt;
}

void Scalar::add_term(const Key& k, const Rational& r) {
  if (r == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, r);
  if (!inserted) {
    it->second += r;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& [k, r] : s.terms_) r = -r;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [k, r] : o.terms_) add_term(k, r);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [k, r] : o.terms_) add_term(k, -r);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ka, ra] : a.terms_) {
    for (const auto& [kb, rb] : b.terms_) {
      int s2 = ka.sqrt2 + kb.sqrt2;
      Rational r = ra * rb;
      if (s2 == 2) {
        r *= 2;
        s2 = 0;
      }
      out.add_term(Scalar::Key{s2, ka.sqrt_pi + kb.sqrt_pi}, r);
    }
  }
  return out;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (terms_.size() != 1) throw Error("only single-term scalars are invertible: " + str());
  const auto& [k, r] = *terms_.begin();
  return monomial(Rational(1) / r, -k.sqrt2, -k.sqrt_pi);
}

double Scalar::to_double() const {
  double sum = 0.0;
  for (const auto& [k, r] : terms_) {
    sum += thomform::to_double(r) * std::pow(std::numbers::sqrt2, k.sqrt2) *
           std::pow(std::numbers::pi, 0.5 * k.sqrt_pi);
  }
  return sum;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, r] : terms_) {
    bool neg = r < 0;
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += magnitude_str(k, r);
    first = false;
  }
  return out;
}

Scalar Scalar::parse(std::string_view text) { return parse_scalar_expression(text); }

}  // namespace thomform
