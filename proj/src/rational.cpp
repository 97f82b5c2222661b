#include "thomform/rational.hpp"

#include <cctype>

namespace thomform {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string s(text);
  auto valid = !s.empty();
  std::size_t i = (valid && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  bool seen_digit = false, seen_slash = false;
  for (; valid && i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      seen_digit = true;
    } else if (s[i] == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
      seen_digit = false;
    } else {
      valid = false;
    }
  }
  if (!valid || !seen_digit) throw Error("not a rational number: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r(s);
  if (r.get_den() == 0) throw Error("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational power_of_two(int k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(1) / Rational(p);
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer double_factorial_odd(unsigned n) {
  Integer f = 1;
  for (long k = static_cast<long>(n) - 1; k > 1; k -= 2) f *= k;
  return f;
}

}  // namespace thomform
