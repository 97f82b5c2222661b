#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace thomform {

using Rational = mpq_class;
using Integer = mpz_class;

/// Error raised for violated preconditions anywhere in the library.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "a" or "a/b" in lowest terms.
std::string to_string(const Rational& r);

/// Accepts "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// 2^k for any integer k.
Rational power_of_two(int k);

Integer factorial(unsigned n);

/// (n-1)!! with the convention (-1)!! = 1.
Integer double_factorial_odd(unsigned n);

}  // namespace thomform
