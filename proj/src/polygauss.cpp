#include "thomform/polygauss.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace thomform {

bool GaussExponent::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

GaussExponent GaussExponent::operator+(const GaussExponent& o) const {
  if (o.dim() != dim()) throw Error("Gaussian dimension mismatch");
  GaussExponent g(dim());
  for (std::size_t i = 0; i < dim(); ++i) g.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return g;
}

GaussExponent GaussExponent::operator-(const GaussExponent& o) const {
  if (o.dim() != dim()) throw Error("Gaussian dimension mismatch");
  GaussExponent g(dim());
  for (std::size_t i = 0; i < dim(); ++i) g.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return g;
}

bool operator<(const GaussExponent& a, const GaussExponent& b) {
  return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                                      b.coeffs_.end());
}

double GaussExponent::quadratic(std::span<const double> point) const {
  if (point.size() < dim()) throw Error("evaluation point has wrong dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coeffs_[i] != 0) s += to_double(coeffs_[i]) * point[i] * point[i];
  }
  return s;
}

std::string GaussExponent::str(const VariableNames& names, std::string_view scale) const {
  std::string inner;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    if (c < 0) {
      inner += "-";
    } else if (!inner.empty()) {
      inner += "+";
    }
    Rational mag = abs(c);
    if (mag != 1) inner += to_string(mag) + "*";
    inner += names.at(i) + "^2";
  }
  return "exp(-pi*" + std::string(scale) + "(" + inner + "))";
}

PolyGauss::PolyGauss(const Polynomial& p, const GaussExponent& g) : dim_(p.dim()) {
  if (g.dim() != dim_) throw Error("Gaussian dimension mismatch");
  add_part(g, p);
}

PolyGauss PolyGauss::constant(std::size_t dim, const Scalar& c) {
  return PolyGauss(Polynomial::constant(dim, c));
}

PolyGauss PolyGauss::gaussian(const GaussExponent& g) {
  return PolyGauss(Polynomial::constant(g.dim(), Scalar(1)), g);
}

PolyGauss PolyGauss::variable(std::size_t dim, std::size_t index) {
  return PolyGauss(Polynomial::variable(dim, index));
}

void PolyGauss::add_part(const GaussExponent& g, const Polynomial& p) {
  if (g.dim() != dim_ || p.dim() != dim_) throw Error("PolyGauss dimension mismatch");
  if (p.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(g, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

PolyGauss PolyGauss::operator-() const {
  PolyGauss out = *this;
  for (auto& [g, p] : out.parts_) p = -p;
  return out;
}

PolyGauss& PolyGauss::operator+=(const PolyGauss& o) {
  if (o.dim_ != dim_) throw Error("PolyGauss dimension mismatch");
  for (const auto& [g, p] : o.parts_) add_part(g, p);
  return *this;
}

PolyGauss& PolyGauss::operator-=(const PolyGauss& o) {
  if (o.dim_ != dim_) throw Error("PolyGauss dimension mismatch");
  for (const auto& [g, p] : o.parts_) add_part(g, -p);
  return *this;
}

PolyGauss& PolyGauss::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    parts_.clear();
    return *this;
  }
  for (auto& [g, p] : parts_) p *= s;
  return *this;
}

PolyGauss operator*(const PolyGauss& a, const PolyGauss& b) {
  if (a.dim_ != b.dim_) throw Error("PolyGauss dimension mismatch");
  PolyGauss out(a.dim_);
  for (const auto& [ga, pa] : a.parts_) {
    for (const auto& [gb, pb] : b.parts_) out.add_part(ga + gb, pa * pb);
  }
  return out;
}

PolyGauss PolyGauss::times(const Polynomial& p) const {
  if (p.dim() != dim_) throw Error("PolyGauss dimension mismatch");
  PolyGauss out(dim_);
  for (const auto& [g, q] : parts_) out.add_part(g, q * p);
  return out;
}

PolyGauss PolyGauss::times(const GaussExponent& h) const {
  PolyGauss out(dim_);
  for (const auto& [g, q] : parts_) out.add_part(g + h, q);
  return out;
}

double PolyGauss::eval(std::span<const double> point) const {
  if (point.size() != dim_) throw Error("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [g, p] : parts_) {
    sum += p.eval(point) * std::exp(-std::numbers::pi * g.quadratic(point));
  }
  return sum;
}

std::string PolyGauss::str(const VariableNames& names, std::string_view gauss_scale) const {
  if (parts_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, p] : parts_) {
    std::string body = p.str(names);
    bool single = p.terms().size() == 1;
    bool neg = single && body.front() == '-';
    if (neg) body.erase(0, 1);
    if (!g.is_zero()) {
      if (!single) body = "(" + body + ")";
      body = (body == "1" ? std::string() : body + " * ") + g.str(names, gauss_scale);
    } else if (!single && parts_.size() > 1) {
      body = "(" + body + ")";
    }
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += body;
    first = false;
  }
  return out;
}

PolyGauss polygauss_mul(const PolyGauss& a, const PolyGauss& b) { return a * b; }

PolyGauss polygauss_derive(const PolyGauss& a, std::size_t index) {
  if (index < 1 || index > a.dim()) {
    throw Error("derivative index " + std::to_string(index) + " out of range");
  }
  PolyGauss out(a.dim());
  for (const auto& [g, p] : a.parts()) {
    Polynomial d = p.derive(index);
    const Rational& c = g[index - 1];
    if (c != 0) d += p.times_variable(index) * Scalar::monomial(-2 * c, 0, 2);
    out.add_part(g, d);
  }
  return out;
}

PolyGauss howe_shift(const PolyGauss& a, std::size_t alpha) {
  if (alpha < 1 || alpha > a.dim()) {
    throw Error("Howe shift index " + std::to_string(alpha) + " out of range");
  }
  PolyGauss out = a.times(Polynomial::variable(a.dim(), alpha));
  out -= polygauss_derive(a, alpha) * Scalar::monomial(Rational(1, 2), 0, -2);
  return out;
}

namespace {

// Splits a positive integer into 2^k * odd.
std::pair<Integer, unsigned long> strip_twos(Integer v) {
  unsigned long k = mpz_scan1(v.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), k);
  return {v, k};
}

}  // namespace

Scalar gauss_moment(unsigned n, const Rational& c) {
  if (c <= 0) throw Error("gauss_moment requires a positive Gaussian coefficient");
  if (n % 2 == 1) return Scalar();
  auto [num_odd, num_twos] = strip_twos(c.get_num());
  auto [den_odd, den_twos] = strip_twos(c.get_den());
  if (!mpz_perfect_square_p(num_odd.get_mpz_t()) || !mpz_perfect_square_p(den_odd.get_mpz_t())) {
    throw Error("sqrt(" + to_string(c) +
                ") is not in the scalar ring; integrate this moment numerically");
  }
  Integer num_root, den_root;
  mpz_sqrt(num_root.get_mpz_t(), num_odd.get_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), den_odd.get_mpz_t());
  // c^{-1/2} = (den_root / num_root) * sqrt2^{den_twos - num_twos}
  Rational inv_root(den_root, num_root);
  inv_root.canonicalize();
  Rational two_c_pow = 1;
  for (unsigned k = 0; k < n / 2; ++k) two_c_pow *= 2 * c;
  Rational r = Rational(double_factorial_odd(n)) / two_c_pow * inv_root;
  return Scalar::monomial(r, static_cast<int>(den_twos) - static_cast<int>(num_twos),
                          -static_cast<int>(n));
}

PolyGauss remap_variables(const PolyGauss& a, std::size_t new_dim,
                          const std::vector<std::size_t>& target) {
  if (target.size() != a.dim()) throw Error("variable map has the wrong length");
  for (std::size_t t : target) {
    if (t < 1 || t > new_dim) throw Error("variable map points outside the target");
  }
  PolyGauss out(new_dim);
  for (const auto& [g, poly] : a.parts()) {
    std::vector<Rational> coeffs(new_dim);
    for (std::size_t i = 0; i < a.dim(); ++i) coeffs[target[i] - 1] += g[i];
    Polynomial p(new_dim);
    for (const auto& [m, c] : poly.terms()) {
      Monomial mm(new_dim, 0);
      for (std::size_t i = 0; i < a.dim(); ++i) mm[target[i] - 1] += m[i];
      p.add_term(mm, c);
    }
    out.add_part(GaussExponent(coeffs), p);
  }
  return out;
}

double polygauss_eval(const PolyGauss& a, std::span<const double> point) {
  return a.eval(point);
}

// ---------------------------------------------------------------------------
// Parser for the canonical text grammar:
//   expr    := ['-'] product (('+'|'-') product)*
//   product := factor ('*' factor)*
//   factor  := rational | 'sqrt2' | 'pi' ['^' piexp] | var ['^' int]
//            | 'exp' '(' '-' 'pi' '*' '(' quad ')' ')' | '(' expr ')'

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const VariableNames& names)
      : text_(text), names_(names) {}

  PolyGauss parse() {
    PolyGauss value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int small_signed_int() {
    bool neg = accept('-');
    Integer v = integer();
    if (!v.fits_sint_p()) fail("exponent too large");
    return neg ? -static_cast<int>(v.get_si()) : static_cast<int>(v.get_si());
  }

  Rational rational() {
    Integer num = integer();
    if (accept('/')) {
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    return Rational(num);
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t variable_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return 0;
    return static_cast<std::size_t>(it - names_.begin()) + 1;
  }

  std::size_t dim() const { return names_.size(); }

  PolyGauss expr() {
    bool neg = accept('-');
    PolyGauss value = product();
    if (neg) value = -value;
    for (;;) {
      if (accept('+')) {
        value += product();
      } else if (accept('-')) {
        value -= product();
      } else {
        return value;
      }
    }
  }

  PolyGauss product() {
    PolyGauss value = factor();
    while (accept('*')) value = value * factor();
    return value;
  }

  PolyGauss factor() {
    if (peek_digit()) return PolyGauss::constant(dim(), Scalar(rational()));
    if (accept('(')) {
      PolyGauss inner = expr();
      expect(')');
      return inner;
    }
    std::string id = identifier();
    if (id.empty()) fail("expected a factor");
    if (id == "sqrt2") return PolyGauss::constant(dim(), Scalar::sqrt2());
    if (id == "pi") {
      int sqrt_pi_power = 2;
      if (accept('^')) {
        if (accept('(')) {
          int k = small_signed_int();
          if (accept('/')) {
            if (integer() != 2) fail("pi exponent denominator must be 2");
            sqrt_pi_power = k;
          } else {
            sqrt_pi_power = 2 * k;
          }
          expect(')');
        } else {
          sqrt_pi_power = 2 * small_signed_int();
        }
      }
      return PolyGauss::constant(dim(), Scalar::sqrt_pi(sqrt_pi_power));
    }
    if (id == "exp") return gaussian();
    std::size_t index = variable_index(id);
    if (index == 0) fail("unknown identifier '" + id + "'");
    int power = 1;
    if (accept('^')) power = small_signed_int();
    if (power < 0) fail("negative variable exponent");
    Monomial m(dim(), 0);
    m[index - 1] = power;
    return PolyGauss(Polynomial::monomial(dim(), m, Scalar(1)));
  }

  PolyGauss gaussian() {
    expect('(');
    expect('-');
    if (identifier() != "pi") fail("expected 'pi' in Gaussian");
    expect('*');
    expect('(');
    std::vector<Rational> coeffs(dim());
    bool first = true;
    for (;;) {
      bool neg = false;
      if (accept('-')) {
        neg = true;
      } else if (!first && !accept('+')) {
        break;
      }
      Rational c = 1;
      if (peek_digit()) {
        c = rational();
        expect('*');
      }
      std::size_t index = variable_index(identifier());
      if (index == 0) fail("unknown Gaussian variable");
      expect('^');
      if (integer() != 2) fail("Gaussian exponent must be 2");
      coeffs[index - 1] += neg ? -c : c;
      first = false;
    }
    expect(')');
    expect(')');
    return PolyGauss::gaussian(GaussExponent(coeffs));
  }

  std::string_view text_;
  const VariableNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyGauss PolyGauss::parse(std::string_view text, const VariableNames& names) {
  return ExpressionParser(text, names).parse();
}

Scalar parse_scalar_expression(std::string_view text) {
  VariableNames none;
  PolyGauss v = ExpressionParser(text, none).parse();
  if (v.is_zero()) return Scalar();
  if (v.parts().size() != 1) throw Error("not a scalar: '" + std::string(text) + "'");
  const Polynomial& p = v.parts().begin()->second;
  return p.terms().begin()->second;
}

Polynomial parse_polynomial(std::string_view text, const VariableNames& names) {
  PolyGauss v = PolyGauss::parse(text, names);
  if (v.is_zero()) return Polynomial(names.size());
  if (v.parts().size() != 1 || !v.parts().begin()->first.is_zero()) {
    throw Error("not a polynomial: '" + std::string(text) + "'");
  }
  return v.parts().begin()->second;
}

}  // namespace thomform
