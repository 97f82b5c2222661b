#include "thomform/polynomial.hpp"

#include <cmath>
#include <numeric>

namespace thomform {

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return b < a;
}

VariableNames default_variable_names(std::size_t dim) {
  VariableNames names;
  names.reserve(dim);
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string monomial_str(const Monomial& m, const VariableNames& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += " * ";
    out += names.at(i);
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

Polynomial Polynomial::constant(std::size_t dim, const Scalar& c) {
  Polynomial p(dim);
  p.add_term(Monomial(dim, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t index) {
  Polynomial p(dim);
  p.check_index(index);
  Monomial m(dim, 0);
  m[index - 1] = 1;
  p.add_term(m, Scalar(1));
  return p;
}

Polynomial Polynomial::monomial(std::size_t dim, Monomial exponents, const Scalar& c) {
  if (exponents.size() != dim) throw Error("monomial exponent vector has wrong length");
  Polynomial p(dim);
  p.add_term(exponents, c);
  return p;
}

void Polynomial::check_index(std::size_t index) const {
  if (index < 1 || index > dim_) {
    throw Error("variable index " + std::to_string(index) + " out of range 1.." +
                std::to_string(dim_));
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.size() != dim_) throw Error("monomial dimension mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.dim_ != dim_) throw Error("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.dim_ != dim_) throw Error("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw Error("polynomial dimension mismatch");
  Polynomial out(a.dim_);
  Monomial m(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::derive(std::size_t index) const {
  check_index(index);
  Polynomial out(dim_);
  for (const auto& [m, c] : terms_) {
    int e = m[index - 1];
    if (e == 0) continue;
    Monomial d = m;
    d[index - 1] = e - 1;
    out.add_term(d, c * Scalar(e));
  }
  return out;
}

Polynomial Polynomial::times_variable(std::size_t index, int power) const {
  check_index(index);
  Polynomial out(dim_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    d[index - 1] += power;
    if (d[index - 1] < 0) throw Error("negative exponent");
    out.add_term(d, c);
  }
  return out;
}

Polynomial Polynomial::substitute(std::size_t index, const Scalar& value) const {
  check_index(index);
  Polynomial out(dim_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    Scalar factor(1);
    for (int k = 0; k < m[index - 1]; ++k) factor *= value;
    d[index - 1] = 0;
    out.add_term(d, c * factor);
  }
  return out;
}

double Polynomial::eval(std::span<const double> point) const {
  if (point.size() != dim_) throw Error("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c.to_double();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (m[i] != 0) v *= std::pow(point[i], m[i]);
    }
    sum += v;
  }
  return sum;
}

std::string Polynomial::str(const VariableNames& names) const {
  if (names.size() < dim_) throw Error("not enough variable names");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_str(m, names);
    bool neg = false;
    std::string body;
    if (c.is_single_term()) {
      const auto& [key, r] = *c.terms().begin();
      neg = r < 0;
      Scalar mag = neg ? -c : c;
      bool unit = key == Scalar::Key{} && abs(r) == 1;
      if (mono.empty()) {
        body = mag.str();
      } else if (unit) {
        body = mono;
      } else {
        body = mag.str() + " * " + mono;
      }
    } else {
      body = "(" + c.str() + ")";
      if (!mono.empty()) body += " * " + mono;
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

}  // namespace thomform
