#pragma once

// Fixed-seed random inputs for the property tests.

#include <random>
#include <vector>

#include "thomform/super_form.hpp"

namespace gen {

inline std::mt19937& rng() {
  static std::mt19937 engine(20241014u);
  return engine;
}

inline int small_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline thomform::Rational rational(int range = 5, int max_den = 4) {
  thomform::Rational r(small_int(-range, range), small_int(1, max_den));
  r.canonicalize();
  return r;
}

inline thomform::Scalar scalar(int max_terms = 3) {
  thomform::Scalar s;
  const int terms = small_int(0, max_terms);
  for (int k = 0; k < terms; ++k) {
    s += thomform::Scalar::monomial(rational(), small_int(-1, 1), small_int(-3, 3));
  }
  return s;
}

inline thomform::Polynomial polynomial(std::size_t dim, int max_deg = 3, int max_terms = 4) {
  thomform::Polynomial p(dim);
  const int terms = small_int(0, max_terms);
  for (int k = 0; k < terms; ++k) {
    thomform::Monomial m(dim, 0);
    int budget = small_int(0, max_deg);
    while (budget-- > 0) ++m[small_int(0, static_cast<int>(dim) - 1)];
    p.add_term(m, scalar(2));
  }
  return p;
}

inline thomform::GaussExponent gaussian(std::size_t dim) {
  std::vector<thomform::Rational> c(dim);
  for (auto& x : c) {
    x = thomform::Rational(small_int(0, 4), small_int(1, 2));
    x.canonicalize();
  }
  return thomform::GaussExponent(c);
}

inline thomform::PolyGauss polygauss(std::size_t dim, int max_parts = 2) {
  thomform::PolyGauss f(dim);
  const int parts = small_int(1, max_parts);
  for (int k = 0; k < parts; ++k) f.add_part(gaussian(dim), polynomial(dim));
  return f;
}

inline std::vector<double> point(std::size_t dim) {
  std::uniform_real_distribution<double> d(-1.2, 1.2);
  std::vector<double> v(dim);
  for (auto& x : v) x = d(rng());
  return v;
}

/// Random element with rational polynomial coefficients (no pi, so exact
/// comparisons stay cheap).
inline thomform::SuperForm form(const thomform::Layout& layout, int max_terms = 4) {
  thomform::SuperForm a(layout);
  const int terms = small_int(0, max_terms);
  const int nf = layout.num_forms();
  const int nz = layout.num_z0();
  for (int k = 0; k < terms; ++k) {
    thomform::TermKey key;
    key.forms = static_cast<std::uint64_t>(small_int(0, (1 << nf) - 1));
    key.z0 = static_cast<std::uint32_t>(small_int(0, (1 << nz) - 1));
    thomform::Polynomial c(layout.coeff_dim());
    thomform::Monomial m(layout.coeff_dim(), 0);
    if (!m.empty()) m[small_int(0, static_cast<int>(m.size()) - 1)] = small_int(0, 2);
    c.add_term(m, rational());
    a.add_term(key, thomform::PolyGauss(c));
  }
  return a;
}

}  // namespace gen

#include <doctest.h>

#include "thomform/lie.hpp"

namespace doctest {
template <>
struct StringMaker<thomform::Scalar> {
  static String convert(const thomform::Scalar& s) { return s.str().c_str(); }
};
template <>
struct StringMaker<thomform::Polynomial> {
  static String convert(const thomform::Polynomial& p) { return p.str().c_str(); }
};
template <>
struct StringMaker<thomform::PolyGauss> {
  static String convert(const thomform::PolyGauss& p) { return p.str().c_str(); }
};
template <>
struct StringMaker<thomform::SuperForm> {
  static String convert(const thomform::SuperForm& f) { return ("\n" + f.str()).c_str(); }
};
template <>
struct StringMaker<thomform::LieElement> {
  static String convert(const thomform::LieElement& x) { return x.str().c_str(); }
};
}  // namespace doctest
