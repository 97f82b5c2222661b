#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "thomform/polygauss.hpp"

namespace thomform {

enum class FormLayout {
  kPstar,  // generators w[a,m] of p*, z0 indices p+1..p+q
  kFiber,  // generators dx[i] of a rank-q fiber, z0 indices 1..q
};

/// Shape of a bigraded algebra Lambda(A) (x) Lambda(z0).
///
/// For kPstar the first factor is p* with basis w[a,m] ordered
/// lexicographically in (a, m) and coefficients live in x_1..x_{p+q}.
/// For kFiber the first factor is the fiber coframe dx_1..dx_q and
/// coefficients live in x_1..x_q, plus a trailing variable t when
/// symbolic_t is set (Gaussians are then read at t*x).
struct Layout {
  FormLayout kind = FormLayout::kPstar;
  int p = 1;
  int q = 1;
  bool symbolic_t = false;

  static Layout pstar(int p, int q);
  static Layout fiber(int q, bool symbolic_t = false);

  int num_forms() const { return kind == FormLayout::kPstar ? p * q : q; }
  int num_z0() const { return q; }
  std::size_t coeff_dim() const;
  VariableNames variable_names() const;
  std::string gauss_scale() const { return symbolic_t ? "t^2*" : ""; }

  /// Bit index of w[alpha,mu] (1-based, alpha <= p < mu).
  int pstar_bit(int alpha, int mu) const;
  /// Inverse of pstar_bit.
  std::pair<int, int> pstar_pair(int bit) const;
  /// Bit index of e[mu]; mu is p+1..p+q for kPstar and 1..q for kFiber.
  int z0_bit(int mu) const;
  int z0_index(int bit) const;

  std::string form_name(int bit) const;
  std::string z0_name(int bit) const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Basis element (wedge of form generators) (x) (wedge of z0 generators),
/// each as a bitmask with generators in increasing bit order.
struct TermKey {
  std::uint64_t forms = 0;
  std::uint32_t z0 = 0;

  int form_degree() const;
  int z0_degree() const;
  friend bool operator==(const TermKey&, const TermKey&) = default;
};

/// Canonical order: by form degree, then lexicographic on the sorted
/// generator lists, then the same for the z0 part.
struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const;
};

class SuperForm {
 public:
  using Terms = std::map<TermKey, PolyGauss, TermKeyLess>;

  SuperForm() = default;
  explicit SuperForm(const Layout& layout) : layout_(layout) {}

  static SuperForm scalar(const Layout& layout, const PolyGauss& c);
  static SuperForm scalar(const Layout& layout, const Scalar& c);
  static SuperForm term(const Layout& layout, TermKey key, const PolyGauss& c);
  /// Single form generator by bit index.
  static SuperForm form_generator(const Layout& layout, int bit);
  /// w[alpha,mu] for kPstar layouts.
  static SuperForm omega(const Layout& layout, int alpha, int mu);
  /// e[mu] with the layout's z0 indexing.
  static SuperForm z0(const Layout& layout, int mu);

  const Layout& layout() const { return layout_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(TermKey key, const PolyGauss& c);

  /// Bidegree (i,j) component.
  SuperForm component(int form_degree, int z0_degree) const;
  /// The coefficient of `key`, zero if absent.
  PolyGauss coefficient(TermKey key) const;

  SuperForm operator-() const;
  SuperForm& operator+=(const SuperForm& o);
  SuperForm& operator-=(const SuperForm& o);
  SuperForm& operator*=(const Scalar& s);
  friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }
  friend SuperForm operator-(SuperForm a, const SuperForm& b) { return a -= b; }
  friend SuperForm operator*(SuperForm a, const Scalar& s) { return a *= s; }
  friend SuperForm operator*(const Scalar& s, SuperForm a) { return a *= s; }
  friend bool operator==(const SuperForm& a, const SuperForm& b) {
    return a.layout_ == b.layout_ && a.terms_ == b.terms_;
  }

  /// Multiplies every coefficient by f.
  SuperForm times(const PolyGauss& f) const;
  /// Applies fn to every coefficient.
  template <class Fn>
  SuperForm map_coefficients(Fn&& fn) const {
    SuperForm out(layout_);
    for (const auto& [k, c] : terms_) out.add_term(k, fn(c));
    return out;
  }

  /// One term per line, "<coeff> w[1,2]^w[1,3] e[2]^e[3]"; "0" when empty.
  std::string str() const;
  std::string key_str(TermKey key) const;
  nlohmann::json to_json() const;

 private:
  void check_layout(const SuperForm& o) const;
  Layout layout_;
  Terms terms_;
};

/// Parity of the permutation sorting the concatenation A,B of two disjoint
/// increasing index sets: (-1)^{#(a in A, b in B, a > b)}.
int reorder_sign(std::uint64_t a, std::uint64_t b);

/// Bigraded product with (w (x) s) ^ (n (x) t) = (-1)^{|s||n|} (w^n) (x) (s^t).
SuperForm wedge(const SuperForm& a, const SuperForm& b);
/// a^n with a^0 = 1.
SuperForm wedge_power(const SuperForm& a, int n);

/// Projection onto the top z0 component e_first^...^e_last, with the z0
/// factor stripped.
SuperForm berezin(const SuperForm& a);

/// i(s) with s of bidegree (0,1). On w (x) e_J with deg w = i, removing the
/// l-th element of J carries the sign (-1)^{i+l-1}. Coefficients of s may be
/// arbitrary PolyGauss functions; i(s) = sum_k s_k i(e_k).
SuperForm contract(const SuperForm& s, const SuperForm& a);

/// Exponential of an even element. The (0,0) part must be a polynomial made
/// of x_i^2 monomials with coefficients -pi * c_i (c_i rational); it becomes
/// the Gaussian exp(-pi sum c_i x_i^2). The rest is nilpotent and summed as
/// a finite series.
SuperForm exp_even(const SuperForm& a);

}  // namespace thomform
