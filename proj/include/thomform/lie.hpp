#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thomform/super_form.hpp"

namespace thomform {

/// Signature (p,q) with the orthogonal basis e_1..e_{p+q}, Q(e_a,e_a) = +1
/// for a <= p and -1 for a > p. Indices: alpha, beta in [1,p] and
/// mu, nu in [p+1,p+q].
struct SignatureCtx {
  int p = 1;
  int q = 1;

  SignatureCtx() = default;
  SignatureCtx(int p_, int q_);

  int n() const { return p + q; }
  int q_diag(int i) const { return i <= p ? 1 : -1; }
  Layout layout() const { return Layout::pstar(p, q); }
  std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
  friend bool operator==(const SignatureCtx&, const SignatureCtx&) = default;
};

/// Square rational matrix; M[row][col], column k is the image of e_{k+1}.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Element of so(p,q) in the basis X_ij (i < j), where X_ij e_i = Q_ii e_j
/// and X_ij e_j = -Q_jj e_i.
class LieElement {
 public:
  using Coords = std::map<std::pair<int, int>, Rational>;

  LieElement() = default;
  explicit LieElement(const SignatureCtx& ctx) : ctx_(ctx) {}
  /// X_ij; i > j gives -X_ji.
  static LieElement basis(const SignatureCtx& ctx, int i, int j);
  static LieElement from_matrix(const SignatureCtx& ctx, const RationalMatrix& m);

  const SignatureCtx& ctx() const { return ctx_; }
  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  Rational coefficient(int i, int j) const;
  void add(int i, int j, const Rational& c);

  bool in_k() const;
  bool in_p() const;

  RationalMatrix matrix() const;
  /// Image of the real vector v.
  std::vector<double> apply(const std::vector<double>& v) const;

  LieElement operator-() const;
  LieElement& operator+=(const LieElement& o);
  LieElement& operator*=(const Rational& r);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a += -b; }
  friend LieElement operator*(LieElement a, const Rational& r) { return a *= r; }
  friend LieElement operator*(const Rational& r, LieElement a) { return a *= r; }
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.ctx_ == b.ctx_ && a.coords_ == b.coords_;
  }

  /// "X[1,2] - 1/2 * X[2,3]"; "0" when empty.
  std::string str() const;
  std::string matrix_str() const;

 private:
  void check_ctx(const LieElement& o) const;
  SignatureCtx ctx_;
  Coords coords_;
};

/// Matrix commutator expressed back in the X_ij basis.
LieElement bracket(const LieElement& x, const LieElement& y);

/// Drops the p-coordinates X_{alpha mu}.
LieElement project_k(const LieElement& x);

/// The p-basis element dual to the bit index of w[alpha,mu].
LieElement p_basis(const SignatureCtx& ctx, int bit);

/// eta_alpha = sum_mu w[alpha,mu] (x) e[mu].
SuperForm eta(const SignatureCtx& ctx, int alpha);

/// rho(R_e) in Lambda^2 p* (x) Lambda^2 z0, from R(X,Y) = -theta([X,Y]) and
/// A -> sum_{i<j} <A e_i, e_j> e_i ^ e_j with <,> = -Q on z0.
SuperForm curvature_at_e(const SignatureCtx& ctx);

/// (X f)(v) = -(Xv) . grad f(v).
PolyGauss schwartz_action(const LieElement& x, const PolyGauss& f);

/// Derivation action of X in k on Lambda(p*) (x) Lambda(z0): -ad(X)^T on
/// the w generators and the matrix action on e[mu]. Coefficients untouched.
SuperForm coadjoint_action(const LieElement& x, const SuperForm& a);

}  // namespace thomform
