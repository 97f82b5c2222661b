#pragma once

#include <vector>

#include "thomform/lie.hpp"

namespace thomform {

/// Physicists' Hermite polynomial H_n = (2x - d/dx)^n 1.
struct HermitePoly {
  int n = 0;
  std::vector<Integer> coeffs;  // coeffs[k] multiplies x^k

  double eval(double x) const;
  /// H_n(scale * x_index) as a polynomial in `dim` variables.
  Polynomial scaled(std::size_t dim, std::size_t index, const Scalar& scale) const;
};

HermitePoly hermite(int n);

/// exp(-pi sum_i x_i^2), the Gaussian of the majorant at the basepoint.
GaussExponent majorant_exponent(const SignatureCtx& ctx);

/// The Kudla-Millson form at the basepoint, obtained by applying the Howe
/// operator 2^{-q} prod_mu sum_alpha A(w[alpha,mu]) (x) (x_alpha - (1/2pi) d_alpha)
/// to the Gaussian.
SuperForm km_form_at_e(const SignatureCtx& ctx);

/// The same form from the Hermite-product expansion over tuples
/// (alpha_1..alpha_q).
SuperForm km_closed_form(const SignatureCtx& ctx);

/// Relative Lie-algebra differential sum_{alpha,mu} A(w[alpha,mu]) (x) X_{alpha mu}
/// acting on the coefficients through schwartz_action.
SuperForm relative_differential(const SignatureCtx& ctx, const SuperForm& a);

/// Total action of X in k: coadjoint action on the form plus Schwartz action
/// on the coefficients. Invariant forms map to zero.
SuperForm k_action(const LieElement& x, const SuperForm& a);

}  // namespace thomform
