#pragma once

#include <optional>

#include "thomform/lie.hpp"

namespace thomform {

/// (-1)^{q(q+1)/2} (2 pi)^{-q/2}, the Mathai-Quillen prefactor.
Scalar mq_prefactor(int q);

/// phi^0 at the basepoint: prefactor * Berezin of
/// exp(-2 pi sum_mu x_mu^2 + 2 sqrt(pi) sum_alpha x_alpha eta_alpha + rho(R_e)).
SuperForm mq_phi0_at_e(const SignatureCtx& ctx);

/// e^{-pi Q(v,v)} phi^0.
SuperForm mq_phi_at_e(const SignatureCtx& ctx);

// ---------------------------------------------------------------------------
// Fiber-level forms. A FiberForm is a SuperForm with a kFiber layout: form
// generators dx_1..dx_q, z0 generators e_1..e_q, coefficients in x_1..x_q
// (plus t when the layout is symbolic in t).

using FiberForm = SuperForm;

/// Tautological section s = sum_i x_i e_i.
FiberForm fiber_section(const Layout& layout);
/// ds = sum_i dx_i (x) e_i.
FiberForm fiber_section_differential(const Layout& layout);
/// |s|^2 = sum_i x_i^2 as a (0,0) element.
FiberForm fiber_section_norm2(const Layout& layout);

/// U_MQ restricted to a fiber, derived as
/// prefactor * Berezin exp(-2 pi |s|^2 - 2 sqrt(pi) ds).
FiberForm fiber_umq(int q);

/// psi = iota_X U_MQ with X the Euler field sum x_i d/dx_i.
FiberForm fiber_transgression(int q);

/// Interior product with the Euler field, termwise:
/// iota_X (f dx_I) = sum_j (-1)^{j-1} x_{i_j} f dx_{I minus i_j}.
FiberForm euler_contraction(const FiberForm& a);

/// Pullback under x -> t x for a positive rational t.
FiberForm fiber_scale_pullback(const FiberForm& a, const Rational& t);
/// Pullback under x -> t x with t kept symbolic; the result has a
/// symbolic-t layout.
FiberForm fiber_scale_pullback_symbolic(const FiberForm& a);

/// Partial derivatives honoring the symbolic-t Gaussian convention.
PolyGauss fiber_partial(const Layout& layout, const PolyGauss& f, std::size_t index);
PolyGauss fiber_partial_t(const Layout& layout, const PolyGauss& f);

/// d = sum_i dx_i ^ d/dx_i, acting on the form factor.
FiberForm fiber_exterior_derivative(const FiberForm& a);
/// Termwise d/dt on a symbolic-t form.
FiberForm fiber_t_derivative(const FiberForm& a);
/// Multiplies every coefficient by the variable t of a symbolic layout.
FiberForm fiber_times_t(const FiberForm& a);

/// Exact integral of the top fiber-degree component (z0-degree 0).
/// Throws when a Gaussian coefficient has no exact square root in the ring.
Scalar fiber_integrate(const FiberForm& a);
/// Floating-point integral of the same component; used when the exact path
/// is unavailable.
double fiber_integrate_numeric(const FiberForm& a);

}  // namespace thomform
