#include "thomform/mq.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace thomform {

Scalar mq_prefactor(int q) {
  int sign = (q * (q + 1) / 2) % 2 == 0 ? 1 : -1;
  return Scalar::monomial(sign, -q, -q);
}

SuperForm mq_phi0_at_e(const SignatureCtx& ctx) {
  Layout layout = ctx.layout();
  const std::size_t dim = layout.coeff_dim();
  const Scalar two_sqrt_pi = Scalar::monomial(2, 0, 1);

  Polynomial negative_part(dim);
  for (int mu = ctx.p + 1; mu <= ctx.n(); ++mu) {
    negative_part += Polynomial::variable(dim, mu).times_variable(mu) * Scalar::monomial(-2, 0, 2);
  }
  SuperForm exponent = SuperForm::scalar(layout, PolyGauss(negative_part));
  for (int alpha = 1; alpha <= ctx.p; ++alpha) {
    exponent += eta(ctx, alpha).times(PolyGauss::variable(dim, alpha)) * two_sqrt_pi;
  }
  exponent += curvature_at_e(ctx);
  return berezin(exp_even(exponent)) * mq_prefactor(ctx.q);
}

SuperForm mq_phi_at_e(const SignatureCtx& ctx) {
  std::vector<Rational> q_diag;
  for (int i = 1; i <= ctx.n(); ++i) q_diag.emplace_back(ctx.q_diag(i));
  return mq_phi0_at_e(ctx).times(PolyGauss::gaussian(GaussExponent(q_diag)));
}

FiberForm fiber_section(const Layout& layout) {
  FiberForm s(layout);
  for (int i = 1; i <= layout.q; ++i) {
    s += FiberForm::z0(layout, i).times(PolyGauss::variable(layout.coeff_dim(), i));
  }
  return s;
}

FiberForm fiber_section_differential(const Layout& layout) {
  FiberForm ds(layout);
  for (int i = 1; i <= layout.q; ++i) {
    ds += wedge(FiberForm::form_generator(layout, i - 1), FiberForm::z0(layout, i));
  }
  return ds;
}

FiberForm fiber_section_norm2(const Layout& layout) {
  const std::size_t dim = layout.coeff_dim();
  Polynomial norm(dim);
  for (int i = 1; i <= layout.q; ++i) norm += Polynomial::variable(dim, i).times_variable(i);
  return FiberForm::scalar(layout, PolyGauss(norm));
}

FiberForm fiber_umq(int q) {
  Layout layout = Layout::fiber(q);
  FiberForm exponent = fiber_section_norm2(layout) * Scalar::monomial(-2, 0, 2) -
                       fiber_section_differential(layout) * Scalar::monomial(2, 0, 1);
  return berezin(exp_even(exponent)) * mq_prefactor(q);
}

FiberForm euler_contraction(const FiberForm& a) {
  const Layout& layout = a.layout();
  if (layout.kind != FormLayout::kFiber) throw Error("Euler contraction needs a fiber form");
  const std::size_t dim = layout.coeff_dim();
  FiberForm out(layout);
  for (const auto& [k, c] : a.terms()) {
    int position = 0;
    for (int b = 0; b < layout.q; ++b) {
      if (!(k.forms >> b & 1)) continue;
      ++position;
      PolyGauss term = c.times(Polynomial::variable(dim, static_cast<std::size_t>(b) + 1));
      out.add_term(TermKey{k.forms & ~(std::uint64_t{1} << b), k.z0},
                   position % 2 == 1 ? term : -term);
    }
  }
  return out;
}

FiberForm fiber_transgression(int q) { return euler_contraction(fiber_umq(q)); }

namespace {

void require_fiber(const FiberForm& a) {
  if (a.layout().kind != FormLayout::kFiber) throw Error("expected a fiber form");
}

}  // namespace

FiberForm fiber_scale_pullback(const FiberForm& a, const Rational& t) {
  require_fiber(a);
  if (t <= 0) throw Error("scaling parameter t must be positive");
  if (a.layout().symbolic_t) throw Error("form is already symbolic in t");
  const std::size_t dim = a.layout().coeff_dim();
  FiberForm out(a.layout());
  for (const auto& [k, c] : a.terms()) {
    PolyGauss scaled(dim);
    for (const auto& [g, poly] : c.parts()) {
      std::vector<Rational> coeffs = g.coeffs();
      for (auto& ci : coeffs) ci *= t * t;
      Polynomial p(dim);
      for (const auto& [m, s] : poly.terms()) {
        int degree = 0;
        for (int e : m) degree += e;
        Rational factor = 1;
        for (int i = 0; i < degree; ++i) factor *= t;
        p.add_term(m, s * Scalar(factor));
      }
      scaled.add_part(GaussExponent(coeffs), p);
    }
    Rational form_factor = 1;
    for (int i = 0; i < k.form_degree(); ++i) form_factor *= t;
    out.add_term(k, scaled * Scalar(form_factor));
  }
  return out;
}

FiberForm fiber_scale_pullback_symbolic(const FiberForm& a) {
  require_fiber(a);
  if (a.layout().symbolic_t) throw Error("form is already symbolic in t");
  Layout target = Layout::fiber(a.layout().q, true);
  const std::size_t dim = target.coeff_dim();
  FiberForm out(target);
  for (const auto& [k, c] : a.terms()) {
    PolyGauss scaled(dim);
    for (const auto& [g, poly] : c.parts()) {
      std::vector<Rational> coeffs = g.coeffs();
      coeffs.emplace_back(0);
      Polynomial p(dim);
      for (const auto& [m, s] : poly.terms()) {
        Monomial mt = m;
        int degree = 0;
        for (int e : m) degree += e;
        mt.push_back(degree + k.form_degree());
        p.add_term(mt, s);
      }
      scaled.add_part(GaussExponent(coeffs), p);
    }
    out.add_term(k, scaled);
  }
  return out;
}

PolyGauss fiber_partial(const Layout& layout, const PolyGauss& f, std::size_t index) {
  if (!layout.symbolic_t) return polygauss_derive(f, index);
  const std::size_t dim = layout.coeff_dim();
  if (index < 1 || index >= dim) throw Error("fiber derivative index out of range");
  // d/dx_i exp(-pi c t^2 x_i^2) = -2 pi c t^2 x_i exp(...)
  PolyGauss out(dim);
  for (const auto& [g, poly] : f.parts()) {
    Polynomial d = poly.derive(index);
    if (g[index - 1] != 0) {
      d += poly.times_variable(index).times_variable(dim, 2) *
           Scalar::monomial(-2 * g[index - 1], 0, 2);
    }
    out.add_part(g, d);
  }
  return out;
}

PolyGauss fiber_partial_t(const Layout& layout, const PolyGauss& f) {
  if (!layout.symbolic_t) throw Error("t-derivative needs a symbolic-t form");
  const std::size_t dim = layout.coeff_dim();
  // d/dt exp(-pi t^2 sum c_i x_i^2) = -2 pi t sum c_i x_i^2 exp(...)
  PolyGauss out(dim);
  for (const auto& [g, poly] : f.parts()) {
    Polynomial d = poly.derive(dim);
    Polynomial quad(dim);
    for (std::size_t i = 1; i < dim; ++i) {
      if (g[i - 1] != 0) {
        quad += Polynomial::variable(dim, i).times_variable(i) * Scalar(g[i - 1]);
      }
    }
    d += poly * quad.times_variable(dim) * Scalar::monomial(-2, 0, 2);
    out.add_part(g, d);
  }
  return out;
}

FiberForm fiber_exterior_derivative(const FiberForm& a) {
  require_fiber(a);
  const Layout& layout = a.layout();
  FiberForm out(layout);
  for (int i = 1; i <= layout.q; ++i) {
    FiberForm di = a.map_coefficients(
        [&](const PolyGauss& f) { return fiber_partial(layout, f, static_cast<std::size_t>(i)); });
    out += wedge(FiberForm::form_generator(layout, i - 1), di);
  }
  return out;
}

FiberForm fiber_t_derivative(const FiberForm& a) {
  require_fiber(a);
  const Layout& layout = a.layout();
  return a.map_coefficients([&](const PolyGauss& f) { return fiber_partial_t(layout, f); });
}

FiberForm fiber_times_t(const FiberForm& a) {
  require_fiber(a);
  if (!a.layout().symbolic_t) throw Error("multiplication by t needs a symbolic-t form");
  const std::size_t dim = a.layout().coeff_dim();
  return a.times(PolyGauss::variable(dim, dim));
}

Scalar fiber_integrate(const FiberForm& a) {
  require_fiber(a);
  const Layout& layout = a.layout();
  if (layout.symbolic_t) throw Error("fix t before integrating along the fiber");
  const std::uint64_t top = (std::uint64_t{1} << layout.q) - 1;
  Scalar total;
  for (const auto& [k, c] : a.terms()) {
    if (k.forms != top || k.z0 != 0) continue;
    for (const auto& [g, poly] : c.parts()) {
      for (const auto& [m, s] : poly.terms()) {
        Scalar value = s;
        for (int i = 0; i < layout.q && !value.is_zero(); ++i) {
          value = value * gauss_moment(static_cast<unsigned>(m[i]), g[i]);
        }
        total += value;
      }
    }
  }
  return total;
}

double fiber_integrate_numeric(const FiberForm& a) {
  require_fiber(a);
  const Layout& layout = a.layout();
  if (layout.symbolic_t) throw Error("fix t before integrating along the fiber");
  const std::uint64_t top = (std::uint64_t{1} << layout.q) - 1;
  double total = 0.0;
  for (const auto& [k, c] : a.terms()) {
    if (k.forms != top || k.z0 != 0) continue;
    for (const auto& [g, poly] : c.parts()) {
      for (const auto& [m, s] : poly.terms()) {
        double value = s.to_double();
        for (int i = 0; i < layout.q; ++i) {
          double ci = to_double(g[i]);
          if (ci <= 0) throw Error("fiber integrand is not rapidly decreasing");
          unsigned n = static_cast<unsigned>(m[i]);
          if (n % 2 == 1) {
            value = 0.0;
            break;
          }
          value *= double_factorial_odd(n).get_d() /
                   std::pow(2.0 * ci * std::numbers::pi, 0.5 * n) / std::sqrt(ci);
        }
        total += value;
      }
    }
  }
  return total;
}

}  // namespace thomform
