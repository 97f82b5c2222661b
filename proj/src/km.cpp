#include "thomform/km.hpp"

namespace thomform {

double HermitePoly::eval(double x) const {
  double v = 0.0;
  for (auto k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k].get_d();
  return v;
}

Polynomial HermitePoly::scaled(std::size_t dim, std::size_t index, const Scalar& scale) const {
  Polynomial out(dim);
  Scalar power(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0) {
      Monomial m(dim, 0);
      m[index - 1] = static_cast<int>(k);
      out.add_term(m, Scalar(Rational(coeffs[k])) * power);
    }
    power *= scale;
  }
  return out;
}

HermitePoly hermite(int n) {
  if (n < 0) throw Error("Hermite degree must be nonnegative");
  std::vector<Integer> h{1};
  for (int step = 0; step < n; ++step) {
    std::vector<Integer> next(h.size() + 1);
    for (std::size_t k = 0; k < h.size(); ++k) {
      next[k + 1] += 2 * h[k];
      if (k > 0) next[k - 1] -= Integer(static_cast<unsigned long>(k)) * h[k];
    }
    h = std::move(next);
  }
  return HermitePoly{n, std::move(h)};
}

GaussExponent majorant_exponent(const SignatureCtx& ctx) {
  return GaussExponent(std::vector<Rational>(static_cast<std::size_t>(ctx.n()), Rational(1)));
}

SuperForm km_form_at_e(const SignatureCtx& ctx) {
  Layout layout = ctx.layout();
  SuperForm cur = SuperForm::scalar(layout, PolyGauss::gaussian(majorant_exponent(ctx)));
  // Outermost factor is mu = p+1, so it is applied last and ends up leftmost.
  for (int mu = ctx.n(); mu > ctx.p; --mu) {
    SuperForm next(layout);
    for (int alpha = 1; alpha <= ctx.p; ++alpha) {
      SuperForm shifted =
          cur.map_coefficients([alpha](const PolyGauss& f) { return howe_shift(f, alpha); });
      next += wedge(SuperForm::omega(layout, alpha, mu), shifted);
    }
    cur = std::move(next);
  }
  return cur * Scalar(power_of_two(-ctx.q));
}

SuperForm km_closed_form(const SignatureCtx& ctx) {
  Layout layout = ctx.layout();
  const std::size_t dim = layout.coeff_dim();
  const Scalar sqrt_2pi = Scalar::monomial(1, 1, 1);
  PolyGauss gauss = PolyGauss::gaussian(majorant_exponent(ctx));
  std::vector<HermitePoly> hermites;
  for (int n = 0; n <= ctx.q; ++n) hermites.push_back(hermite(n));

  SuperForm out(layout);
  std::vector<int> tuple(static_cast<std::size_t>(ctx.q), 1);
  for (;;) {
    std::vector<int> multiplicity(static_cast<std::size_t>(ctx.p) + 1, 0);
    SuperForm basis = SuperForm::scalar(layout, Scalar(1));
    for (int k = 0; k < ctx.q; ++k) {
      ++multiplicity[tuple[k]];
      basis = wedge(basis, SuperForm::omega(layout, tuple[k], ctx.p + 1 + k));
    }
    Polynomial poly = Polynomial::constant(dim, Scalar(1));
    for (int alpha = 1; alpha <= ctx.p; ++alpha) {
      poly = poly * hermites[multiplicity[alpha]].scaled(dim, alpha, sqrt_2pi);
    }
    out += basis.times(PolyGauss(poly, gauss.parts().begin()->first));

    int k = ctx.q - 1;
    while (k >= 0 && tuple[k] == ctx.p) tuple[k--] = 1;
    if (k < 0) break;
    ++tuple[k];
  }
  // 2^{-q} (2 pi)^{-q/2}
  return out * Scalar::monomial(power_of_two(-ctx.q), -ctx.q, -ctx.q);
}

SuperForm relative_differential(const SignatureCtx& ctx, const SuperForm& a) {
  Layout layout = ctx.layout();
  if (!(a.layout() == layout)) throw Error("form does not belong to this signature");
  SuperForm out(layout);
  for (int g = 0; g < layout.num_forms(); ++g) {
    LieElement x = p_basis(ctx, g);
    SuperForm acted =
        a.map_coefficients([&x](const PolyGauss& f) { return schwartz_action(x, f); });
    out += wedge(SuperForm::form_generator(layout, g), acted);
  }
  return out;
}

SuperForm k_action(const LieElement& x, const SuperForm& a) {
  return coadjoint_action(x, a) +
         a.map_coefficients([&x](const PolyGauss& f) { return schwartz_action(x, f); });
}

}  // namespace thomform
