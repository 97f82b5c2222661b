#include <doctest.h>

#include "generators.hpp"
#include "thomform/km.hpp"
#include "thomform/lie.hpp"

using namespace thomform;

namespace {

int total_degree(const SuperForm& a) {
  // only called on homogeneous single terms
  const TermKey& k = a.terms().begin()->first;
  return k.form_degree() + k.z0_degree();
}

SuperForm one(const Layout& l) { return SuperForm::scalar(l, Scalar(1)); }

SuperForm coeff_var(const Layout& l, std::size_t i) {
  return SuperForm::scalar(l, PolyGauss::variable(l.coeff_dim(), i));
}

/// Random single term of even total degree, never of bidegree (0,0).
SuperForm even_nilpotent(const Layout& l) {
  SuperForm a(l);
  for (int tries = 0; tries < 3; ++tries) {
    TermKey key;
    do {
      key.forms = static_cast<std::uint64_t>(gen::small_int(0, (1 << l.num_forms()) - 1));
      key.z0 = static_cast<std::uint32_t>(gen::small_int(0, (1 << l.num_z0()) - 1));
    } while ((key.form_degree() + key.z0_degree()) % 2 != 0 ||
             key.form_degree() + key.z0_degree() == 0);
    Polynomial c = gen::polynomial(l.coeff_dim(), 2, 2);
    if (!c.is_zero()) a.add_term(key, PolyGauss(c));
  }
  return a;
}

}  // namespace

TEST_CASE("layout indexing") {
  Layout l = Layout::pstar(2, 3);
  CHECK(l.num_forms() == 6);
  CHECK(l.pstar_bit(1, 3) == 0);
  CHECK(l.pstar_bit(2, 5) == 5);
  CHECK(l.pstar_pair(4) == std::pair{2, 4});
  CHECK(l.form_name(l.pstar_bit(2, 4)) == "w[2,4]");
  CHECK(l.z0_bit(4) == 1);
  CHECK(l.z0_name(2) == "e[5]");
  Layout f = Layout::fiber(2, true);
  CHECK(f.coeff_dim() == 3);
  CHECK(f.variable_names().back() == "t");
  CHECK(f.form_name(1) == "dx[2]");
}

TEST_CASE("canonical term order") {
  Layout l = Layout::pstar(1, 2);
  SuperForm a = SuperForm::omega(l, 1, 3) + SuperForm::omega(l, 1, 2) + one(l) +
                wedge(SuperForm::omega(l, 1, 2), SuperForm::omega(l, 1, 3));
  std::vector<std::string> keys;
  for (const auto& [k, c] : a.terms()) keys.push_back(a.key_str(k));
  CHECK(keys == std::vector<std::string>{"", "w[1,2]", "w[1,3]", "w[1,2]^w[1,3]"});
  CHECK(SuperForm(l).str() == "0");
}

TEST_CASE("wedge examples") {
  Layout l = Layout::pstar(1, 2);
  SuperForm w12 = SuperForm::omega(l, 1, 2);
  SuperForm w13 = SuperForm::omega(l, 1, 3);
  SuperForm e2 = SuperForm::z0(l, 2);
  SuperForm e3 = SuperForm::z0(l, 3);
  CHECK(wedge(w12, w12).is_zero());
  // (w (x) e) ^ (w' (x) e') = -(w^w') (x) (e^e')
  CHECK(wedge(wedge(w12, e2), wedge(w13, e3)) == -wedge(wedge(w12, w13), wedge(e2, e3)));
  SuperForm eta = wedge(w12, e2) + wedge(w13, e3);
  CHECK(eta == thomform::eta(SignatureCtx(1, 2), 1));
  SuperForm expected = Scalar(-2) * wedge(wedge(w12, w13), wedge(e2, e3));
  CHECK(wedge(eta, eta) == expected);
  CHECK(wedge_power(eta, 2) == expected);
  CHECK(wedge_power(eta, 3).is_zero());
  CHECK(wedge_power(eta, 0) == one(l));
}

TEST_CASE("reorder sign") {
  CHECK(reorder_sign(0b001, 0b110) == 1);
  CHECK(reorder_sign(0b010, 0b001) == -1);
  CHECK(reorder_sign(0b110, 0b001) == 1);
  CHECK(reorder_sign(0b100, 0b011) == 1);
  CHECK(reorder_sign(0b101, 0b010) == -1);
}

TEST_CASE("wedge is associative and unital") {
  for (Layout l : {Layout::pstar(2, 2), Layout::fiber(3), Layout::pstar(1, 3)}) {
    for (int k = 0; k < 60; ++k) {
      SuperForm a = gen::form(l), b = gen::form(l), c = gen::form(l);
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
      CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
      CHECK(wedge(one(l), a) == a);
      CHECK(wedge(a, one(l)) == a);
    }
  }
}

TEST_CASE("even elements commute") {
  Layout l = Layout::pstar(2, 2);
  for (int k = 0; k < 60; ++k) {
    SuperForm a = even_nilpotent(l), b = gen::form(l);
    CHECK(wedge(a, b) == wedge(b, a));
  }
}

TEST_CASE("graded commutativity of single terms") {
  Layout l = Layout::pstar(2, 2);
  for (int k = 0; k < 100; ++k) {
    SuperForm a = gen::form(l, 1), b = gen::form(l, 1);
    if (a.is_zero() || b.is_zero()) continue;
    const int sign = (total_degree(a) * total_degree(b)) % 2 == 0 ? 1 : -1;
    CHECK(wedge(a, b) == Scalar(sign) * wedge(b, a));
  }
}

TEST_CASE("berezin integral") {
  Layout l = Layout::pstar(1, 2);
  SuperForm top = wedge(SuperForm::z0(l, 2), SuperForm::z0(l, 3));
  CHECK(berezin(top) == one(l));
  CHECK(berezin(SuperForm::z0(l, 2)).is_zero());
  CHECK(berezin(wedge(SuperForm::omega(l, 1, 2), SuperForm::z0(l, 3))).is_zero());
  SuperForm eta = thomform::eta(SignatureCtx(1, 2), 1);
  CHECK(berezin(wedge(eta, eta)) ==
        Scalar(-2) * wedge(SuperForm::omega(l, 1, 2), SuperForm::omega(l, 1, 3)));
  // integrating against a top z0 element from the right
  for (int k = 0; k < 50; ++k) {
    SuperForm a = gen::form(l).component(1, 0) + gen::form(l).component(0, 0);
    CHECK(berezin(wedge(a, top)) == a);
  }
}

TEST_CASE("contraction examples") {
  Layout l = Layout::pstar(1, 2);
  SuperForm e2 = SuperForm::z0(l, 2);
  SuperForm e3 = SuperForm::z0(l, 3);
  SuperForm w = SuperForm::omega(l, 1, 2);
  CHECK(contract(e2, e2) == one(l));
  CHECK(contract(e2, w).is_zero());
  CHECK(contract(e2, wedge(w, wedge(e2, e3))) == -wedge(w, e3));
  CHECK(contract(e3, wedge(e2, e3)) == -e2);
}

TEST_CASE("contraction is an odd derivation") {
  for (Layout l : {Layout::pstar(1, 3), Layout::pstar(2, 2), Layout::fiber(3)}) {
    const std::size_t dim = l.coeff_dim();
    for (int k = 0; k < 60; ++k) {
      SuperForm s(l);
      for (int mu = 1; mu <= l.q; ++mu) {
        const int index = l.kind == FormLayout::kPstar ? l.p + mu : mu;
        s += SuperForm::z0(l, index).times(PolyGauss(gen::polynomial(dim, 1, 2)));
      }
      SuperForm a = gen::form(l, 1), b = gen::form(l);
      if (a.is_zero()) continue;
      const int sign = total_degree(a) % 2 == 0 ? 1 : -1;
      CHECK(contract(s, wedge(a, b)) ==
            wedge(contract(s, a), b) + Scalar(sign) * wedge(a, contract(s, b)));
      CHECK(contract(s, contract(s, b)).is_zero());
    }
  }
}

TEST_CASE("exp of even elements") {
  Layout l = Layout::pstar(1, 2);
  CHECK(exp_even(SuperForm(l)) == one(l));
  SuperForm a = wedge(SuperForm::omega(l, 1, 2), SuperForm::z0(l, 2));
  CHECK(exp_even(a) == one(l) + a);

  // exp(-pi x1^2) as the (0,0) part
  SuperForm g = SuperForm::scalar(
      l, PolyGauss(Polynomial::monomial(3, {2, 0, 0}, Scalar::pi(1) * Scalar(-1))));
  CHECK(exp_even(g) == SuperForm::scalar(l, PolyGauss::gaussian(GaussExponent(std::vector<Rational>{1, 0, 0}))));
  CHECK_THROWS_AS(exp_even(coeff_var(l, 1)), Error);
}

TEST_CASE("exp generates Hermite polynomials") {
  // exp(2 x eta - eta^2) = sum_n H_n(x) eta^n / n!
  SignatureCtx ctx(1, 3);
  Layout l = ctx.layout();
  SuperForm eta = thomform::eta(ctx, 1);
  SuperForm x = coeff_var(l, 1);
  SuperForm arg = Scalar(2) * wedge(x, eta) - wedge(eta, eta);
  SuperForm expected(l);
  for (int n = 0; n <= 3; ++n) {
    Polynomial h = hermite(n).scaled(l.coeff_dim(), 1, Scalar(1));
    expected += wedge_power(eta, n).times(PolyGauss(h)) * Scalar(Rational(Integer(1), factorial(n)));
  }
  CHECK(exp_even(arg) == expected);
}

TEST_CASE("exp of a sum is the product of exps") {
  Layout l = Layout::pstar(2, 2);
  for (int k = 0; k < 40; ++k) {
    SuperForm a = even_nilpotent(l), b = even_nilpotent(l);
    if (k % 2 == 0) {
      a += SuperForm::scalar(
          l, PolyGauss(Polynomial::monomial(4, {0, 2, 0, 0}, Scalar::pi(1) * Scalar(-2))));
    }
    CHECK(exp_even(a + b) == wedge(exp_even(a), exp_even(b)));
  }
}

TEST_CASE("json output") {
  Layout l = Layout::pstar(1, 1);
  SuperForm a = wedge(SuperForm::omega(l, 1, 2), SuperForm::z0(l, 2)) * Scalar(Rational(1, 2));
  nlohmann::json j = a.to_json();
  CHECK(j["schema"] == "thomform/1");
  CHECK(j["layout"] == "pstar");
  CHECK(j["terms"][0]["w"] == nlohmann::json::parse("[[1,2]]"));
  CHECK(j["terms"][0]["e"] == nlohmann::json::parse("[2]"));
  CHECK(j["terms"][0]["coeff"] == "1/2");
}
