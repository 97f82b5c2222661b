#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "generators.hpp"
#include "thomform/km.hpp"
#include "thomform/theta.hpp"
#include "theta_oracle.hpp"

using namespace thomform;

namespace {

LatticeSpec lattice(int p, int q, std::vector<std::vector<long>> g) {
  LatticeSpec spec;
  spec.label = "test";
  spec.p = p;
  spec.q = q;
  for (const auto& row : g) {
    std::vector<Rational> r;
    for (long v : row) r.emplace_back(v);
    spec.gram.push_back(r);
  }
  return spec;
}

void check_against_oracle(const LatticeSpec& spec, const oracle::Matrix& transform, std::complex<double> tau) {
  DiagonalizedLattice dl = diagonalize_gram(spec);
  for (int b = 0; b <= 6; ++b) {
    ThetaResult r = theta_partial_sum(dl, tau, b);
    auto oracle = oracle::brute_force(spec, transform, tau, b, 8);
    REQUIRE(r.coefficients.size() == oracle.size());
    for (const auto& [key, value] : oracle) {
      REQUIRE(r.coefficients.count(key) == 1);
      CHECK(std::abs(r.coefficients.at(key) - value) <= 1e-10);
    }
  }
}

}  // namespace

TEST_CASE("diagonalization examples") {
  DiagonalizedLattice hyp = diagonalize_gram(lattice(1, 1, {{0, 1}, {1, 0}}));
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(hyp.diag == std::vector<int>{1, -1});
  CHECK(hyp.basis[0][0] == doctest::Approx(r));
  CHECK(hyp.basis[0][1] == doctest::Approx(r));
  CHECK(hyp.basis[1][0] == doctest::Approx(r));
  CHECK(hyp.basis[1][1] == doctest::Approx(-r));

  DiagonalizedLattice id = diagonalize_gram(lattice(1, 1, {{1, 0}, {0, -1}}));
  CHECK(id.transform == oracle::Matrix{{1, 0}, {0, 1}});

  DiagonalizedLattice two = diagonalize_gram(lattice(1, 1, {{2, 0}, {0, -2}}));
  CHECK(two.basis[0][0] == doctest::Approx(r));
  CHECK(two.basis[1][1] == doctest::Approx(r));
  CHECK(two.transform[0][0] == doctest::Approx(std::numbers::sqrt2));
  CHECK(two.residual() <= 1e-12);
}

TEST_CASE("diagonalization of random lattices") {
  for (int k = 0; k < 40; ++k) {
    const int p = gen::small_int(1, 2), q = gen::small_int(1, 2), n = p + q;
    // G = A^T D A with A unimodular-ish upper triangular and D of signature (p,q)
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
      a[i][i] = gen::small_int(1, 2);
      for (int j = i + 1; j < n; ++j) a[i][j] = gen::small_int(-2, 2);
    }
    std::vector<long> d(n);
    for (int i = 0; i < n; ++i) d[i] = (i < p ? 1 : -1) * gen::small_int(1, 3);
    std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) g[i][j] += a[m][i] * d[m] * a[m][j];
    DiagonalizedLattice dl = diagonalize_gram(lattice(p, q, g));
    CHECK(dl.residual() <= 1e-10);
    for (int i = 0; i < n; ++i) CHECK(dl.diag[i] == (i < p ? 1 : -1));
  }
}

TEST_CASE("diagonalization errors") {
  CHECK_THROWS_AS(diagonalize_gram(lattice(1, 1, {{1, 1}, {1, 1}})), Error);
  CHECK_THROWS_AS(diagonalize_gram(lattice(2, 0, {{1, 0}, {0, -1}})), Error);
  CHECK_THROWS_AS(diagonalize_gram(lattice(1, 1, {{1, 2}, {0, -1}})), Error);
}

TEST_CASE("lattice json") {
  nlohmann::json j = nlohmann::json::parse(R"({"label":"h","p":1,"q":1,"gram":[["0","1/2"],[" 1/2",0]]})");
  LatticeSpec spec = LatticeSpec::from_json(j);
  CHECK(spec.gram[0][1] == Rational(1, 2));
  CHECK(LatticeSpec::from_json(spec.to_json()).gram == spec.gram);
  CHECK_THROWS_AS(LatticeSpec::from_json(nlohmann::json::parse(R"({"p":1})")), Error);
}

TEST_CASE("vector enumeration") {
  DiagonalizedLattice dl = diagonalize_gram(lattice(1, 1, {{1, 0}, {0, -1}}));
  CHECK(enumerate_vectors(dl, 0) == std::vector<std::vector<long>>{{0, 0}});
  auto five = enumerate_vectors(dl, 1);
  CHECK(five == std::vector<std::vector<long>>{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}});

  DiagonalizedLattice hyp = diagonalize_gram(lattice(2, 1, {{0, 1, 0}, {1, 0, 0}, {0, 0, 2}}));
  for (double bound : {1.0, 3.5, 7.0}) {
    auto vs = enumerate_vectors(hyp, bound);
    std::set<std::vector<long>> set(vs.begin(), vs.end());
    CHECK(set.size() == vs.size());
    CHECK(std::is_sorted(vs.begin(), vs.end()));
    for (auto v : vs) {
      for (long& c : v) c = -c;
      CHECK(set.count(v) == 1);
    }
    // exhaustive against a box search with the exact majorant
    std::size_t count = 0;
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b)
        for (long c = -6; c <= 6; ++c) {
          std::vector<long> v{a, b, c};
          Rational m = 0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m += hyp.majorant[i][j] * v[i] * v[j];
          if (m <= Rational(bound)) ++count;
        }
    CHECK(count == vs.size());
  }
}

TEST_CASE("theta partial sums match brute force") {
  const double r = 1.0 / std::numbers::sqrt2;
  check_against_oracle(lattice(1, 1, {{2, 0}, {0, -2}}), {{std::numbers::sqrt2, 0}, {0, std::numbers::sqrt2}},
                       {0.0, 1.0});
  check_against_oracle(lattice(1, 1, {{0, 1}, {1, 0}}), {{r, r}, {r, -r}}, {0.3, 0.7});
  check_against_oracle(lattice(1, 2, {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}),
                       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {-0.2, 0.9});
  check_against_oracle(lattice(1, 2, {{2, 0, 0}, {0, -1, 0}, {0, 0, -3}}),
                       {{std::numbers::sqrt2, 0, 0}, {0, 1, 0}, {0, 0, std::sqrt(3.0)}}, {0.1, 1.3});
}

TEST_CASE("theta at bound zero") {
  DiagonalizedLattice dl = diagonalize_gram(lattice(1, 1, {{1, 0}, {0, -1}}));
  ThetaResult r = theta_partial_sum(dl, {0.0, 1.0}, 0);
  CHECK(r.vectors == 1);
  REQUIRE(r.coefficients.size() == 1);
  CHECK(r.coefficients.begin()->first == "w[1,2]");
  CHECK(r.coefficients.begin()->second == std::complex<double>(0.0, 0.0));
  CHECK_THROWS_AS(theta_partial_sum(dl, {0.0, 0.0}, 1), Error);
}

TEST_CASE("theta keys follow the form") {
  for (const auto& spec : {lattice(2, 1, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}),
                           lattice(1, 2, {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}) {
    DiagonalizedLattice dl = diagonalize_gram(spec);
    SuperForm km = km_form_at_e(dl.ctx);
    std::set<std::string> keys;
    for (const auto& [k, c] : km.terms()) keys.insert(km.key_str(k));
    ThetaResult r = theta_partial_sum(dl, {0.0, 1.0}, 2);
    std::set<std::string> got;
    for (const auto& [k, v] : r.coefficients) got.insert(k);
    CHECK(got == keys);
  }
}

TEST_CASE("partial sums are Cauchy within the tail estimate") {
  for (const auto& spec : {lattice(1, 1, {{2, 1}, {1, -1}}), lattice(2, 1, {{2, 1, 0}, {1, 2, 0}, {0, 0, -2}}),
                           lattice(1, 2, {{2, 1, 0}, {1, -2, 0}, {0, 0, -1}})}) {
    DiagonalizedLattice dl = diagonalize_gram(spec);
    const std::complex<double> tau(0.15, 0.8);
    double previous_tail = INFINITY;
    for (int b = 0; b <= 8; ++b) {
      ThetaResult now = theta_partial_sum(dl, tau, b);
      ThetaResult next = theta_partial_sum(dl, tau, b + 1);
      CHECK(now.tail_estimate <= previous_tail);
      previous_tail = now.tail_estimate;
      for (const auto& [key, value] : now.coefficients) {
        CHECK(std::abs(next.coefficients.at(key) - value) <= now.tail_estimate);
      }
    }
  }
}

TEST_CASE("summing over negated vectors gives the same total") {
  LatticeSpec spec = lattice(1, 2, {{2, 1, 0}, {1, -2, 0}, {0, 0, -1}});
  DiagonalizedLattice dl = diagonalize_gram(spec);
  const std::complex<double> tau(0.25, 0.6);
  SuperForm km = km_form_at_e(dl.ctx);
  const TermKey key = km.terms().begin()->first;
  const Polynomial poly = km.terms().begin()->second.parts().begin()->second;
  const double y = tau.imag(), pi = std::numbers::pi;
  auto term = [&](std::vector<long> n) {
    std::vector<double> v = dl.orthonormal_coords(n);
    double qv = 0.0, z0 = 0.0;
    for (int i = 0; i < 3; ++i) {
      qv += dl.ctx.q_diag(i + 1) * v[i] * v[i];
      if (i >= 1) z0 -= v[i] * v[i];
    }
    for (double& x : v) x *= std::sqrt(y);
    return poly.eval(v) * std::exp(2 * pi * y * z0) * std::exp(std::complex<double>(0, pi) * tau * qv);
  };
  std::complex<double> plus = 0.0, minus = 0.0;
  for (auto n : enumerate_vectors(dl, 5)) {
    plus += term(n);
    for (long& c : n) c = -c;
    minus += term(n);
  }
  CHECK(std::abs(plus - minus) <= 1e-12);
  ThetaResult r = theta_partial_sum(dl, tau, 5);
  CHECK(std::abs(r.coefficients.at(km.key_str(key)) - plus) <= 1e-12);
}

TEST_CASE("complex parsing") {
  CHECK(parse_complex("1+2i") == std::complex<double>(1, 2));
  CHECK(parse_complex("-0.5-i") == std::complex<double>(-0.5, -1));
  CHECK(parse_complex("i") == std::complex<double>(0, 1));
  CHECK(parse_complex("3") == std::complex<double>(3, 0));
  CHECK(parse_complex("1e-3+2.5i") == std::complex<double>(1e-3, 2.5));
  CHECK_THROWS_AS(parse_complex("abc"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("phase convention constant") { CHECK(kThetaPhaseFactor == 1.0); }
