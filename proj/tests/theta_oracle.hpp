#pragma once

// Direct theta summation used as an oracle by the unit tests and the
// acceptance binary. It shares nothing with the library's enumeration: the
// orthonormalizing transform is supplied by hand and vectors come from a box.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "thomform/km.hpp"
#include "thomform/theta.hpp"

namespace oracle {

using namespace thomform;

using Matrix = std::vector<std::vector<double>>;

inline std::map<std::string, std::complex<double>> brute_force(const LatticeSpec& spec, const Matrix& transform,
                                                        std::complex<double> tau, double bound, int box) {
  SignatureCtx ctx(spec.p, spec.q);
  const int n = ctx.n();
  SuperForm km = km_closed_form(ctx);
  std::map<std::string, std::complex<double>> sums;
  for (const auto& [k, c] : km.terms()) sums[km.key_str(k)] = 0.0;
  const double y = tau.imag(), pi = std::numbers::pi;
  std::vector<long> vec(n, -box);
  while (true) {
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += transform[i][j] * vec[j];
    double plus = 0.0, qv = 0.0, z0 = 0.0;
    for (int i = 0; i < n; ++i) {
      plus += v[i] * v[i];
      qv += ctx.q_diag(i + 1) * v[i] * v[i];
      if (i >= spec.p) z0 -= v[i] * v[i];
    }
    if (plus <= bound + 1e-9) {
      std::vector<double> scaled(v);
      for (double& x : scaled) x *= std::sqrt(y);
      const std::complex<double> phase = std::exp(std::complex<double>(0, pi) * tau * qv);
      for (const auto& [k, c] : km.terms()) {
        // strip the Gaussian of the closed form to get the polynomial part
        const double poly = c.eval(scaled) * std::exp(pi * y * plus);
        sums[km.key_str(k)] += poly * std::exp(2 * pi * y * z0) * phase;
      }
    }
    int i = 0;
    while (i < n && vec[i] == box) vec[i++] = -box;
    if (i == n) break;
    ++vec[i];
  }
  return sums;
}

}  // namespace oracle
