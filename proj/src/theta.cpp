#include "thomform/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thomform/km.hpp"

namespace thomform {

namespace {

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error("gram entries must be integers or rational strings");
}

RationalMatrix invert(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rational quadratic(const RationalMatrix& g, const std::vector<long>& n) {
  Rational s = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (n[j] != 0) s += g[i][j] * n[i] * n[j];
    }
  }
  return s;
}

}  // namespace

LatticeSpec LatticeSpec::from_json(const nlohmann::json& j) {
  LatticeSpec spec;
  try {
    spec.label = j.value("label", std::string());
    spec.p = j.at("p").get<int>();
    spec.q = j.at("q").get<int>();
    for (const auto& row : j.at("gram")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_json(v));
      spec.gram.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed lattice spec: ") + e.what());
  }
  const std::size_t n = spec.gram.size();
  if (spec.p < 1 || spec.q < 1 || n != static_cast<std::size_t>(spec.p + spec.q)) {
    throw Error("gram size must equal p+q with p,q >= 1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.gram[i].size() != n) throw Error("gram matrix must be square");
    for (std::size_t k = 0; k < i; ++k) {
      if (spec.gram[i][k] != spec.gram[k][i]) throw Error("gram matrix must be symmetric");
    }
  }
  return spec;
}

nlohmann::json LatticeSpec::to_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& row : gram) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    g.push_back(r);
  }
  return {{"label", label}, {"p", p}, {"q", q}, {"gram", g}};
}

DiagonalizedLattice diagonalize_gram(const LatticeSpec& spec) {
  const std::size_t n = spec.gram.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.gram[i].size() != n) throw Error("gram matrix must be square");
    for (std::size_t j = 0; j < i; ++j)
      if (spec.gram[i][j] != spec.gram[j][i]) throw Error("gram matrix must be symmetric");
  }
  // rows of b are the current basis vectors; a = b G b^T
  RationalMatrix b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
  RationalMatrix a = spec.gram;
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][i] == 0) continue;
      if (piv == n || abs(a[i][i]) > abs(a[piv][piv])) piv = i;
    }
    if (piv == n) {
      // all remaining diagonal entries vanish: b_i += b_j on the first nonzero a_ij
      std::size_t fi = n, fj = n;
      for (std::size_t i = 0; i < n && fi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!done[j] && a[i][j] != 0) {
            fi = i;
            fj = j;
            break;
          }
        }
      }
      if (fi == n) throw Error("gram matrix is degenerate");
      for (std::size_t k = 0; k < n; ++k) b[fi][k] += b[fj][k];
      for (std::size_t k = 0; k < n; ++k) a[fi][k] += a[fj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][fi] += a[k][fj];
      piv = fi;
    }
    done[piv] = true;
    order.push_back(piv);
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || a[j][piv] == 0) continue;
      Rational f = a[j][piv] / a[piv][piv];
      for (std::size_t k = 0; k < n; ++k) b[j][k] -= f * b[piv][k];
      for (std::size_t k = 0; k < n; ++k) a[j][k] -= f * a[piv][k];
      for (std::size_t k = 0; k < n; ++k) a[k][j] -= f * a[k][piv];
    }
  }

  // positives first, each group in pivot order
  std::vector<std::size_t> sorted;
  for (std::size_t i : order)
    if (a[i][i] > 0) sorted.push_back(i);
  const int pos = static_cast<int>(sorted.size());
  for (std::size_t i : order)
    if (a[i][i] < 0) sorted.push_back(i);
  if (pos != spec.p || static_cast<int>(n) - pos != spec.q) {
    throw Error("gram has signature (" + std::to_string(pos) + "," +
                std::to_string(static_cast<int>(n) - pos) + "), declared (" +
                std::to_string(spec.p) + "," + std::to_string(spec.q) + ")");
  }

  DiagonalizedLattice dl;
  dl.label = spec.label;
  dl.ctx = SignatureCtx(spec.p, spec.q);
  dl.gram = spec.gram;
  RationalMatrix bs;
  std::vector<Rational> d;
  for (std::size_t i : sorted) {
    std::vector<Rational> row = b[i];
    auto first = std::find_if(row.begin(), row.end(), [](const Rational& v) { return v != 0; });
    if (first != row.end() && *first < 0)
      for (auto& v : row) v = -v;
    bs.push_back(row);
    d.push_back(a[i][i]);
    dl.diag.push_back(a[i][i] > 0 ? 1 : -1);
  }
  // transform = diag(sqrt|d|) * bs^{-T}; majorant = bs^{-1} |D| bs^{-T}
  RationalMatrix inv = invert(bs);
  dl.transform.assign(n, std::vector<double>(n));
  dl.basis.assign(n, std::vector<double>(n));
  dl.majorant.assign(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < n; ++k) {
    double s = std::sqrt(to_double(abs(d[k])));
    for (std::size_t j = 0; j < n; ++j) {
      dl.transform[k][j] = s * to_double(inv[j][k]);
      dl.basis[k][j] = to_double(bs[k][j]) / s;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += inv[i][k] * abs(d[k]) * inv[j][k];
      dl.majorant[i][j] = s;
    }
  }
  return dl;
}

double DiagonalizedLattice::residual() const {
  const std::size_t n = gram.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += transform[k][i] * diag[k] * transform[k][j];
      worst = std::max(worst, std::abs(s - to_double(gram[i][j])));
    }
  }
  return worst;
}

std::vector<double> DiagonalizedLattice::orthonormal_coords(const std::vector<long>& n) const {
  std::vector<double> v(n.size(), 0.0);
  for (std::size_t k = 0; k < n.size(); ++k)
    for (std::size_t j = 0; j < n.size(); ++j) v[k] += transform[k][j] * static_cast<double>(n[j]);
  return v;
}

std::vector<std::vector<long>> enumerate_vectors(const DiagonalizedLattice& dl, double bound) {
  if (!(bound >= 0) || !std::isfinite(bound)) throw Error("bound must be a finite nonnegative number");
  const std::size_t n = dl.majorant.size();
  const Rational exact_bound(bound);
  // |n_i| <= sqrt(bound * (M^{-1})_ii)
  RationalMatrix minv = invert(dl.majorant);
  std::vector<long> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    box[i] = static_cast<long>(std::floor(std::sqrt(bound * to_double(minv[i][i])) + 1e-9)) + 1;
  }
  std::vector<std::vector<long>> out;
  std::vector<long> cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = -box[i];
  for (;;) {
    if (quadratic(dl.majorant, cur) <= exact_bound) out.push_back(cur);
    std::size_t k = n;
    while (k > 0 && cur[k - 1] == box[k - 1]) {
      cur[k - 1] = -box[k - 1];
      --k;
    }
    if (k == 0) break;
    ++cur[k - 1];
  }
  return out;
}

nlohmann::json ThetaResult::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : coefficients) c[k] = {v.real(), v.imag()};
  return {{"schema", "thomform/1"},
          {"tau", {tau.real(), tau.imag()}},
          {"bound", bound},
          {"vectors", vectors},
          {"tail_estimate", tail_estimate},
          {"coefficients", c}};
}

ThetaResult theta_partial_sum(const DiagonalizedLattice& dl, std::complex<double> tau, double bound) {
  const double y = tau.imag();
  if (!(y > 0)) throw Error("tau must lie in the upper half plane");
  const SignatureCtx& ctx = dl.ctx;
  SuperForm km = km_form_at_e(ctx);
  struct Component {
    std::string key;
    Polynomial poly;
  };
  std::vector<Component> components;
  for (const auto& [k, c] : km.terms()) {
    components.push_back({km.key_str(k), c.parts().begin()->second});
  }

  ThetaResult result;
  result.tau = tau;
  result.bound = bound;
  for (const auto& comp : components) result.coefficients[comp.key] = 0.0;

  // Beyond b_cap every term is below e^{-pi y b_cap / 2} < 1e-30.
  const double b_cap = std::max(bound, 2.0 * 69.1 / (std::numbers::pi * y));
  const double sqrt_y = std::sqrt(y);
  const double pi = std::numbers::pi;
  double tail = 0.0;
  for (const auto& vec : enumerate_vectors(dl, b_cap)) {
    const double qv = to_double(quadratic(dl.gram, vec));
    std::vector<double> v = dl.orthonormal_coords(vec);
    double qz0 = 0.0;
    for (int mu = ctx.p; mu < ctx.n(); ++mu) qz0 -= v[mu] * v[mu];
    std::vector<double> scaled(v);
    for (double& x : scaled) x *= sqrt_y;
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, kThetaPhaseFactor * pi) * tau * qv);
    const double weight = std::exp(2.0 * pi * y * qz0);
    const bool inside = quadratic(dl.majorant, vec) <= Rational(bound);
    double largest = 0.0;
    for (const auto& comp : components) {
      std::complex<double> term = comp.poly.eval(scaled) * weight * phase;
      if (inside) {
        result.coefficients[comp.key] += term;
      } else {
        largest = std::max(largest, std::abs(term));
      }
    }
    if (inside) {
      ++result.vectors;
    } else {
      tail += largest;
    }
  }
  result.tail_estimate = tail + std::exp(-pi * y * b_cap / 2.0);
  return result;
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw Error("empty complex number");
  auto fail = [&]() { return Error("cannot parse complex number '" + std::string(text) + "'"); };
  auto to_d = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size()) throw fail();
    return v;
  };
  try {
    if (s.back() != 'i') return {to_d(s), 0.0};
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) return {0.0, to_d(s)};
    return {to_d(s.substr(0, split)), to_d(s.substr(split))};
  } catch (const std::logic_error&) {
    throw fail();
  }
}

}  // namespace thomform
