#include "thomform/lie.hpp"

#include <bit>
#include <optional>

namespace thomform {

SignatureCtx::SignatureCtx(int p_, int q_) : p(p_), q(q_) {
  if (p < 1 || q < 1) throw Error("signature requires p >= 1 and q >= 1");
}

LieElement LieElement::basis(const SignatureCtx& ctx, int i, int j) {
  LieElement x(ctx);
  if (i > j) {
    x.add(j, i, -1);
  } else {
    x.add(i, j, 1);
  }
  return x;
}

void LieElement::add(int i, int j, const Rational& c) {
  if (i < 1 || j > ctx_.n() || i >= j) {
    throw Error("X[" + std::to_string(i) + "," + std::to_string(j) + "] is not a basis element");
  }
  if (c == 0) return;
  auto [it, inserted] = coords_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coords_.erase(it);
  }
}

Rational LieElement::coefficient(int i, int j) const {
  auto it = coords_.find({i, j});
  return it == coords_.end() ? Rational(0) : it->second;
}

bool LieElement::in_k() const {
  for (const auto& [ij, c] : coords_) {
    if (ij.first <= ctx_.p && ij.second > ctx_.p) return false;
  }
  return true;
}

bool LieElement::in_p() const {
  for (const auto& [ij, c] : coords_) {
    if (!(ij.first <= ctx_.p && ij.second > ctx_.p)) return false;
  }
  return true;
}

RationalMatrix LieElement::matrix() const {
  const int n = ctx_.n();
  RationalMatrix m(n, std::vector<Rational>(n));
  for (const auto& [ij, c] : coords_) {
    auto [i, j] = ij;
    // X_ij e_i = Q_ii e_j, X_ij e_j = -Q_jj e_i
    m[j - 1][i - 1] += c * ctx_.q_diag(i);
    m[i - 1][j - 1] -= c * ctx_.q_diag(j);
  }
  return m;
}

LieElement LieElement::from_matrix(const SignatureCtx& ctx, const RationalMatrix& m) {
  const int n = ctx.n();
  if (static_cast<int>(m.size()) != n) throw Error("matrix has the wrong size");
  LieElement x(ctx);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) x.add(i, j, m[j - 1][i - 1] / ctx.q_diag(i));
  }
  if (!(x.matrix() == m)) throw Error("matrix is not in so(p,q)");
  return x;
}

std::vector<double> LieElement::apply(const std::vector<double>& v) const {
  RationalMatrix m = matrix();
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (m[r][c] != 0) out[r] += to_double(m[r][c]) * v[c];
    }
  }
  return out;
}

void LieElement::check_ctx(const LieElement& o) const {
  if (!(o.ctx_ == ctx_)) throw Error("Lie elements from different signatures");
}

LieElement LieElement::operator-() const {
  LieElement out = *this;
  for (auto& [ij, c] : out.coords_) c = -c;
  return out;
}

LieElement& LieElement::operator+=(const LieElement& o) {
  check_ctx(o);
  for (const auto& [ij, c] : o.coords_) add(ij.first, ij.second, c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& r) {
  if (r == 0) {
    coords_.clear();
    return *this;
  }
  for (auto& [ij, c] : coords_) c *= r;
  return *this;
}

std::string LieElement::str() const {
  if (coords_.empty()) return "0";
  std::string out;
  for (const auto& [ij, c] : coords_) {
    std::string name = "X[" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "]";
    if (out.empty()) {
      out += c < 0 ? "-" : "";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Rational mag = abs(c);
    out += mag == 1 ? name : to_string(mag) + " * " + name;
  }
  return out;
}

std::string LieElement::matrix_str() const {
  std::string out;
  for (const auto& row : matrix()) {
    std::string line;
    for (const auto& v : row) line += (line.empty() ? "" : " ") + to_string(v);
    out += "[" + line + "]\n";
  }
  return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  if (!(x.ctx() == y.ctx())) throw Error("Lie elements from different signatures");
  RationalMatrix a = x.matrix(), b = y.matrix();
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0 && b[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (a[i][k] != 0 && b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
        if (b[i][k] != 0 && a[k][j] != 0) c[i][j] -= b[i][k] * a[k][j];
      }
    }
  }
  return LieElement::from_matrix(x.ctx(), c);
}

LieElement project_k(const LieElement& x) {
  LieElement out(x.ctx());
  for (const auto& [ij, c] : x.coords()) {
    if (!(ij.first <= x.ctx().p && ij.second > x.ctx().p)) out.add(ij.first, ij.second, c);
  }
  return out;
}

LieElement p_basis(const SignatureCtx& ctx, int bit) {
  auto [alpha, mu] = ctx.layout().pstar_pair(bit);
  return LieElement::basis(ctx, alpha, mu);
}

SuperForm eta(const SignatureCtx& ctx, int alpha) {
  if (alpha < 1 || alpha > ctx.p) throw Error("eta index out of range");
  Layout layout = ctx.layout();
  SuperForm out(layout);
  for (int mu = ctx.p + 1; mu <= ctx.n(); ++mu) {
    out += wedge(SuperForm::omega(layout, alpha, mu), SuperForm::z0(layout, mu));
  }
  return out;
}

SuperForm curvature_at_e(const SignatureCtx& ctx) {
  Layout layout = ctx.layout();
  SuperForm out(layout);
  const int gens = layout.num_forms();
  const std::size_t dim = layout.coeff_dim();
  for (int a = 0; a < gens; ++a) {
    for (int b = a + 1; b < gens; ++b) {
      LieElement r = -project_k(bracket(p_basis(ctx, a), p_basis(ctx, b)));
      RationalMatrix m = r.matrix();
      for (int i = ctx.p + 1; i <= ctx.n(); ++i) {
        for (int j = i + 1; j <= ctx.n(); ++j) {
          // <R e_i, e_j> with <e_j, e_j> = 1 on z0
          const Rational& c = m[j - 1][i - 1];
          if (c == 0) continue;
          TermKey key{(std::uint64_t{1} << a) | (std::uint64_t{1} << b),
                      (std::uint32_t{1} << layout.z0_bit(i)) | (std::uint32_t{1} << layout.z0_bit(j))};
          out.add_term(key, PolyGauss::constant(dim, Scalar(c)));
        }
      }
    }
  }
  return out;
}

PolyGauss schwartz_action(const LieElement& x, const PolyGauss& f) {
  const std::size_t n = static_cast<std::size_t>(x.ctx().n());
  if (f.dim() != n) throw Error("Schwartz function dimension does not match signature");
  RationalMatrix m = x.matrix();
  PolyGauss out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial component(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[j][i] != 0) component += Polynomial::variable(n, i + 1) * Scalar(m[j][i]);
    }
    if (component.is_zero()) continue;
    out -= polygauss_derive(f, j + 1).times(component);
  }
  return out;
}

namespace {

// Replaces generator `from` by `to` inside mask, keeping increasing order.
// Returns the reordering sign, or nullopt when `to` is already present.
std::optional<std::pair<std::uint64_t, int>> replace_generator(std::uint64_t mask, int from,
                                                               int to) {
  std::uint64_t rest = mask & ~(std::uint64_t{1} << from);
  if (rest >> to & 1) return std::nullopt;
  int lo = std::min(from, to), hi = std::max(from, to);
  std::uint64_t between = rest & ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{2} << lo) - 1);
  int sign = std::popcount(between) % 2 == 0 ? 1 : -1;
  return std::make_pair(rest | (std::uint64_t{1} << to), sign);
}

}  // namespace

SuperForm coadjoint_action(const LieElement& x, const SuperForm& a) {
  if (!x.in_k()) throw Error("coadjoint action needs an element of k");
  const SignatureCtx& ctx = x.ctx();
  Layout layout = ctx.layout();
  if (!(a.layout() == layout)) throw Error("super form and Lie element disagree on signature");
  const int gens = layout.num_forms();

  // X . w_j = -sum_i w_j([X, X_i]) w_i, stored as images[j] = {(i, coeff)}.
  std::vector<std::vector<std::pair<int, Rational>>> form_images(gens);
  for (int i = 0; i < gens; ++i) {
    LieElement br = bracket(x, p_basis(ctx, i));
    for (const auto& [ij, c] : br.coords()) {
      int j = layout.pstar_bit(ij.first, ij.second);
      form_images[j].emplace_back(i, -c);
    }
  }
  // X e_mu = sum_nu M[nu][mu] e_nu on z0.
  RationalMatrix m = x.matrix();
  std::vector<std::vector<std::pair<int, Rational>>> z0_images(ctx.q);
  for (int mu = ctx.p + 1; mu <= ctx.n(); ++mu) {
    for (int nu = ctx.p + 1; nu <= ctx.n(); ++nu) {
      const Rational& c = m[nu - 1][mu - 1];
      if (c != 0) z0_images[layout.z0_bit(mu)].emplace_back(layout.z0_bit(nu), c);
    }
  }

  SuperForm out(layout);
  for (const auto& [k, coeff] : a.terms()) {
    for (int g = 0; g < gens; ++g) {
      if (!(k.forms >> g & 1)) continue;
      for (const auto& [to, c] : form_images[g]) {
        auto r = replace_generator(k.forms, g, to);
        if (!r) continue;
        out.add_term(TermKey{r->first, k.z0}, coeff * Scalar(c * r->second));
      }
    }
    for (int g = 0; g < ctx.q; ++g) {
      if (!(k.z0 >> g & 1)) continue;
      for (const auto& [to, c] : z0_images[g]) {
        auto r = replace_generator(k.z0, g, to);
        if (!r) continue;
        out.add_term(TermKey{k.forms, static_cast<std::uint32_t>(r->first)},
                     coeff * Scalar(c * r->second));
      }
    }
  }
  return out;
}

}  // namespace thomform
