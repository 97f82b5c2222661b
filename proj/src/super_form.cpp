#include "thomform/super_form.hpp"

#include <bit>

namespace thomform {

Layout Layout::pstar(int p, int q) {
  if (p < 1 || q < 1) throw Error("signature requires p >= 1 and q >= 1");
  if (p * q > 63 || q > 31) throw Error("signature too large for the form basis");
  return Layout{FormLayout::kPstar, p, q, false};
}

Layout Layout::fiber(int q, bool symbolic_t) {
  if (q < 1 || q > 31) throw Error("fiber rank must be in 1..31");
  return Layout{FormLayout::kFiber, 0, q, symbolic_t};
}

std::size_t Layout::coeff_dim() const {
  if (kind == FormLayout::kPstar) return static_cast<std::size_t>(p + q);
  return static_cast<std::size_t>(q) + (symbolic_t ? 1 : 0);
}

VariableNames Layout::variable_names() const {
  VariableNames names = default_variable_names(kind == FormLayout::kPstar ? p + q : q);
  if (kind == FormLayout::kFiber && symbolic_t) names.emplace_back("t");
  return names;
}

int Layout::pstar_bit(int alpha, int mu) const {
  if (kind != FormLayout::kPstar) throw Error("w[a,m] generators need a p* layout");
  if (alpha < 1 || alpha > p || mu <= p || mu > p + q) {
    throw Error("w[" + std::to_string(alpha) + "," + std::to_string(mu) + "] is not in p*");
  }
  return (alpha - 1) * q + (mu - p - 1);
}

std::pair<int, int> Layout::pstar_pair(int bit) const {
  return {bit / q + 1, bit % q + p + 1};
}

int Layout::z0_bit(int mu) const {
  int first = kind == FormLayout::kPstar ? p + 1 : 1;
  if (mu < first || mu >= first + q) throw Error("e[" + std::to_string(mu) + "] is not in z0");
  return mu - first;
}

int Layout::z0_index(int bit) const { return bit + (kind == FormLayout::kPstar ? p + 1 : 1); }

std::string Layout::form_name(int bit) const {
  if (kind == FormLayout::kFiber) return "dx[" + std::to_string(bit + 1) + "]";
  auto [a, m] = pstar_pair(bit);
  return "w[" + std::to_string(a) + "," + std::to_string(m) + "]";
}

std::string Layout::z0_name(int bit) const { return "e[" + std::to_string(z0_index(bit)) + "]"; }

int TermKey::form_degree() const { return std::popcount(forms); }
int TermKey::z0_degree() const { return std::popcount(z0); }

namespace {

// Same-degree masks: the one owning the lowest differing bit sorts first,
// which is lexicographic order on the increasing index lists.
template <class Mask>
int compare_masks(Mask a, Mask b) {
  int da = std::popcount(a), db = std::popcount(b);
  if (da != db) return da < db ? -1 : 1;
  if (a == b) return 0;
  Mask diff = a ^ b;
  Mask low = diff & (~diff + 1);
  return (a & low) ? -1 : 1;
}

}  // namespace

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
  int c = compare_masks(a.forms, b.forms);
  if (c != 0) return c < 0;
  return compare_masks(a.z0, b.z0) < 0;
}

SuperForm SuperForm::scalar(const Layout& layout, const PolyGauss& c) {
  return term(layout, TermKey{}, c);
}

SuperForm SuperForm::scalar(const Layout& layout, const Scalar& c) {
  return scalar(layout, PolyGauss::constant(layout.coeff_dim(), c));
}

SuperForm SuperForm::term(const Layout& layout, TermKey key, const PolyGauss& c) {
  SuperForm out(layout);
  out.add_term(key, c);
  return out;
}

SuperForm SuperForm::form_generator(const Layout& layout, int bit) {
  if (bit < 0 || bit >= layout.num_forms()) throw Error("form generator out of range");
  return term(layout, TermKey{std::uint64_t{1} << bit, 0},
              PolyGauss::constant(layout.coeff_dim(), Scalar(1)));
}

SuperForm SuperForm::omega(const Layout& layout, int alpha, int mu) {
  return form_generator(layout, layout.pstar_bit(alpha, mu));
}

SuperForm SuperForm::z0(const Layout& layout, int mu) {
  return term(layout, TermKey{0, std::uint32_t{1} << layout.z0_bit(mu)},
              PolyGauss::constant(layout.coeff_dim(), Scalar(1)));
}

void SuperForm::add_term(TermKey key, const PolyGauss& c) {
  if (c.dim() != layout_.coeff_dim()) throw Error("coefficient dimension does not match layout");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SuperForm SuperForm::component(int form_degree, int z0_degree) const {
  SuperForm out(layout_);
  for (const auto& [k, c] : terms_) {
    if (k.form_degree() == form_degree && k.z0_degree() == z0_degree) out.terms_.emplace(k, c);
  }
  return out;
}

PolyGauss SuperForm::coefficient(TermKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? PolyGauss(layout_.coeff_dim()) : it->second;
}

void SuperForm::check_layout(const SuperForm& o) const {
  if (!(o.layout_ == layout_)) throw Error("super forms live in different algebras");
}

SuperForm SuperForm::operator-() const {
  SuperForm out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

SuperForm& SuperForm::operator+=(const SuperForm& o) {
  check_layout(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

SuperForm& SuperForm::operator-=(const SuperForm& o) {
  check_layout(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

SuperForm& SuperForm::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

SuperForm SuperForm::times(const PolyGauss& f) const {
  SuperForm out(layout_);
  for (const auto& [k, c] : terms_) out.add_term(k, c * f);
  return out;
}

std::string SuperForm::key_str(TermKey key) const {
  std::string w, e;
  for (int b = 0; b < layout_.num_forms(); ++b) {
    if (key.forms >> b & 1) w += (w.empty() ? "" : "^") + layout_.form_name(b);
  }
  for (int b = 0; b < layout_.num_z0(); ++b) {
    if (key.z0 >> b & 1) e += (e.empty() ? "" : "^") + layout_.z0_name(b);
  }
  if (!w.empty() && !e.empty()) return w + " " + e;
  return w + e;
}

std::string SuperForm::str() const {
  if (terms_.empty()) return "0";
  VariableNames names = layout_.variable_names();
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string coeff = c.str(names, layout_.gauss_scale());
    if (c.parts().size() > 1) coeff = "(" + coeff + ")";
    std::string key = key_str(k);
    if (!out.empty()) out += "\n";
    out += key.empty() ? coeff : coeff + " " + key;
  }
  return out;
}

nlohmann::json SuperForm::to_json() const {
  nlohmann::json j;
  j["schema"] = "thomform/1";
  j["layout"] = layout_.kind == FormLayout::kPstar ? "pstar" : "fiber";
  if (layout_.kind == FormLayout::kPstar) j["p"] = layout_.p;
  j["q"] = layout_.q;
  if (layout_.symbolic_t) j["symbolic_t"] = true;
  VariableNames names = layout_.variable_names();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : terms_) {
    nlohmann::json t;
    nlohmann::json forms = nlohmann::json::array();
    for (int b = 0; b < layout_.num_forms(); ++b) {
      if (!(k.forms >> b & 1)) continue;
      if (layout_.kind == FormLayout::kPstar) {
        auto [a, m] = layout_.pstar_pair(b);
        forms.push_back({a, m});
      } else {
        forms.push_back(b + 1);
      }
    }
    nlohmann::json e = nlohmann::json::array();
    for (int b = 0; b < layout_.num_z0(); ++b) {
      if (k.z0 >> b & 1) e.push_back(layout_.z0_index(b));
    }
    t[layout_.kind == FormLayout::kPstar ? "w" : "dx"] = forms;
    t["e"] = e;
    t["coeff"] = c.str(names, layout_.gauss_scale());
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

int reorder_sign(std::uint64_t a, std::uint64_t b) {
  int inversions = 0;
  while (b != 0) {
    int bit = std::countr_zero(b);
    b &= b - 1;
    std::uint64_t above = bit >= 63 ? 0 : (a >> (bit + 1));
    inversions += std::popcount(above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

SuperForm wedge(const SuperForm& a, const SuperForm& b) {
  if (!(a.layout() == b.layout())) throw Error("super forms live in different algebras");
  SuperForm out(a.layout());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if ((ka.forms & kb.forms) != 0 || (ka.z0 & kb.z0) != 0) continue;
      int sign = reorder_sign(ka.forms, kb.forms) * reorder_sign(ka.z0, kb.z0);
      if (ka.z0_degree() * kb.form_degree() % 2 == 1) sign = -sign;
      PolyGauss c = ca * cb;
      out.add_term(TermKey{ka.forms | kb.forms, ka.z0 | kb.z0}, sign > 0 ? c : -c);
    }
  }
  return out;
}

SuperForm wedge_power(const SuperForm& a, int n) {
  if (n < 0) throw Error("negative wedge power");
  SuperForm out = SuperForm::scalar(a.layout(), Scalar(1));
  for (int k = 0; k < n && !out.is_zero(); ++k) out = wedge(out, a);
  return out;
}

SuperForm berezin(const SuperForm& a) {
  const std::uint32_t top = (std::uint32_t{1} << a.layout().num_z0()) - 1;
  SuperForm out(a.layout());
  for (const auto& [k, c] : a.terms()) {
    if (k.z0 == top) out.add_term(TermKey{k.forms, 0}, c);
  }
  return out;
}

SuperForm contract(const SuperForm& s, const SuperForm& a) {
  if (!(s.layout() == a.layout())) throw Error("super forms live in different algebras");
  for (const auto& [k, c] : s.terms()) {
    if (k.forms != 0 || k.z0_degree() != 1) throw Error("contract requires s of bidegree (0,1)");
  }
  SuperForm out(a.layout());
  for (const auto& [ks, cs] : s.terms()) {
    for (const auto& [ka, ca] : a.terms()) {
      if ((ka.z0 & ks.z0) == 0) continue;
      // 1-based position of the removed index inside J
      int position = std::popcount(ka.z0 & (ks.z0 - 1)) + 1;
      bool negative = (ka.form_degree() + position - 1) % 2 == 1;
      PolyGauss c = cs * ca;
      out.add_term(TermKey{ka.forms, ka.z0 & ~ks.z0}, negative ? -c : c);
    }
  }
  return out;
}

namespace {

// Reads the (0,0) part as -pi * sum c_i x_i^2 and returns the c_i.
GaussExponent gaussian_from_scalar_part(const PolyGauss& f, std::size_t dim) {
  std::vector<Rational> coeffs(dim);
  for (const auto& [g, poly] : f.parts()) {
    if (!g.is_zero()) throw Error("exp_even: degree-0 part already carries a Gaussian");
    for (const auto& [m, c] : poly.terms()) {
      int index = -1;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (m[i] != 2 || index >= 0) {
          throw Error("exp_even: degree-0 part must be a combination of x_i^2");
        }
        index = static_cast<int>(i);
      }
      const auto& terms = c.terms();
      if (index < 0 || terms.size() != 1 || terms.begin()->first.sqrt2 != 0 ||
          terms.begin()->first.sqrt_pi != 2) {
        throw Error("exp_even: degree-0 part must have the form -pi * sum c_i x_i^2");
      }
      coeffs[static_cast<std::size_t>(index)] = -terms.begin()->second;
    }
  }
  return GaussExponent(std::move(coeffs));
}

}  // namespace

SuperForm exp_even(const SuperForm& a) {
  const Layout& layout = a.layout();
  SuperForm nilpotent(layout);
  PolyGauss scalar_part(layout.coeff_dim());
  for (const auto& [k, c] : a.terms()) {
    if ((k.form_degree() + k.z0_degree()) % 2 != 0) {
      throw Error("exp_even: odd total degree term " + a.key_str(k));
    }
    if (k.forms == 0 && k.z0 == 0) {
      scalar_part = c;
    } else {
      nilpotent.add_term(k, c);
    }
  }
  PolyGauss gauss = PolyGauss::gaussian(gaussian_from_scalar_part(scalar_part, layout.coeff_dim()));

  SuperForm sum = SuperForm::scalar(layout, Scalar(1));
  SuperForm power = sum;
  for (int k = 1;; ++k) {
    power = wedge(power, nilpotent) * Scalar(Rational(1, k));
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.times(gauss);
}

}  // namespace thomform
