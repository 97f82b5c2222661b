#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thomform/lie.hpp"

namespace thomform {

struct LatticeSpec {
  std::string label;
  int p = 1;
  int q = 1;
  RationalMatrix gram;

  /// {label, p, q, gram: [[rational strings or integers]]}
  static LatticeSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct DiagonalizedLattice {
  std::string label;
  SignatureCtx ctx;
  RationalMatrix gram;
  /// Rows of `basis` are the vectors e_k in lattice coordinates, scaled so that
  /// Q(e_k, e_k) = diag[k]: the first p are positive, the last q negative.
  std::vector<std::vector<double>> basis;
  /// transform * n gives the coordinates of n in the orthonormal basis.
  std::vector<std::vector<double>> transform;
  std::vector<int> diag;
  /// Exact Gram matrix of the majorant Q^+ in lattice coordinates.
  RationalMatrix majorant;

  /// max |transform^T diag transform - gram|
  double residual() const;
  /// Coordinates of the lattice vector n in the orthonormal basis.
  std::vector<double> orthonormal_coords(const std::vector<long>& n) const;
};

/// Exact symmetric congruence reduction (largest |pivot| first, ties by index)
/// followed by per-axis scaling.
DiagonalizedLattice diagonalize_gram(const LatticeSpec& spec);

/// All lattice vectors with Q^+(n,n) <= bound, sorted lexicographically.
std::vector<std::vector<long>> enumerate_vectors(const DiagonalizedLattice& dl, double bound);

struct ThetaResult {
  std::complex<double> tau;
  double bound = 0.0;
  std::size_t vectors = 0;
  double tail_estimate = 0.0;
  /// Basis key of Lambda^q p* (canonical text) -> partial sum.
  std::map<std::string, std::complex<double>> coefficients;

  nlohmann::json to_json() const;
};

/// Sum over Q^+(n,n) <= bound of P(sqrt(y) v) e^{2 pi y Q|z0(v,v)} e^{pi i tau Q(n,n)},
/// with P the polynomial part of the Kudla-Millson form at the basepoint.
ThetaResult theta_partial_sum(const DiagonalizedLattice& dl, std::complex<double> tau, double bound);

/// The exponent convention e^{pi i tau Q}: Q(n,n) = 2m pairs with q^m.
inline constexpr double kThetaPhaseFactor = 1.0;

/// "a+bi", "a-bi", "bi", "a".
std::complex<double> parse_complex(std::string_view text);

}  // namespace thomform
