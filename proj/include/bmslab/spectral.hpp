#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/quasipoly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/series.hpp"

namespace bmslab::spectral {

using exactmath::MPoly;
using exactmath::Rat;
using exactmath::UPoly;
using exactmath::XSeries;

// Outcome of a coefficientwise comparison; failures name the offending
// indices and the two values that disagree.
struct CheckReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// Compositional inverse z(X) of X = z/(1+z)^m, with the Lagrange-inversion
// coefficient binom(mk, k-1) - m binom(mk-1, k-2) at X^k.
XSeries z_series(int m, int order);

// Expansion of z^i / ((1+z)^(m-1) (1-(m-1)z)) in X, computed two ways:
// the closed coefficient binom(mk-m, k-i) and direct substitution of
// z_series into the rational function. Disagreement is a hard error.
XSeries xi_series(int m, int i, int order);

// The derivation -X^2 d/dX, acting as X^k -> -k X^(k+1). The output is
// one order longer than the input; every returned coefficient is exact.
XSeries d_operator(const XSeries& s);

// Element of the span of the xi functions and their first d derivations
// under d_operator, stored as coefficients on the basis elements indexed
// by derivation depth a and xi index i.
struct XiElement {
  int m = 0;
  int d = 0;
  std::vector<std::vector<Rat>> coeffs;  // coeffs[a][i], 0 <= a <= d, 0 <= i < m

  bool is_zero() const;
  // Exact coefficient of X^k in the expansion, any k >= 0.
  Rat expansion_coeff(long k) const;
  XSeries expansion(int order) const;

  // Serialized as the list of nonzero (a, i, coefficient) triples.
  std::string to_json() const;
  static XiElement from_json(const std::string& text);
};

// The unique element whose X^k coefficient equals
//   prefactor(m, k) * p(k) / prod_{m < j < m(d+1), m not dividing j} (k - j/m)
// for all k >= 1, found by solving the square linear system on
// k = 1..m(d+1) and then verified at three further k. p must be a
// polynomial in the single variable k of degree at most m(d+1) - 1.
XiElement xi_from_poly(int m, int d, const MPoly& p);

// Sum of elementary tensors of XiElements, one factor per variable.
// coefficient(mu) is the joint X_1^{mu_1}..X_n^{mu_n} coefficient.
struct WTensor {
  int m = 0;
  int g = 0;
  int n = 0;
  int d = 0;
  std::vector<std::pair<Rat, std::vector<XiElement>>> terms;

  Rat coefficient(const std::vector<long>& mu) const;
  std::string to_json() const;
};

// Realizes a fitted count form as a tensor of XiElements: the polynomial
// is expanded monomial by monomial, each univariate factor is completed
// with the pole factors the form's denominator does not already carry,
// and mapped through xi_from_poly at the smallest feasible depth d.
// The tensor's joint coefficients then reproduce the connected counts.
WTensor w_assemble(const quasipoly::QuasiPolyForm& form);

// Coefficientwise identity sum_k k b(0, (k)) X^k = z(X) up to the order.
CheckReport omega01_check(int m, int order);

// Two-point checks up to the order: the closed identity
//   (k1+k2) b(0, (k1,k2)) = binom(mk1,k1) binom(mk2,k2)
//                           - m binom(mk1-1,k1-1) binom(mk2-1,k2-1)
// and the series identity that the mixed coefficients of
// log((z(X1)-z(X2))/(X1-X2)) are exactly b(0, (k1,k2)).
CheckReport omega02_check(int m, int order);

}  // namespace bmslab::spectral
