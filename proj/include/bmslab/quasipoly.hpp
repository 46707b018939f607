#pragma once

#include <string>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::quasipoly {

using exactmath::MPoly;
using exactmath::Rat;

// Certified symmetric-polynomial form of the connected counts at fixed
// (m, g, n):
//   count(mu) = prod_i prefactor(m, mu_i) * poly(mu) / denominator(mu),
// where the denominator is the product of (mu_i - j/m) over the recorded
// exponent list. The grid and held-out tuples document the exact samples
// the form was solved on and validated against.
struct QuasiPolyForm {
  int m = 0;
  int g = 0;
  int n = 0;
  MPoly poly;
  std::vector<long> denominator_exponents;
  std::vector<std::vector<long>> grid;
  std::vector<std::vector<long>> held_out;
  long per_variable_degree = 0;

  // poly at an integer tuple; the form is symmetric so order is free.
  Rat evaluate(const std::vector<long>& mu) const;
  // The connected count reconstructed from the certified form.
  Rat count_value(const std::vector<long>& mu) const;

  std::string to_json() const;
  static QuasiPolyForm from_json(const std::string& text);
};

// Per-part normalization factor (m mu - m)! / (mu! (m mu - mu - 1)!).
Rat prefactor(int m, long mu_i);

// Exponent numerators j with m <= j <= 4g-4+2n-1 and m not dividing j.
std::vector<long> denominator_exponents(int m, int g, int n);

// prod_i prod_j (mu_i - j/m) over denominator_exponents(m, g, n).
// Never zero at integer mu since the roots j/m are non-integer.
Rat denominator_product(int m, int g, int n, const std::vector<long>& mu);

// Connected count times the denominator product divided by the prefactors.
Rat normalized_value(int m, int g, const std::vector<long>& mu);

// Fit the symmetric polynomial by exact interpolation on sorted integer
// tuples, escalating the per-variable degree until at least 3 held-out
// samples reproduce exactly. degree_cap < 0 selects the cap 6(2g-2+n).
// Failure at the cap is a hard error carrying the mismatching sample.
QuasiPolyForm fit_poly(int m, int g, int n, int degree_cap = -1,
                       long grid_base = 1);

}  // namespace bmslab::quasipoly
