#pragma once

#include <map>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::aops {

using exactmath::MPoly;
using exactmath::Rat;
using exactmath::RatFun;
using exactmath::UPoly;

// Window product P_k(l) = prod_{i=0}^{k-1} (1 + h (l + i + 1/2)) as a
// polynomial in the variables (l, h).
MPoly p_poly(long k);

// t-fold backward difference in l of p_poly(k). Equals (k)_t h^t P_{k-t}
// for t <= k and vanishes for t > k.
MPoly delta_power_p(long t, long k);

// Value of [h^p] prod_{j=1}^{m} P_{k-i_j}(l - i_{j+1} - ... - i_m) at the
// given arguments, where iv = (i_1..i_m). The chain-polynomial route defines
// the value for every integer k and i_j >= 0; when all windows k - i_j are
// nonnegative the plain product route and the ordered-chain route are
// evaluated as well and a disagreement throws.
Rat r_value(int p, int m, long k, const Rat& l, const std::vector<long>& iv);

// The same coefficient as a polynomial in (k, l, i1..im).
MPoly r_poly(int p, int m);

// Companion built from weak chains on mirrored windows k + i_j; equal to
// r_poly with k negated.
MPoly r_tilde_poly(int p, int m);

// Falling-factorial coefficients of r_poly: a map from (s_1..s_m) with
// sum s_j <= 2p to polynomials Q[s](k, l) such that
// r == sum_s Q[s](k, l) * prod_j (i_j)_{s_j}. Recovered from values on the
// grid i_j in {0..2p} and checked by re-expansion at sample points off the
// grid.
std::map<std::vector<int>, MPoly> q_coeffs(int p, int m);

// Coefficient of h^{q+p} on E_{l-q,l} in the conjugated current operator,
// computed by the closed falling-factorial form and cross-checked against
// the direct difference evaluation of the window product. q + k < 0 gives 0.
Rat acheck_E_coeff(int m, long k, long q, int p, const Rat& l);

// Coefficient of h^p on the identity part of the same operator, p >= -1;
// closed form cross-checked against the direct difference evaluation.
Rat acheck_Id_coeff(int m, long k, int p);

// Combinatorial prefactor (mk-m)! / (k! (mk-k-1)!) shared by every
// coefficient of the conjugated current operator.
Rat operator_prefactor(int m, long k);

// prod over m <= j <= jmax, j not divisible by m, of (k - j/m) as a
// polynomial in k.
UPoly pole_product(int m, long jmax);

// Numerator polynomial S(k, l) with
//   acheck_E_coeff = prefactor * S / (pole_product(m, 2p-1) * (k+1)...(k+q)).
// Exact interpolation over integer k and half-integer l with held-out
// validation; the degree in k is at most 6p+q for m = 2 and gains m-2 for
// wider products.
MPoly s_numerator(int m, int p, long q);

// Numerator polynomial in k for the identity part, p >= -1, with
//   acheck_Id_coeff = prefactor * S / (pole_product(m, 2p+1) * k^2 (mk-k+1)).
// Adaptive-degree interpolation with held-out validation; for p >= 0
// divisibility of S by k^2 and by (mk-k+1) is asserted.
MPoly s_id_numerator(int m, int p);

// rho_p(k) = sum_{sigma=0}^{2p} (k-1)_sigma / (mk)_sigma
//            * sum_{s: sum = sigma} Q[s](k, -1/2) * prod_j (k)_{s_j},
// assembled from q_coeffs as a reduced rational function of k.
RatFun rho(int p, int m);

// Coefficient of h^{q+p} on E_{l-q,l} in the mirror operator with positive
// index r, computed by the closed falling-factorial form and cross-checked
// against the direct route through the inverted window series. q < r
// gives 0.
Rat adagger_E_coeff(int m, long r, long q, int p, const Rat& l);

// (-1)^(m+1) (mr-r+1)^(m+r-1 rising) / (r-1)!.
Rat residue_constant(int m, long r);

// The residue at k = -r of the rational interpolant of the rescaled
// E coefficient equals residue_constant(m, r) times the matching mirror
// coefficient.
bool residue_relation_check(int m, long r, long q, int p, const Rat& l);

// Coefficient of h^p of the i-weighted backward-difference sum of the window
// product at l = -1/2 and all window arguments set equal, as a polynomial
// in k. Equals binom(m,2) k^2 at p = 1 and vanishes at every other p.
UPoly euler_weighted_difference(int p, int m);

// Coefficient data for one m: E-part numerators keyed by (q, p) and
// identity-part rational functions keyed by p, together with the sampled
// validity window. Entries are validated against the two-path coefficient
// evaluations at build time.
struct ACoeffTable {
  int m = 0;
  long q_max = 0;
  int p_max = 0;
  // Integer k range the construction sampled and validated.
  long k_min = 0;
  long k_max = 0;
  std::map<std::pair<long, int>, MPoly> e_numerators;
  std::map<int, RatFun> id_parts;

  // Coefficient of h^{q+p} on E_{l-q,l} reconstructed from the stored
  // numerator; 1 <= q <= q_max, 0 <= p <= p_max.
  Rat e_coeff(long k, long q, int p, const Rat& l) const;
  // Coefficient of h^p on the identity part reconstructed from the stored
  // rational function; -1 <= p <= p_max.
  Rat id_coeff(long k, int p) const;
};

ACoeffTable acoeff_table(int m, long q_max, int p_max);

}  // namespace bmslab::aops
