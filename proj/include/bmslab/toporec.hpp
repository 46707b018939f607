#pragma once

#include <string>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::toporec {

using exactmath::MPoly;
using exactmath::Rat;
using exactmath::UPoly;

// Univariate rational function in the global curve coordinate z.
using RatFunZ = exactmath::RatFun;

// Substitutes z -> 1/z, returning a rational function again.
RatFunZ reciprocal_arg(const RatFunZ& f);

// The degree-two curve data: x(z) = (1+z)^2/z with deck transformation
// z -> 1/z, critical points at z = 1 and z = -1.
struct CurveData {
  RatFunZ x;
  RatFunZ dx_dz;
  RatFunZ w01_over_dz;  // first one-form divided by dz
};
CurveData curve_data_m2();

// One additive piece of a multi-differential: a scalar times one rational
// factor per variable slot (the factor for slot i is applied to z_{i+1}).
struct DiffTerm {
  Rat scale;
  std::vector<RatFunZ> factors;
};

// A symmetric rational multi-differential divided by dz_1 .. dz_n, stored
// as a sum of products of univariate factors. Stable cases have poles
// only at z_i = 1 and z_i = -1.
struct MultiDiff {
  int g = 0;
  int n = 0;
  std::vector<DiffTerm> terms;

  // Single-fraction form: numerator over the symmetric denominator
  // prod_i (z_i - 1)^pole_minus (z_i + 1)^pole_plus.
  struct Combined {
    MPoly numerator;
    long pole_minus = 0;
    long pole_plus = 0;
  };
  Combined combined() const;
};

// The recursion output for stable (g, n) with 2g-2+n <= budget, computed
// by residues at the two critical points and certified on construction:
// equal output under a shifted integration primitive, symmetry under
// variable transpositions, poles confined to z = +-1 with none at
// infinity, and zero total residue in each variable. Results are cached.
const MultiDiff& omega(int g, int n, int budget = 4);

struct CompareRow {
  std::vector<long> mu;
  Rat tr_value;
  Rat fock_value;
  bool equal = false;
};
struct CompareReport {
  bool pass = true;
  std::vector<CompareRow> rows;
};

// Expands omega(g, n) near X_i = 0 through the inverse series z(X) and
// compares every joint coefficient against the fermionic count for all
// sorted tuples with parts up to mu_max.
CompareReport expand_and_compare(int g, int n, long mu_max);

}  // namespace bmslab::toporec
