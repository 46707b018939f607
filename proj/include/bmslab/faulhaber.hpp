#pragma once

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::exactmath {

// Bernoulli number B_n under the convention B_1 = -1/2.
Rat bernoulli(long n);

// Closed form for sum_{k=1}^{n} k^p as a polynomial in n. The p = 0 case is
// the constant-summand count n, which the Bernoulli closed form does not
// cover.
UPoly faulhaber_power_sum(long p);

// T_d(x, k) = sum over 0 <= g_1 < ... < g_d < k of prod_j (x + g_j), as a
// polynomial in (x, k). Strict chains over an increasing window; T_0 = 1.
MPoly T_poly(int d);

// The weak-chain companion: sum over 1 <= g_1 <= ... <= g_d <= k of
// prod_j (-x + g_j).
MPoly T_tilde_poly(int d);

}  // namespace bmslab::exactmath
