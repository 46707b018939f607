#pragma once

#include <optional>
#include <vector>

#include "bmslab/partitions.hpp"
#include "bmslab/rat.hpp"

namespace bmslab::permoracle {

using exactmath::Rat;

// Identifies one count: the route tag distinguishes producers of the same
// number for caching and cross-checking.
struct BmsKey {
  int m = 0;
  int g = 0;
  Partition mu;
};

// Number of transpositions-free length data: L = 2 + (m-1)|mu| - len(mu) - 2g.
// A tuple of m permutations needs cycle counts summing to at least m, so
// values below m are inadmissible and reported as nullopt.
std::optional<long> riemann_hurwitz_L(int m, int g, const Partition& mu);

// Weighted count of m-tuples of permutations of [|mu|] whose product lies in
// the conjugacy class of mu and whose cycle counts sum to L. The weight is
// 1/prod(mu_i), equivalently |Aut mu| * |C_mu| / |mu|! with one fixed product
// representative.
Rat bms_disconnected_bruteforce(int m, const Partition& mu, long L, int jobs = 0);

// Same count restricted to tuples generating a transitive subgroup, with L
// determined by g; returns 0 when no admissible L exists.
Rat bms_connected_bruteforce(int m, int g, const Partition& mu, int jobs = 0);

// Closed product formula for the genus-zero connected count with at least
// three parts (and by continuation fewer).
Rat genus0_formula(int m, const Partition& mu);

// Closed forms for the one- and two-part genus-zero counts.
Rat unstable_onepoint(int m, long k);
Rat unstable_twopoint(int m, long k1, long k2);

}  // namespace bmslab::permoracle
