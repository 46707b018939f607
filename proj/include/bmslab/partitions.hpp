#pragma once

#include <string>
#include <vector>

#include "bmslab/rat.hpp"

namespace bmslab {

// An integer partition: weakly decreasing positive parts. The empty vector
// is the partition of 0.
using Partition = std::vector<long>;

using exactmath::Rat;

long part_sum(const Partition& p);
int part_len(const Partition& p);
bool is_valid_partition(const Partition& p);
void require_partition(const Partition& p, const char* where);

// Sorts parts into canonical order; rejects nonpositive entries.
Partition normalized_partition(std::vector<long> parts);

// All partitions of n, in descending lexicographic order.
std::vector<Partition> partitions_of(long n);

// Order of the automorphism group of the multiset of parts: the product of
// factorials of part multiplicities.
Rat aut_order(const Partition& p);

// prod_a a^{m_a} m_a! over part values a with multiplicity m_a; the
// conjugacy class of cycle type p in S_n has n!/z of this size.
Rat z_weight(const Partition& p);

Rat conjugacy_class_size(const Partition& p);

// Hook lengths and contents of the Young diagram, row by row.
std::vector<std::vector<long>> hook_lengths(const Partition& p);
std::vector<long> cell_contents(const Partition& p);

Partition conjugate_partition(const Partition& p);

std::string part_str(const Partition& p);

// All set partitions of {0, ..., n-1}; each block is sorted, blocks are
// ordered by smallest element.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

}  // namespace bmslab
