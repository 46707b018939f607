#include "bmslab/partitions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bmslab {

long part_sum(const Partition& p) {
  long s = 0;
  for (long v : p) s += v;
  return s;
}

int part_len(const Partition& p) { return static_cast<int>(p.size()); }

bool is_valid_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

void require_partition(const Partition& p, const char* where) {
  if (!is_valid_partition(p))
    throw std::invalid_argument(std::string(where) + ": not a partition: " + part_str(p));
}

Partition normalized_partition(std::vector<long> parts) {
  for (long v : parts)
    if (v <= 0) throw std::invalid_argument("normalized_partition: nonpositive part");
  std::sort(parts.begin(), parts.end(), std::greater<long>());
  return parts;
}

std::vector<Partition> partitions_of(long n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<Partition> out;
  Partition cur;
  std::function<void(long, long)> rec = [&](long rem, long maxpart) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (long v = std::min(rem, maxpart); v >= 1; --v) {
      cur.push_back(v);
      rec(rem - v, v);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Rat aut_order(const Partition& p) {
  require_partition(p, "aut_order");
  Rat acc(1);
  size_t i = 0;
  while (i < p.size()) {
    size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    acc *= exactmath::factorial(static_cast<long>(j - i));
    i = j;
  }
  return acc;
}

Rat z_weight(const Partition& p) {
  require_partition(p, "z_weight");
  Rat acc = aut_order(p);
  for (long v : p) acc *= Rat(v);
  return acc;
}

Rat conjugacy_class_size(const Partition& p) {
  return exactmath::factorial(part_sum(p)) / z_weight(p);
}

Partition conjugate_partition(const Partition& p) {
  require_partition(p, "conjugate_partition");
  if (p.empty()) return {};
  Partition out(static_cast<size_t>(p[0]), 0);
  for (long v : p)
    for (long j = 0; j < v; ++j) ++out[static_cast<size_t>(j)];
  return out;
}

std::vector<std::vector<long>> hook_lengths(const Partition& p) {
  require_partition(p, "hook_lengths");
  const Partition q = conjugate_partition(p);
  std::vector<std::vector<long>> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    out[i].resize(static_cast<size_t>(p[i]));
    for (long j = 0; j < p[i]; ++j)
      out[i][static_cast<size_t>(j)] =
          (p[i] - j) + (q[static_cast<size_t>(j)] - static_cast<long>(i)) - 1;
  }
  return out;
}

std::vector<long> cell_contents(const Partition& p) {
  require_partition(p, "cell_contents");
  std::vector<long> out;
  for (size_t i = 0; i < p.size(); ++i)
    for (long j = 0; j < p[i]; ++j) out.push_back(j - static_cast<long>(i));
  return out;
}

std::string part_str(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p[i];
  }
  os << ")";
  return os.str();
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(blocks);
      return;
    }
    // Deeper recursion levels append and remove blocks, so index-based
    // iteration over the current count is required here.
    const size_t nb = blocks.size();
    for (size_t bi = 0; bi < nb; ++bi) {
      blocks[bi].push_back(i);
      rec(i + 1);
      blocks[bi].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  return out;
}

}  // namespace bmslab
