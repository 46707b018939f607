#include "bmslab/permoracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "bmslab/parallel.hpp"

namespace bmslab::permoracle {

namespace {

using Perm = std::vector<int>;

std::vector<Perm> all_perms(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int cycle_count(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int c = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(p[j]);
    }
  }
  return c;
}

// Composition a after b: (a*b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[static_cast<size_t>(a[i])] = static_cast<int>(i);
  return r;
}

// Canonical class representative: consecutive cycles of the given lengths.
Perm class_representative(const Partition& mu) {
  Perm p(static_cast<size_t>(part_sum(mu)));
  long base = 0;
  for (long v : mu) {
    for (long i = 0; i < v; ++i)
      p[static_cast<size_t>(base + i)] = static_cast<int>(base + (i + 1) % v);
    base += v;
  }
  return p;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

bool tuple_transitive(const std::vector<const Perm*>& tuple, int n) {
  UnionFind uf(n);
  for (const Perm* p : tuple)
    for (int i = 0; i < n; ++i) uf.unite(i, (*p)[static_cast<size_t>(i)]);
  const int root = uf.find(0);
  for (int i = 1; i < n; ++i)
    if (uf.find(i) != root) return false;
  return true;
}

void check_budget(int m, long n) {
  if (m < 1) throw std::invalid_argument("bms brute force: m must be positive");
  double cost = static_cast<double>(n <= 1 ? 1 : n);
  double fact = 1;
  for (long i = 2; i <= n; ++i) fact *= static_cast<double>(i);
  for (int i = 1; i < m; ++i) cost *= fact;
  if (cost > 5e8)
    throw std::runtime_error("bms brute force: enumeration budget exceeded at m=" +
                             std::to_string(m) + ", |mu|=" + std::to_string(n));
}

// Shared enumeration core. Counts tuples (t_1, ..., t_m) with fixed product
// representative and cycle counts summing to L; when `connected` is set only
// tuples whose permutations act transitively are kept.
long count_tuples(int m, const Partition& mu, long L, bool connected, int jobs) {
  const long n = part_sum(mu);
  check_budget(m, n);
  const Perm sigma = class_representative(mu);
  if (n == 0) return 0;
  const std::vector<Perm> perms = all_perms(static_cast<int>(n));
  std::vector<int> ell(perms.size());
  for (size_t i = 0; i < perms.size(); ++i) ell[i] = cycle_count(perms[i]);

  if (m == 1) {
    const bool keep = (cycle_count(sigma) == L) &&
                      (!connected || tuple_transitive({&sigma}, static_cast<int>(n)));
    return keep ? 1 : 0;
  }

  const long outer = static_cast<long>(perms.size());
  std::vector<long> partial(static_cast<size_t>(resolve_jobs(jobs)) + 1, 0);
  parallel_chunks(outer, jobs, [&](int chunk, long begin, long end) {
    long local = 0;
    std::vector<size_t> idx(static_cast<size_t>(m - 1), 0);
    // Depth-first over the free slots t_1..t_{m-1}; the last slot is forced
    // by the fixed product.
    std::function<void(int, const Perm&, long)> walk = [&](int depth, const Perm& prefix,
                                                           long lsum) {
      if (depth == m - 1) {
        const Perm last = compose(inverse(prefix), sigma);
        if (lsum + cycle_count(last) != L) return;
        if (connected) {
          std::vector<const Perm*> tuple;
          for (int d = 0; d < m - 1; ++d) tuple.push_back(&perms[idx[static_cast<size_t>(d)]]);
          tuple.push_back(&last);
          if (!tuple_transitive(tuple, static_cast<int>(n))) return;
        }
        ++local;
        return;
      }
      for (size_t i = 0; i < perms.size(); ++i) {
        idx[static_cast<size_t>(depth)] = i;
        walk(depth + 1, compose(prefix, perms[i]), lsum + ell[i]);
      }
    };
    for (long first = begin; first < end; ++first) {
      idx[0] = static_cast<size_t>(first);
      walk(1, perms[static_cast<size_t>(first)], ell[static_cast<size_t>(first)]);
    }
    partial[static_cast<size_t>(chunk)] += local;
  });
  long total = 0;
  for (long v : partial) total += v;
  return total;
}

}  // namespace

std::optional<long> riemann_hurwitz_L(int m, int g, const Partition& mu) {
  require_partition(mu, "riemann_hurwitz_L");
  if (g < 0) return std::nullopt;
  const long L = 2 + static_cast<long>(m - 1) * part_sum(mu) - part_len(mu) - 2 * g;
  if (L < m) return std::nullopt;
  return L;
}

Rat bms_disconnected_bruteforce(int m, const Partition& mu, long L, int jobs) {
  require_partition(mu, "bms_disconnected_bruteforce");
  if (mu.empty()) throw std::invalid_argument("bms_disconnected_bruteforce: empty partition");
  const long count = count_tuples(m, mu, L, false, jobs);
  Rat weight(1);
  for (long v : mu) weight /= Rat(v);
  return Rat(count) * weight;
}

Rat bms_connected_bruteforce(int m, int g, const Partition& mu, int jobs) {
  require_partition(mu, "bms_connected_bruteforce");
  if (mu.empty()) throw std::invalid_argument("bms_connected_bruteforce: empty partition");
  const auto L = riemann_hurwitz_L(m, g, mu);
  if (!L) return Rat(0);
  const long count = count_tuples(m, mu, *L, true, jobs);
  Rat weight(1);
  for (long v : mu) weight /= Rat(v);
  return Rat(count) * weight;
}

Rat genus0_formula(int m, const Partition& mu) {
  require_partition(mu, "genus0_formula");
  if (mu.empty()) throw std::invalid_argument("genus0_formula: empty partition");
  const long n = part_len(mu);
  const long sz = part_sum(mu);
  Rat acc = Rat(m) * exactmath::falling_factorial(Rat((m - 1) * sz - 1), n - 3);
  for (long v : mu) acc *= exactmath::binomial(Rat(m * v - 1), v);
  return acc;
}

Rat unstable_onepoint(int m, long k) {
  if (k < 1) throw std::invalid_argument("unstable_onepoint: k must be positive");
  using exactmath::factorial;
  return Rat(m) * factorial(m * k - 1) / (factorial(k) * factorial(m * k - k + 1));
}

Rat unstable_twopoint(int m, long k1, long k2) {
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("unstable_twopoint: parts must be positive");
  using exactmath::binomial;
  const long denom = m * (k1 + k2) - k1 - k2;
  return Rat(m) / Rat(denom) * binomial(Rat(m * k1 - 1), k1) * binomial(Rat(m * k2 - 1), k2);
}

}  // namespace bmslab::permoracle
