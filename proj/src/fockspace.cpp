#include "bmslab/fockspace.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "bmslab/parallel.hpp"

namespace bmslab::fockspace {

namespace {

constexpr long kCharacterBudget = 32;

// Beta-numbers of a partition padded to len rows: lambda_t + (len - t),
// strictly decreasing, t = 1..len.
std::vector<long> beta_numbers(const Partition& lambda) {
  const long len = part_len(lambda);
  std::vector<long> b(static_cast<size_t>(len));
  for (long t = 1; t <= len; ++t)
    b[static_cast<size_t>(t - 1)] = lambda[static_cast<size_t>(t - 1)] + (len - t);
  return b;
}

Partition partition_from_betas(std::vector<long> b) {
  std::sort(b.begin(), b.end(), std::greater<long>());
  const long len = static_cast<long>(b.size());
  Partition out;
  for (long t = 1; t <= len; ++t) {
    const long part = b[static_cast<size_t>(t - 1)] - (len - t);
    if (part < 0) throw std::logic_error("partition_from_betas: negative part");
    if (part > 0) out.push_back(part);
  }
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] > out[i - 1]) throw std::logic_error("partition_from_betas: not sorted");
  return out;
}

using CharMemo = std::map<std::pair<Partition, Partition>, mpz_class>;

mpz_class char_rec(const Partition& lambda, const Partition& mu, CharMemo& memo) {
  if (lambda.empty()) return 1;
  if (mu.empty()) return 0;
  const auto key = std::make_pair(lambda, mu);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const long r = mu[0];
  const Partition mu_rest(mu.begin() + 1, mu.end());
  const std::vector<long> b = beta_numbers(lambda);

  mpz_class total = 0;
  for (size_t t = 0; t < b.size(); ++t) {
    const long c = b[t] - r;
    if (c < 0) continue;
    bool occupied = false;
    int between = 0;
    for (size_t s = 0; s < b.size(); ++s) {
      if (s == t) continue;
      if (b[s] == c) {
        occupied = true;
        break;
      }
      if (b[s] > c && b[s] < b[t]) ++between;
    }
    if (occupied) continue;
    std::vector<long> nb = b;
    nb[t] = c;
    const mpz_class sub = char_rec(partition_from_betas(std::move(nb)), mu_rest, memo);
    if (between % 2 == 0)
      total += sub;
    else
      total -= sub;
  }
  memo[key] = total;
  return total;
}

std::mutex& char_mutex() {
  static std::mutex mu;
  return mu;
}

CharMemo& char_memo() {
  static CharMemo memo;
  return memo;
}

}  // namespace

mpz_class character(const Partition& lambda, const Partition& mu) {
  require_partition(lambda, "character");
  require_partition(mu, "character");
  if (part_sum(lambda) != part_sum(mu))
    throw std::invalid_argument("character: size mismatch between the two partitions");
  std::lock_guard<std::mutex> lock(char_mutex());
  return char_rec(lambda, mu, char_memo());
}

mpz_class hook_dimension(const Partition& lambda) {
  require_partition(lambda, "hook_dimension");
  mpz_class num = exactmath::factorial(part_sum(lambda)).raw().get_num();
  for (const auto& row : hook_lengths(lambda))
    for (long h : row) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), mpz_class(h).get_mpz_t());
  return num;
}

HSeries content_product(const Partition& lambda, int m, int order) {
  if (order < 0) throw std::invalid_argument("content_product: negative order");
  HSeries acc = HSeries::constant(Rat(1), order);
  if (m == 0) return acc;
  HSeries base = acc;
  for (long c : cell_contents(lambda)) {
    HSeries factor = HSeries::constant(Rat(1), order);
    if (order >= 1) factor.set_coeff(1, Rat(c));
    base = base * factor;
  }
  for (int i = 0; i < std::abs(m); ++i) acc = acc * base;
  if (m < 0) acc = acc.inverse().truncated(order);
  return acc;
}

namespace {

std::mutex& vev_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::tuple<int, Partition, int>, HSeries>& vev_memo() {
  static std::map<std::tuple<int, Partition, int>, HSeries> memo;
  return memo;
}

}  // namespace

HSeries disconnected_vev(int m, const Partition& mu, int order, int jobs) {
  if (m < 1) throw std::invalid_argument("disconnected_vev: at least one factor required");
  require_partition(mu, "disconnected_vev");
  if (order < 0) throw std::invalid_argument("disconnected_vev: negative order");
  const long n = part_sum(mu);
  if (n > kCharacterBudget)
    throw std::runtime_error("disconnected_vev: character budget exceeded");

  const auto key = std::make_tuple(m, mu, order);
  {
    std::lock_guard<std::mutex> lock(vev_mutex());
    if (auto it = vev_memo().find(key); it != vev_memo().end()) return it->second;
  }

  const std::vector<Partition> lambdas = partitions_of(n);
  const Rat inv_nfact = Rat(1) / exactmath::factorial(n);
  const int chunk_count = resolve_jobs(jobs);
  std::vector<HSeries> partial(static_cast<size_t>(std::max(chunk_count, 1)), HSeries(order));
  parallel_chunks(static_cast<long>(lambdas.size()), jobs, [&](int chunk, long b, long e) {
    HSeries acc(order);
    for (long i = b; i < e; ++i) {
      const Partition& lam = lambdas[static_cast<size_t>(i)];
      const mpz_class chi = character(lam, mu);
      if (chi == 0) continue;
      const Rat weight =
          Rat::from_mpq(mpq_class(hook_dimension(lam) * chi)) * inv_nfact;
      acc = acc + weight * content_product(lam, m, order);
    }
    partial[static_cast<size_t>(chunk)] = acc;
  });
  HSeries total(order);
  for (const auto& p : partial) total = total + p;

  Rat scale(1);
  for (long part : mu) scale *= Rat(1, part);
  total = scale * total;

  std::lock_guard<std::mutex> lock(vev_mutex());
  vev_memo().emplace(key, total);
  return total;
}

HSeries connected_correlator(int m, const Partition& mu, int order) {
  require_partition(mu, "connected_correlator");
  const long total_size = part_sum(mu);
  const int n = part_len(mu);
  const int block_order = order + static_cast<int>(total_size);
  HSeries result(order);
  for (const auto& blocks : set_partitions(n)) {
    HSeries term = HSeries::constant(Rat(1), block_order);
    for (const auto& block : blocks) {
      std::vector<long> parts;
      for (int pos : block) parts.push_back(mu[static_cast<size_t>(pos)]);
      const Partition mu_b = normalized_partition(parts);
      const HSeries block_vev = disconnected_vev(m, mu_b, block_order)
                                    .shifted(-static_cast<int>(part_sum(mu_b)));
      term = term * block_vev;
    }
    const long nblocks = static_cast<long>(blocks.size());
    Rat weight = exactmath::factorial(nblocks - 1);
    if (nblocks % 2 == 0) weight = -weight;
    result = result + (weight * term).truncated(order);
  }
  return result.truncated(order);
}

Rat bms_fock(int m, int g, const Partition& mu) {
  if (m < 1) throw std::invalid_argument("bms_fock: at least one factor required");
  require_partition(mu, "bms_fock");
  if (g < 0) return Rat(0);
  const int target = 2 * g - 2 + part_len(mu);
  return connected_correlator(m, mu, target).coeff(target);
}

Rat bms_disconnected_fock(int m, const Partition& mu, long L) {
  if (m < 1) throw std::invalid_argument("bms_disconnected_fock: at least one factor required");
  require_partition(mu, "bms_disconnected_fock");
  const long e = static_cast<long>(m) * part_sum(mu) - L;
  if (e < 0) return Rat(0);
  return disconnected_vev(m, mu, static_cast<int>(e)).coeff(static_cast<int>(e));
}

// ---------------------------------------------------------------------------

bool slot_filled(const Partition& lambda, Half twice_slot) {
  if (twice_slot % 2 == 0)
    throw std::invalid_argument("slot_filled: slot must be a half-integer");
  const long len = part_len(lambda);
  for (long t = 1; t <= len; ++t)
    if (2 * lambda[static_cast<size_t>(t - 1)] - 2 * t + 1 == twice_slot) return true;
  return twice_slot <= -2 * len - 1;
}

FockVector FockVector::basis(const Partition& lambda, int trunc) {
  FockVector v;
  v.add(lambda, HSeries::constant(Rat(1), trunc));
  return v;
}

void FockVector::add(const Partition& lambda, const HSeries& c) {
  auto it = t_.find(lambda);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(lambda, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) t_.erase(it);
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  FockVector out = a;
  for (const auto& [lam, c] : b.t_) out.add(lam, c);
  return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  FockVector out = a;
  for (const auto& [lam, c] : b.t_) out.add(lam, -c);
  return out;
}

FockVector operator*(const Rat& s, FockVector v) {
  if (s.is_zero()) return FockVector();
  for (auto& [lam, c] : v.t_) c = s * c;
  return v;
}

namespace {

// Explicit slot list of the partition down to depth rows.
std::vector<Half> slot_list(const Partition& lambda, long depth) {
  std::vector<Half> slots;
  const long len = part_len(lambda);
  for (long t = 1; t <= std::max(depth, len); ++t) {
    const long part = t <= len ? lambda[static_cast<size_t>(t - 1)] : 0;
    slots.push_back(2 * part - 2 * t + 1);
  }
  return slots;
}

// Action of E_{row,col} on a single basis partition: the resulting basis
// partition and sign, if any.
bool e_on_basis(Half row2, Half col2, const Partition& lambda, Partition* out, int* sign) {
  if (row2 == col2) {
    const bool filled = slot_filled(lambda, col2);
    if (col2 > 0 && filled) {
      *out = lambda;
      *sign = 1;
      return true;
    }
    if (col2 < 0 && !filled) {
      *out = lambda;
      *sign = -1;
      return true;
    }
    return false;
  }
  if (!slot_filled(lambda, col2) || slot_filled(lambda, row2)) return false;
  const long len = part_len(lambda);
  const long depth =
      std::max<long>(len, (std::max(std::abs(row2), std::abs(col2)) + 1) / 2 + len + 2);
  std::vector<Half> slots = slot_list(lambda, depth);
  const Half lo = std::min(row2, col2);
  const Half hi = std::max(row2, col2);
  int between = 0;
  for (Half s : slots)
    if (s > lo && s < hi) ++between;
  for (Half& s : slots)
    if (s == col2) s = row2;
  std::sort(slots.begin(), slots.end(), std::greater<Half>());
  Partition mu;
  for (long t = 1; t <= static_cast<long>(slots.size()); ++t) {
    const Half s = slots[static_cast<size_t>(t - 1)];
    const long part = (s + 2 * t - 1) / 2;
    if (part < 0) throw std::logic_error("e_on_basis: negative part");
    if (part > 0) mu.push_back(part);
  }
  *out = mu;
  *sign = between % 2 == 0 ? 1 : -1;
  return true;
}

}  // namespace

FockVector e_wedge_apply(Half row2, Half col2, const FockVector& v) {
  FockVector out;
  for (const auto& [lam, c] : v.terms()) {
    Partition target;
    int sign = 0;
    if (!e_on_basis(row2, col2, lam, &target, &sign)) continue;
    out.add(target, sign == 1 ? c : -c);
  }
  return out;
}

FockVector alpha_apply(long n, const FockVector& v) {
  if (n == 0) throw std::invalid_argument("alpha_apply: nonzero index required");
  FockVector out;
  for (const auto& [lam, c] : v.terms()) {
    const long depth = part_len(lam) + std::abs(n) + 2;
    FockVector single;
    single.add(lam, c);
    for (Half col : slot_list(lam, depth))
      out = out + e_wedge_apply(col - 2 * n, col, single);
  }
  return out;
}

FockVector weighted_shift_apply(const UPoly& f, long a, const FockVector& v) {
  FockVector out;
  for (const auto& [lam, c] : v.terms()) {
    if (a == 0) {
      Rat eigen(0);
      for (long t = 1; t <= part_len(lam); ++t) {
        eigen += f.eval(Rat(2 * lam[static_cast<size_t>(t - 1)] - 2 * t + 1, 2));
        eigen -= f.eval(Rat(-2 * t + 1, 2));
      }
      out.add(lam, eigen * c);
      continue;
    }
    const long depth = part_len(lam) + std::abs(a) + 2;
    FockVector single;
    single.add(lam, c);
    for (Half col : slot_list(lam, depth)) {
      const Rat weight = f.eval(Rat(col, 2));
      if (weight.is_zero()) continue;
      out = out + weight * e_wedge_apply(col + 2 * a, col, single);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using EntryMap = std::map<std::pair<Half, Half>, HSeries>;

EntryMap window_mul(const EntryMap& a, const EntryMap& b) {
  std::map<Half, std::vector<std::pair<Half, HSeries>>> b_by_row;
  for (const auto& [rc, s] : b) b_by_row[rc.first].emplace_back(rc.second, s);
  EntryMap out;
  for (const auto& [rc, s] : a) {
    auto it = b_by_row.find(rc.second);
    if (it == b_by_row.end()) continue;
    for (const auto& [col, t] : it->second) {
      const HSeries prod = s * t;
      const auto key = std::make_pair(rc.first, col);
      auto jt = out.find(key);
      if (jt == out.end())
        out.emplace(key, prod);
      else
        jt->second = jt->second + prod;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

HSeries WindowedOperator::exact_entry(Half row2, Half col2) const {
  if (!entry_exact(row2, col2))
    throw std::out_of_range("WindowedOperator: entry outside the exact sub-window");
  auto it = entries_.find(std::make_pair(row2, col2));
  return it == entries_.end() ? HSeries(order_) : it->second;
}

WindowedOperator windowed_conjugation_oracle(int m, long k, long W, int order) {
  if (k < 1) throw std::invalid_argument("windowed_conjugation_oracle: positive shift required");
  if (order < 0) throw std::invalid_argument("windowed_conjugation_oracle: negative order");
  if (W < k + order)
    throw std::invalid_argument("windowed_conjugation_oracle: window too small for the order");

  const int internal = order + static_cast<int>(k);
  const Half lmin2 = -2 * W + 1;
  const Half lmax2 = 2 * W - 1;

  EntryMap eplus, eminus, middle;
  for (Half col = lmin2; col <= lmax2; col += 2) {
    Rat fact(1);
    for (long t = 0; col - 2 * t >= lmin2; ++t) {
      if (t > 0) fact *= Rat(1, t);
      eplus.emplace(std::make_pair(col - 2 * t, col), HSeries::constant(fact, internal));
      const Rat alt = t % 2 == 0 ? fact : -fact;
      eminus.emplace(std::make_pair(col - 2 * t, col), HSeries::constant(alt, internal));
    }
    if (col + 2 * k <= lmax2) {
      HSeries ratio = HSeries::constant(Rat(1), internal);
      for (long i = 1; i <= k; ++i) {
        HSeries factor = HSeries::constant(Rat(1), internal);
        factor.set_coeff(1, Rat(col + 2 * i - 1, 2));
        ratio = ratio * factor;
      }
      middle.emplace(std::make_pair(col + 2 * k, col), ratio.pow(m));
    }
  }

  EntryMap product = window_mul(window_mul(eplus, middle), eminus);
  EntryMap entries;
  const Rat inv_k(1, k);
  for (const auto& [rc, s] : product)
    entries.emplace(rc, s.shifted(-static_cast<int>(k), inv_k));

  const HSeries id_part =
      disconnected_vev(m, Partition{k}, internal).shifted(-static_cast<int>(k));
  return WindowedOperator(m, k, W, order, std::move(entries), id_part);
}

}  // namespace bmslab::fockspace
