#include "bmslab/aops.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "bmslab/faulhaber.hpp"
#include "bmslab/linalg.hpp"
#include "bmslab/series.hpp"

namespace bmslab::aops {

using exactmath::HSeries;

namespace {

std::string ivar(int j) { return "i" + std::to_string(j); }

void compositions_rec(int length, int total, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == length - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions_rec(length, total - v, cur, out);
    cur.pop_back();
  }
}

// All ordered tuples of `length` nonnegative integers summing to `total`.
std::vector<std::vector<int>> compositions(int length, int total) {
  std::vector<std::vector<int>> out;
  if (length <= 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur;
  compositions_rec(length, total, cur, out);
  return out;
}

// All ordered tuples of `length` nonnegative integers summing to at most
// `bound`.
std::vector<std::vector<int>> simplex_points(int length, int bound) {
  std::vector<std::vector<int>> out;
  for (int total = 0; total <= bound; ++total) {
    auto cs = compositions(length, total);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

Rat sign_rat(long s) { return s % 2 == 0 ? Rat(1) : Rat(-1); }

// prod_{i=0}^{k-1} (1 + h (y + i + 1/2)) at the numeric point y.
HSeries p_series_at(long k, const Rat& y, int trunc) {
  HSeries out = HSeries::constant(Rat(1), trunc);
  for (long i = 0; i < k; ++i) {
    HSeries f = HSeries::constant(Rat(1), trunc);
    if (trunc >= 1) f.set_coeff(1, y + Rat(2 * i + 1, 2));
    out = out * f;
  }
  return out;
}

HSeries p_power_series_at(int m, long k, const Rat& y, int trunc) {
  return p_series_at(k, y, trunc).pow(m);
}

// prod_{i=0}^{k-1} (1 - h (-y + i + 1/2)) at the numeric point y.
HSeries ptilde_series_at(long k, const Rat& y, int trunc) {
  HSeries out = HSeries::constant(Rat(1), trunc);
  for (long i = 0; i < k; ++i) {
    HSeries f = HSeries::constant(Rat(1), trunc);
    if (trunc >= 1) f.set_coeff(1, y - Rat(2 * i + 1, 2));
    out = out * f;
  }
  return out;
}

// Strict-chain sum over 0 <= g_1 < ... < g_d < window of prod_j (x + g_j),
// by direct enumeration.
Rat chain_sum_value(const Rat& x, long window, int d) {
  if (d == 0) return Rat(1);
  if (window <= 0) return Rat(0);
  Rat acc(0);
  for (long t = d - 1; t < window; ++t)
    acc += (x + Rat(t)) * chain_sum_value(x, t, d - 1);
  return acc;
}

// (k)_s = k (k-1) ... (k-s+1) as a polynomial in k.
UPoly falling_poly(int s) {
  UPoly out{Rat(1)};
  for (int i = 0; i < s; ++i)
    out = out * UPoly(std::vector<Rat>{Rat(-i), Rat(1)});
  return out;
}

const MPoly& r_poly_ref(int p, int m, bool tilde) {
  static std::map<std::tuple<int, int, bool>, MPoly> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(p, m, tilde);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const MPoly kv = MPoly::variable("k");
  const MPoly lv = MPoly::variable("l");
  MPoly out;
  for (const auto& beta : compositions(m, p)) {
    MPoly term = MPoly::constant(Rat(1));
    for (int j = 1; j <= m; ++j) {
      const int b = beta[static_cast<size_t>(j - 1)];
      if (b == 0) continue;
      MPoly x = lv + MPoly::constant(Rat(1, 2));
      for (int j2 = j + 1; j2 <= m; ++j2) x = x - MPoly::variable(ivar(j2));
      const MPoly window =
          tilde ? kv + MPoly::variable(ivar(j)) : kv - MPoly::variable(ivar(j));
      const MPoly base = tilde ? exactmath::T_tilde_poly(b) : exactmath::T_poly(b);
      term = term * base.substitute("x", x).substitute("k", window);
    }
    out = out + term;
  }
  return memo.emplace(key, std::move(out)).first->second;
}

const std::map<std::vector<int>, MPoly>& q_coeffs_ref(int p, int m);

Rat q_eval(const MPoly& q, const Rat& k, const Rat& l) {
  return q.eval({{"k", k}, {"l", l}});
}

Rat closed_E(int m, long k, long q, int p, const Rat& l) {
  const auto& qc = q_coeffs_ref(p, m);
  const long smax = std::min<long>(2 * p, q + k);
  Rat total(0);
  for (long sigma = 0; sigma <= smax; ++sigma) {
    for (const auto& sv : compositions(m, static_cast<int>(sigma))) {
      const MPoly& qpoly = qc.at(sv);
      if (qpoly.is_zero()) continue;
      Rat term = q_eval(qpoly, Rat(k), l);
      for (int j = 0; j < m; ++j)
        term *= exactmath::falling_factorial(Rat(k), sv[static_cast<size_t>(j)]);
      term *= exactmath::falling_factorial(Rat(m * k - sigma), k + q - sigma);
      term /= Rat(k) * exactmath::factorial(k + q - sigma);
      total += term;
    }
  }
  return total;
}

Rat direct_E(int m, long k, long q, int p, const Rat& l) {
  const long t = q + k;
  const int trunc = static_cast<int>(q + p + k);
  HSeries acc(trunc);
  for (long j = 0; j <= t; ++j) {
    const Rat c = sign_rat(j) * exactmath::binomial(Rat(t), j);
    acc = acc + c * p_power_series_at(m, k, l - Rat(j), trunc);
  }
  return acc.coeff(trunc) / (Rat(k) * exactmath::factorial(t));
}

Rat closed_Id(int m, long k, int p) {
  const auto& qc = q_coeffs_ref(p + 1, m);
  const long smax = std::min<long>(2 * p + 2, k - 1);
  Rat total(0);
  for (long sigma = 0; sigma <= smax; ++sigma) {
    for (const auto& sv : compositions(m, static_cast<int>(sigma))) {
      const MPoly& qpoly = qc.at(sv);
      if (qpoly.is_zero()) continue;
      Rat term = q_eval(qpoly, Rat(k), Rat(-1, 2));
      for (int j = 0; j < m; ++j)
        term *= exactmath::falling_factorial(Rat(k), sv[static_cast<size_t>(j)]);
      term *= exactmath::falling_factorial(Rat(m * k - sigma), k - 1 - sigma);
      term /= Rat(k) * Rat(k) * exactmath::factorial(k - 1 - sigma);
      total += term;
    }
  }
  return total;
}

Rat direct_Id(int m, long k, int p) {
  const int trunc = static_cast<int>(p + k);
  HSeries acc(trunc);
  for (long j = 0; j <= k - 1; ++j) {
    const Rat c = sign_rat(j) * exactmath::binomial(Rat(k - 1), j);
    acc = acc + c * p_power_series_at(m, k, Rat(-1 - 2 * j, 2), trunc);
  }
  return acc.coeff(trunc) / (Rat(k) * exactmath::factorial(k));
}

const std::map<std::vector<int>, MPoly>& q_coeffs_ref(int p, int m) {
  static std::map<std::pair<int, int>, std::map<std::vector<int>, MPoly>> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(p, m);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  // Chain factors with the x slot shifted by a known constant and the window
  // narrowed by a known offset, keyed by (depth, shift, offset).
  std::map<std::tuple<int, int, int>, MPoly> factor_cache;
  const auto factor = [&](int b, int shift, int offset) -> const MPoly& {
    const auto fkey = std::make_tuple(b, shift, offset);
    auto it = factor_cache.find(fkey);
    if (it == factor_cache.end()) {
      const MPoly x = MPoly::variable("l") + MPoly::constant(Rat(1 - 2 * shift, 2));
      const MPoly w = MPoly::variable("k") - MPoly::constant(Rat(offset));
      it = factor_cache
               .emplace(fkey, exactmath::T_poly(b).substitute("x", x).substitute("k", w))
               .first;
    }
    return it->second;
  };

  const auto grid_points = simplex_points(m, 2 * p);
  const auto betas = compositions(m, p);
  std::map<std::vector<int>, MPoly> grid;
  for (const auto& pt : grid_points) {
    MPoly val;
    for (const auto& beta : betas) {
      MPoly term = MPoly::constant(Rat(1));
      for (int j = 1; j <= m; ++j) {
        const int b = beta[static_cast<size_t>(j - 1)];
        if (b == 0) continue;
        int shift = 0;
        for (int j2 = j + 1; j2 <= m; ++j2) shift += pt[static_cast<size_t>(j2 - 1)];
        term = term * factor(b, shift, pt[static_cast<size_t>(j - 1)]);
      }
      val = val + term;
    }
    grid.emplace(pt, std::move(val));
  }

  std::map<std::vector<int>, MPoly> out;
  for (const auto& sv : grid_points) {
    MPoly acc;
    std::vector<int> jv(static_cast<size_t>(m), 0);
    while (true) {
      Rat c(1);
      for (int j = 0; j < m; ++j) {
        const size_t uj = static_cast<size_t>(j);
        c *= sign_rat(sv[uj] - jv[uj]) * exactmath::binomial(Rat(sv[uj]), jv[uj]);
      }
      acc = acc + c * grid.at(jv);
      int pos = m - 1;
      while (pos >= 0 && jv[static_cast<size_t>(pos)] == sv[static_cast<size_t>(pos)]) {
        jv[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++jv[static_cast<size_t>(pos)];
    }
    Rat scale(1);
    for (int j = 0; j < m; ++j) scale /= exactmath::factorial(sv[static_cast<size_t>(j)]);
    out.emplace(sv, scale * acc);
  }

  // Re-expansion check at points off the construction grid.
  std::mt19937 rng(20240915u);
  for (int trial = 0; trial < 8; ++trial) {
    const long k0 = static_cast<long>(rng() % 11) - 5;
    const Rat l0 = Rat(2 * static_cast<long>(rng() % 8) - 7, 2);
    std::vector<long> iv(static_cast<size_t>(m), 0);
    for (int j = 0; j < m; ++j)
      iv[static_cast<size_t>(j)] = static_cast<long>(rng() % (2 * p + 4));
    Rat lhs(0);
    for (const auto& [sv, qpoly] : out) {
      if (qpoly.is_zero()) continue;
      Rat term = q_eval(qpoly, Rat(k0), l0);
      for (int j = 0; j < m; ++j)
        term *= exactmath::falling_factorial(Rat(iv[static_cast<size_t>(j)]),
                                             sv[static_cast<size_t>(j)]);
      lhs += term;
    }
    if (lhs != r_value(p, m, k0, l0, iv))
      throw std::runtime_error("q_coeffs: re-expansion mismatch off the grid");
  }

  return memo.emplace(key, std::move(out)).first->second;
}

const MPoly& s_numerator_ref(int m, int p, long q) {
  static std::map<std::tuple<int, int, long>, MPoly> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(m, p, q);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  const long kdeg = 6 * p + q + (m > 2 ? m - 2 : 0);
  const long ksamples = kdeg + 2;
  const int lnodes = 2 * p + 1;
  const UPoly poles = pole_product(m, 2 * p - 1);
  const auto sample = [&](long k0, const Rat& l0) {
    Rat v = acheck_E_coeff(m, k0, q, p, l0);
    v /= operator_prefactor(m, k0);
    v *= poles.eval(Rat(k0));
    for (long j = 1; j <= q; ++j) v *= Rat(k0 + j);
    return v;
  };

  std::vector<UPoly> per_k;
  for (long k0 = 1; k0 <= ksamples; ++k0) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (int e = 0; e < lnodes; ++e)
      pts.emplace_back(Rat(2 * e + 1, 2), sample(k0, Rat(2 * e + 1, 2)));
    per_k.push_back(exactmath::lagrange_interpolate(pts));
  }

  MPoly out;
  for (int e = 0; e < lnodes; ++e) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (long k0 = 1; k0 <= ksamples; ++k0)
      pts.emplace_back(Rat(k0), per_k[static_cast<size_t>(k0 - 1)].coeff(e));
    const UPoly ck = exactmath::lagrange_interpolate(pts);
    if (ck.degree() > kdeg)
      throw std::runtime_error("s_numerator: degree bound in k exceeded");
    out = out + MPoly::from_upoly(ck, "k") *
                    MPoly::from_upoly(UPoly::monomial(e, Rat(1)), "l");
  }

  for (long t = 1; t <= 3; ++t) {
    const long k0 = ksamples + t;
    const Rat l0 = Rat(2 * (lnodes + t) - 1, 2);
    if (out.eval({{"k", Rat(k0)}, {"l", l0}}) != sample(k0, l0))
      throw std::runtime_error("s_numerator: held-out validation failed");
  }

  return memo.emplace(key, std::move(out)).first->second;
}

const MPoly& s_id_numerator_ref(int m, int p) {
  static std::map<std::pair<int, int>, MPoly> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(m, p);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  const UPoly poles = pole_product(m, 2 * p + 1);
  const auto sample = [&](long k0) {
    Rat v = acheck_Id_coeff(m, k0, p);
    v /= operator_prefactor(m, k0);
    v *= poles.eval(Rat(k0));
    v *= Rat(k0) * Rat(k0) * Rat(m * k0 - k0 + 1);
    return v;
  };

  const long cap = 10 * (p > 0 ? p : 1) + 3 * m + 24;
  const long held = 3;
  std::vector<std::pair<Rat, Rat>> pts;
  UPoly candidate;
  bool found = false;
  for (long k0 = 1; k0 <= cap && !found; ++k0) {
    pts.emplace_back(Rat(k0), sample(k0));
    const long n = static_cast<long>(pts.size());
    if (n < held + 1) continue;
    const std::vector<std::pair<Rat, Rat>> head(pts.begin(), pts.end() - held);
    const UPoly c = exactmath::lagrange_interpolate(head);
    bool ok = true;
    for (long t = n - held; t < n; ++t)
      ok = ok && c.eval(pts[static_cast<size_t>(t)].first) ==
                     pts[static_cast<size_t>(t)].second;
    if (ok) {
      candidate = c;
      found = true;
    }
  }
  if (!found)
    throw std::runtime_error("s_id_numerator: no stable interpolant within the sample cap");

  if (p >= 0) {
    if (!candidate.divide_exact(UPoly::monomial(2, Rat(1))))
      throw std::runtime_error("s_id_numerator: numerator not divisible by k^2");
    if (!candidate.divide_exact(UPoly(std::vector<Rat>{Rat(1), Rat(m - 1)})))
      throw std::runtime_error(
          "s_id_numerator: numerator not divisible by (m-1)k + 1");
  }

  return memo.emplace(key, MPoly::from_upoly(candidate, "k")).first->second;
}

}  // namespace

MPoly p_poly(long k) {
  if (k < 0) throw std::domain_error("p_poly: negative window");
  MPoly out = MPoly::constant(Rat(1)).with_vars({"l", "h"});
  const MPoly lv = MPoly::variable("l");
  const MPoly hv = MPoly::variable("h");
  for (long i = 0; i < k; ++i)
    out = out * (MPoly::constant(Rat(1)) +
                 hv * (lv + MPoly::constant(Rat(2 * i + 1, 2))));
  return out;
}

MPoly delta_power_p(long t, long k) {
  if (t < 0) throw std::domain_error("delta_power_p: negative order");
  MPoly cur = p_poly(k);
  const MPoly lshift = MPoly::variable("l") - MPoly::constant(Rat(1));
  for (long s = 0; s < t; ++s) cur = cur - cur.substitute("l", lshift);
  return cur;
}

Rat r_value(int p, int m, long k, const Rat& l, const std::vector<long>& iv) {
  if (p < 0) throw std::invalid_argument("r_value: negative h exponent");
  if (m < 1) throw std::invalid_argument("r_value: m must be at least 1");
  if (static_cast<int>(iv.size()) != m)
    throw std::invalid_argument("r_value: offset count must equal m");
  for (long i : iv)
    if (i < 0) throw std::invalid_argument("r_value: negative window offset");

  const auto offset_after = [&](int j) {
    Rat s(0);
    for (int j2 = j + 1; j2 <= m; ++j2) s += Rat(iv[static_cast<size_t>(j2 - 1)]);
    return s;
  };

  Rat chainpoly(0);
  for (const auto& beta : compositions(m, p)) {
    Rat term(1);
    for (int j = 1; j <= m; ++j) {
      const Rat x = l - offset_after(j) + Rat(1, 2);
      const Rat window = Rat(k - iv[static_cast<size_t>(j - 1)]);
      term *= exactmath::T_poly(beta[static_cast<size_t>(j - 1)])
                  .eval({{"x", x}, {"k", window}});
    }
    chainpoly += term;
  }

  bool windows_ok = k >= 0;
  for (long i : iv) windows_ok = windows_ok && i <= k;
  if (windows_ok) {
    HSeries prod = HSeries::constant(Rat(1), p);
    for (int j = 1; j <= m; ++j)
      prod = prod * p_series_at(k - iv[static_cast<size_t>(j - 1)],
                                l - offset_after(j), p);
    const Rat product_route = prod.coeff(p);

    Rat chain_route(0);
    for (const auto& beta : compositions(m, p)) {
      Rat term(1);
      for (int j = 1; j <= m; ++j)
        term *= chain_sum_value(l - offset_after(j) + Rat(1, 2),
                                k - iv[static_cast<size_t>(j - 1)],
                                beta[static_cast<size_t>(j - 1)]);
      chain_route += term;
    }

    if (product_route != chainpoly || chain_route != chainpoly)
      throw std::logic_error("r_value: evaluation routes disagree");
  }
  return chainpoly;
}

MPoly r_poly(int p, int m) {
  if (p < 0 || m < 1) throw std::invalid_argument("r_poly: invalid arguments");
  return r_poly_ref(p, m, false);
}

MPoly r_tilde_poly(int p, int m) {
  if (p < 0 || m < 1) throw std::invalid_argument("r_tilde_poly: invalid arguments");
  return r_poly_ref(p, m, true);
}

std::map<std::vector<int>, MPoly> q_coeffs(int p, int m) {
  if (p < 0 || m < 1) throw std::invalid_argument("q_coeffs: invalid arguments");
  return q_coeffs_ref(p, m);
}

Rat acheck_E_coeff(int m, long k, long q, int p, const Rat& l) {
  if (m < 1) throw std::invalid_argument("acheck_E_coeff: m must be at least 1");
  if (k < 1) throw std::invalid_argument("acheck_E_coeff: k must be at least 1");
  if (p < 0) throw std::invalid_argument("acheck_E_coeff: negative h exponent");
  if (q + k < 0) return Rat(0);
  const Rat closed = closed_E(m, k, q, p, l);
  const Rat direct = direct_E(m, k, q, p, l);
  if (closed != direct)
    throw std::logic_error("acheck_E_coeff: closed form " + closed.str() +
                           " disagrees with direct evaluation " + direct.str());
  return closed;
}

Rat acheck_Id_coeff(int m, long k, int p) {
  if (m < 1) throw std::invalid_argument("acheck_Id_coeff: m must be at least 1");
  if (k < 1) throw std::invalid_argument("acheck_Id_coeff: k must be at least 1");
  if (p < -1) throw std::invalid_argument("acheck_Id_coeff: p must be at least -1");
  const Rat closed = closed_Id(m, k, p);
  const Rat direct = direct_Id(m, k, p);
  if (closed != direct)
    throw std::logic_error("acheck_Id_coeff: closed form " + closed.str() +
                           " disagrees with direct evaluation " + direct.str());
  return closed;
}

Rat operator_prefactor(int m, long k) {
  if (m < 2) throw std::invalid_argument("operator_prefactor: m must be at least 2");
  if (k < 1) throw std::invalid_argument("operator_prefactor: k must be at least 1");
  return exactmath::factorial(static_cast<long>(m) * k - m) /
         (exactmath::factorial(k) * exactmath::factorial(static_cast<long>(m) * k - k - 1));
}

UPoly pole_product(int m, long jmax) {
  if (m < 1) throw std::invalid_argument("pole_product: m must be at least 1");
  UPoly out{Rat(1)};
  for (long j = m; j <= jmax; ++j) {
    if (j % m == 0) continue;
    out = out * UPoly(std::vector<Rat>{Rat(-j, m), Rat(1)});
  }
  return out;
}

MPoly s_numerator(int m, int p, long q) {
  if (m < 2) throw std::invalid_argument("s_numerator: m must be at least 2");
  if (p < 0) throw std::invalid_argument("s_numerator: negative h exponent");
  if (q < 1) throw std::invalid_argument("s_numerator: q must be at least 1");
  return s_numerator_ref(m, p, q);
}

MPoly s_id_numerator(int m, int p) {
  if (m < 2) throw std::invalid_argument("s_id_numerator: m must be at least 2");
  if (p < -1) throw std::invalid_argument("s_id_numerator: p must be at least -1");
  return s_id_numerator_ref(m, p);
}

RatFun rho(int p, int m) {
  if (p < 0) throw std::invalid_argument("rho: negative h exponent");
  if (m < 1) throw std::invalid_argument("rho: m must be at least 1");
  const auto& qc = q_coeffs_ref(p, m);
  RatFun total("k", UPoly(), UPoly{Rat(1)});
  for (long sigma = 0; sigma <= 2 * p; ++sigma) {
    UPoly v;
    for (const auto& sv : compositions(m, static_cast<int>(sigma))) {
      const MPoly& qpoly = qc.at(sv);
      if (qpoly.is_zero()) continue;
      const UPoly qk = qpoly.substitute("l", Rat(-1, 2)).to_upoly("k");
      UPoly ff{Rat(1)};
      for (int j = 0; j < m; ++j) ff = ff * falling_poly(sv[static_cast<size_t>(j)]);
      v += qk * ff;
    }
    if (v.is_zero()) continue;
    UPoly num{Rat(1)};
    UPoly den{Rat(1)};
    for (long i = 0; i < sigma; ++i) {
      num = num * UPoly(std::vector<Rat>{Rat(-1 - i), Rat(1)});
      den = den * UPoly(std::vector<Rat>{Rat(-i), Rat(m)});
    }
    total = total + RatFun("k", num * v, den);
  }
  return total;
}

Rat adagger_E_coeff(int m, long r, long q, int p, const Rat& l) {
  if (m < 1) throw std::invalid_argument("adagger_E_coeff: m must be at least 1");
  if (r < 1) throw std::invalid_argument("adagger_E_coeff: r must be at least 1");
  if (p < 0) throw std::invalid_argument("adagger_E_coeff: negative h exponent");
  if (q < r) return Rat(0);

  const auto& qc = q_coeffs_ref(p, m);
  const long smax = std::min<long>(2 * p, q - r);
  Rat closed(0);
  for (long sigma = 0; sigma <= smax; ++sigma) {
    for (const auto& sv : compositions(m, static_cast<int>(sigma))) {
      const MPoly& qpoly = qc.at(sv);
      if (qpoly.is_zero()) continue;
      Rat term = q_eval(qpoly, Rat(-r), l);
      for (int j = 0; j < m; ++j)
        term *= exactmath::rising_factorial(Rat(r), sv[static_cast<size_t>(j)]);
      term *= exactmath::rising_factorial(Rat(m * r + sigma), q - r - sigma);
      term /= Rat(r) * exactmath::factorial(q - r - sigma);
      closed += term;
    }
  }
  closed = sign_rat(q - r) * closed;

  const int trunc = static_cast<int>(q + p - r);
  HSeries acc(trunc);
  for (long j = 0; j <= q - r; ++j) {
    const Rat c = sign_rat(j) * exactmath::binomial(Rat(q - r), j);
    acc = acc + c * ptilde_series_at(r, l - Rat(j), trunc).inverse().pow(m);
  }
  const Rat direct = acc.coeff(trunc) / (Rat(r) * exactmath::factorial(q - r));

  if (closed != direct)
    throw std::logic_error("adagger_E_coeff: closed form " + closed.str() +
                           " disagrees with direct evaluation " + direct.str());
  return closed;
}

Rat residue_constant(int m, long r) {
  if (m < 1 || r < 1) throw std::invalid_argument("residue_constant: invalid arguments");
  const Rat c = exactmath::rising_factorial(Rat(static_cast<long>(m) * r - r + 1), m + r - 1) /
                exactmath::factorial(r - 1);
  return sign_rat(m + 1) * c;
}

bool residue_relation_check(int m, long r, long q, int p, const Rat& l) {
  if (m < 2) throw std::invalid_argument("residue_relation_check: m must be at least 2");
  if (r < 1) throw std::invalid_argument("residue_relation_check: r must be at least 1");
  if (q < 1) throw std::invalid_argument("residue_relation_check: q must be at least 1");
  if (p < 0) throw std::invalid_argument("residue_relation_check: negative h exponent");

  const UPoly sl = s_numerator_ref(m, p, q).substitute("l", l).to_upoly("k");
  UPoly den = pole_product(m, 2 * p - 1);
  for (long j = 1; j <= q; ++j)
    den = den * UPoly(std::vector<Rat>{Rat(j), Rat(1)});
  const RatFun f("k", sl, den);

  const Rat at(-r);
  Rat lhs(0);
  if (f.den().eval(at).is_zero()) {
    const UPoly dden = f.den().derivative();
    if (dden.eval(at).is_zero())
      throw std::logic_error("residue_relation_check: pole of order above one");
    lhs = f.num().eval(at) / dden.eval(at);
  }
  const Rat rhs = residue_constant(m, r) * adagger_E_coeff(m, r, q, p, l);
  return lhs == rhs;
}

UPoly euler_weighted_difference(int p, int m) {
  if (p < 0 || m < 1)
    throw std::invalid_argument("euler_weighted_difference: invalid arguments");
  const MPoly& rp = r_poly_ref(p, m, false);
  MPoly acc;
  for (int j = 1; j <= m; ++j) {
    const MPoly ij = MPoly::variable(ivar(j));
    const MPoly shifted = rp.substitute(ivar(j), ij - MPoly::constant(Rat(1)));
    acc = acc + ij * (rp - shifted);
  }
  MPoly v = acc.substitute("l", Rat(-1, 2));
  for (int j = 1; j <= m; ++j) v = v.substitute(ivar(j), MPoly::variable("k"));
  return v.to_upoly("k");
}

Rat ACoeffTable::e_coeff(long k, long q, int p, const Rat& l) const {
  if (k < 1) throw std::invalid_argument("ACoeffTable::e_coeff: k must be at least 1");
  const auto it = e_numerators.find({q, p});
  if (it == e_numerators.end())
    throw std::out_of_range("ACoeffTable::e_coeff: entry not built");
  Rat v = it->second.eval({{"k", Rat(k)}, {"l", l}});
  v *= operator_prefactor(m, k);
  v /= pole_product(m, 2 * p - 1).eval(Rat(k));
  for (long j = 1; j <= q; ++j) v /= Rat(k + j);
  return v;
}

Rat ACoeffTable::id_coeff(long k, int p) const {
  if (k < 1) throw std::invalid_argument("ACoeffTable::id_coeff: k must be at least 1");
  const auto it = id_parts.find(p);
  if (it == id_parts.end())
    throw std::out_of_range("ACoeffTable::id_coeff: entry not built");
  return operator_prefactor(m, k) * it->second.eval(Rat(k));
}

ACoeffTable acoeff_table(int m, long q_max, int p_max) {
  if (m < 2) throw std::invalid_argument("acoeff_table: m must be at least 2");
  if (q_max < 1 || p_max < 0)
    throw std::invalid_argument("acoeff_table: invalid coefficient ranges");
  ACoeffTable t;
  t.m = m;
  t.q_max = q_max;
  t.p_max = p_max;
  t.k_min = 1;
  t.k_max = 6 * p_max + q_max + 5;

  for (long q = 1; q <= q_max; ++q)
    for (int p = 0; p <= p_max; ++p)
      t.e_numerators.emplace(std::make_pair(q, p), s_numerator(m, p, q));

  for (int p = -1; p <= p_max; ++p) {
    const UPoly s = s_id_numerator(m, p).to_upoly("k");
    UPoly den = pole_product(m, 2 * p + 1);
    den = den * UPoly::monomial(2, Rat(1));
    den = den * UPoly(std::vector<Rat>{Rat(1), Rat(m - 1)});
    t.id_parts.emplace(p, RatFun("k", s, den));
  }

  for (long k = 1; k <= 4; ++k) {
    for (long q = 1; q <= q_max; ++q)
      for (int p = 0; p <= p_max; ++p)
        for (const Rat& l : {Rat(1, 2), Rat(-3, 2)})
          if (t.e_coeff(k, q, p, l) != acheck_E_coeff(m, k, q, p, l))
            throw std::logic_error("acoeff_table: stored numerator disagrees at a sample point");
    for (int p = -1; p <= p_max; ++p)
      if (t.id_coeff(k, p) != acheck_Id_coeff(m, k, p))
        throw std::logic_error("acoeff_table: stored identity part disagrees at a sample point");
  }
  return t;
}

}  // namespace bmslab::aops
