#include "bmslab/toporec.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmslab/fockspace.hpp"
#include "bmslab/series.hpp"
#include "bmslab/spectral.hpp"

namespace bmslab::toporec {
namespace {

using exactmath::HSeries;
using exactmath::XSeries;

// Truncation for local building blocks and a safety bound on how singular
// any local expansion may get at the critical points. Both hold with a wide
// margin for every pair within the budget and are asserted at runtime.
constexpr int kBlock = 20;
constexpr int kPoleBound = 16;
constexpr int kInfTrunc = 1000000;

// Orientation of the residue extraction, pinned once by matching the
// (0, 3) output at (1, 1, 1) to the reference count 2 and then frozen.
constexpr int kOrientation = -1;

UPoly linear(const Rat& c0, const Rat& c1) {
  return UPoly(std::vector<Rat>{c0, c1});
}

// (z - a)^k
UPoly zpow(const Rat& a, int k) { return linear(-a, Rat(1)).pow(k); }

RatFunZ rf_one() { return RatFunZ::from_poly("z", UPoly(Rat(1))); }

HSeries upoly_local(const UPoly& p, const Rat& a, int trunc) {
  HSeries out(trunc);
  UPoly q = p.shift(a);
  for (int i = 0; i <= q.degree() && i <= trunc; ++i) {
    Rat c = q.coeff(i);
    if (!c.is_zero()) out.set_coeff(i, c);
  }
  return out;
}

// f(a + t) as a Laurent series in t.
HSeries ratfun_local(const RatFunZ& f, const Rat& a, int trunc) {
  if (f.is_zero()) return HSeries(trunc);
  int pad = trunc + 2 * f.den().degree() + 2;
  HSeries n = upoly_local(f.num(), a, pad);
  HSeries d = upoly_local(f.den(), a, pad);
  return (n * d.inverse()).truncated(trunc);
}

// 1/(a + t) as a power series in t.
HSeries sigma_full(const Rat& a, int trunc) {
  HSeries d(trunc);
  d.set_coeff(0, a);
  if (trunc >= 1) d.set_coeff(1, Rat(1));
  return d.inverse();
}

HSeries horner_hs(const UPoly& p, const HSeries& s) {
  if (p.is_zero()) return HSeries(s.truncation_order());
  HSeries acc = HSeries::constant(p.coeff(p.degree()), s.truncation_order());
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = acc * s;
    Rat c = p.coeff(i);
    if (!c.is_zero()) acc = acc + HSeries::constant(c, acc.truncation_order());
  }
  return acc;
}

// f(1/(a + t)) as a Laurent series in t.
HSeries ratfun_local_recip(const RatFunZ& f, const Rat& a, int trunc) {
  if (f.is_zero()) return HSeries(trunc);
  int pad = trunc + 2 * f.den().degree() + 2;
  HSeries s = sigma_full(a, pad);
  HSeries n = horner_hs(f.num(), s);
  HSeries d = horner_hs(f.den(), s);
  return (n * d.inverse()).truncated(trunc);
}

Rat residue_at(const RatFunZ& f, const Rat& a) {
  HSeries loc = ratfun_local(f, a, 0);
  if (loc.min_degree() > -1) return Rat(0);
  return loc.coeff(-1);
}

// One rational factor in factored form: num / ((z-1)^p1 (z+1)^p2 (z-3)^p3).
// Every denominator arising in the local algebra splits this way, so
// products need no gcd reduction.
struct Slotf {
  UPoly num;
  int p1 = 0, p2 = 0, p3 = 0;
  bool is_zero() const { return num.is_zero(); }
};

Slotf slotf_mul(const Slotf& x, const Slotf& y) {
  return {x.num * y.num, x.p1 + y.p1, x.p2 + y.p2, x.p3 + y.p3};
}

Slotf slotf_from_ratfun(const RatFunZ& f) {
  Slotf s;
  s.num = f.num();
  UPoly d = f.den();
  while (d.degree() > 0 && d.eval(Rat(1)).is_zero()) {
    d = *d.divide_exact(linear(Rat(-1), Rat(1)));
    ++s.p1;
  }
  while (d.degree() > 0 && d.eval(Rat(-1)).is_zero()) {
    d = *d.divide_exact(linear(Rat(1), Rat(1)));
    ++s.p2;
  }
  if (!(d == UPoly(Rat(1)))) {
    throw std::runtime_error("toporec: pole outside the critical points");
  }
  return s;
}

RatFunZ slotf_to_ratfun(const Slotf& s) {
  UPoly den = zpow(Rat(1), s.p1) * zpow(Rat(-1), s.p2) * zpow(Rat(3), s.p3);
  return RatFunZ("z", s.num, den);
}

std::string slotf_sig(const Slotf& s) {
  std::string r = s.num.str("z");
  r += '^';
  r += std::to_string(s.p1);
  r += ',';
  r += std::to_string(s.p2);
  r += ',';
  r += std::to_string(s.p3);
  return r;
}

// One additive piece of a local expansion coefficient: a scalar times one
// factored rational factor per variable slot.
struct SepTerm {
  Rat scale;
  std::map<int, Slotf> fac;
};
using SepSum = std::vector<SepTerm>;

std::string sep_signature(const SepTerm& t) {
  std::string s;
  for (const auto& [slot, f] : t.fac) {
    s += std::to_string(slot);
    s += '|';
    s += slotf_sig(f);
    s += ';';
  }
  return s;
}

SepSum sep_normalize(const SepSum& in) {
  std::map<std::string, SepTerm> acc;
  for (const auto& t : in) {
    if (t.scale.is_zero()) continue;
    std::string key = sep_signature(t);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(std::move(key), t);
    } else {
      it->second.scale += t.scale;
    }
  }
  SepSum out;
  for (auto& [key, t] : acc) {
    if (!t.scale.is_zero()) out.push_back(std::move(t));
  }
  return out;
}

SepSum sep_mul(const SepSum& x, const SepSum& y) {
  SepSum out;
  for (const auto& p : x) {
    for (const auto& q : y) {
      SepTerm t;
      t.scale = p.scale * q.scale;
      if (t.scale.is_zero()) continue;
      t.fac = p.fac;
      bool dead = false;
      for (const auto& [slot, f] : q.fac) {
        auto it = t.fac.find(slot);
        if (it == t.fac.end()) {
          t.fac.emplace(slot, f);
        } else {
          it->second = slotf_mul(it->second, f);
          if (it->second.is_zero()) {
            dead = true;
            break;
          }
        }
      }
      if (!dead) out.push_back(std::move(t));
    }
  }
  return sep_normalize(out);
}

// Truncated Laurent series in the local coordinate t whose coefficients are
// separable sums over the variable slots.
struct LocalSep {
  int trunc;
  std::map<int, SepSum> c;
  explicit LocalSep(int t) : trunc(t) {}
  int min_deg() const { return c.empty() ? trunc + 1 : c.begin()->first; }
};

void ls_tidy(LocalSep& r) {
  for (auto it = r.c.begin(); it != r.c.end();) {
    it->second = sep_normalize(it->second);
    it = it->second.empty() ? r.c.erase(it) : std::next(it);
  }
}

LocalSep ls_add(const LocalSep& a, const LocalSep& b) {
  LocalSep r(std::min(a.trunc, b.trunc));
  for (const LocalSep* src : {&a, &b}) {
    for (const auto& [e, s] : src->c) {
      if (e > r.trunc) continue;
      auto& dst = r.c[e];
      dst.insert(dst.end(), s.begin(), s.end());
    }
  }
  ls_tidy(r);
  return r;
}

LocalSep ls_mul(const LocalSep& a, const LocalSep& b, int cap = kInfTrunc) {
  long t = std::min<long>(static_cast<long>(a.trunc) + b.min_deg(),
                          static_cast<long>(b.trunc) + a.min_deg());
  t = std::min<long>(t, cap);
  LocalSep r(static_cast<int>(t));
  for (const auto& [ea, sa] : a.c) {
    for (const auto& [eb, sb] : b.c) {
      if (ea + eb > r.trunc) continue;
      SepSum prod = sep_mul(sa, sb);
      auto& dst = r.c[ea + eb];
      dst.insert(dst.end(), prod.begin(), prod.end());
    }
  }
  ls_tidy(r);
  return r;
}

LocalSep ls_from_scalar(const HSeries& h) {
  LocalSep r(h.truncation_order());
  for (const auto& [e, v] : h.coeffs()) {
    if (!v.is_zero()) r.c[e] = SepSum{{v, {}}};
  }
  return r;
}

LocalSep ls_from_const_term(SepTerm t) {
  LocalSep r(kInfTrunc);
  if (!t.scale.is_zero()) r.c[0] = SepSum{std::move(t)};
  return r;
}

// Shared per-point data: powers of w(t) = 1/(a + t) - a.
struct Ctx {
  Rat a;
  int root;  // 1 when a = 1, 2 when a = -1
  std::vector<HSeries> wpow;
  Ctx(const Rat& a_, int root_) : a(a_), root(root_) {
    HSeries w = sigma_full(a, kBlock) - HSeries::constant(a, kBlock);
    wpow.push_back(HSeries::constant(Rat(1), kBlock));
    for (int r = 1; r <= kBlock; ++r) wpow.push_back(wpow.back() * w);
  }
  Slotf pole(int order) const {
    Slotf s;
    s.num = UPoly(Rat(1));
    (root == 1 ? s.p1 : s.p2) = order;
    return s;
  }
};

// Local expansion of the pairing numerator in the new variable's slot.
// Variant 0 is the antisymmetrized primitive of the two-point form between
// the two preimages; variant 1 integrates from the fixed base point z = 3
// instead. Both must give the same output, which is certified upstream.
LocalSep kernel_local(const Ctx& ctx, int slot, int variant) {
  LocalSep k(kBlock);
  if (variant == 0) {
    for (int j = 1; j <= kBlock; ++j) {
      UPoly num(Rat(1));
      for (int r = 1; r <= j; ++r) {
        Rat cjr = ctx.wpow[static_cast<size_t>(r)].coeff(j);
        if (!cjr.is_zero()) num -= cjr * zpow(ctx.a, j - r);
      }
      if (num.is_zero()) continue;
      Slotf kj = ctx.pole(j + 1);
      kj.num = num;
      k.c[j] = SepSum{{Rat(1, 2), {{slot, kj}}}};
    }
  } else {
    for (int j = 0; j <= kBlock; ++j) {
      k.c[j] = SepSum{{Rat(1), {{slot, ctx.pole(j + 1)}}}};
    }
    Slotf base;
    base.num = UPoly(Rat(-1));
    base.p3 = 1;
    k.c[0].push_back({Rat(1), {{slot, base}}});
  }
  return k;
}

const MultiDiff& omega_cached(int g, int n);

// Local expansion of one stable lower-order output with its first variable
// placed on the fiber coordinate and the rest on the given slots.
LocalSep stable_factor_local(const Ctx& ctx, const MultiDiff& low,
                             const std::vector<int>& old_slots, bool recip) {
  LocalSep out(kBlock);
  for (const auto& t : low.terms) {
    HSeries f0 = recip ? ratfun_local_recip(t.factors[0], ctx.a, kBlock)
                       : ratfun_local(t.factors[0], ctx.a, kBlock);
    LocalSep piece = ls_from_scalar(f0);
    SepTerm rest;
    rest.scale = t.scale;
    bool dead = false;
    for (size_t v = 1; v < t.factors.size(); ++v) {
      const RatFunZ& f = t.factors[v];
      if (f.is_zero()) {
        dead = true;
        break;
      }
      if (f.num() == UPoly(Rat(1)) && f.den() == UPoly(Rat(1))) continue;
      rest.fac.emplace(old_slots[v - 1], slotf_from_ratfun(f));
    }
    if (dead) continue;
    piece = ls_mul(piece, ls_from_const_term(std::move(rest)));
    out = ls_add(out, piece);
  }
  return out;
}

// The connected lower-order piece, evaluated at both preimages.
LocalSep connected_piece(const Ctx& ctx, int g, int n_old, int cap) {
  int gl = g - 1;
  int nl = n_old + 2;
  if (gl == 0 && nl == 2) {
    // two-point form at the preimage pair: z^2 / (z^2 - 1)^2
    UPoly z2m1 = UPoly(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
    RatFunZ ff("z", UPoly::monomial(2, Rat(1)), z2m1.pow(2));
    return ls_from_scalar(ratfun_local(ff, ctx.a, kBlock));
  }
  const MultiDiff& low = omega_cached(gl, nl);
  LocalSep out(kBlock);
  for (const auto& t : low.terms) {
    LocalSep piece = ls_from_scalar(ratfun_local(t.factors[0], ctx.a, kBlock));
    piece = ls_mul(piece,
                   ls_from_scalar(ratfun_local_recip(t.factors[1], ctx.a, kBlock)),
                   cap);
    SepTerm rest;
    rest.scale = t.scale;
    bool dead = false;
    for (size_t v = 2; v < t.factors.size(); ++v) {
      const RatFunZ& f = t.factors[v];
      if (f.is_zero()) {
        dead = true;
        break;
      }
      if (f.num() == UPoly(Rat(1)) && f.den() == UPoly(Rat(1))) continue;
      rest.fac.emplace(static_cast<int>(v) - 1, slotf_from_ratfun(f));
    }
    if (dead) continue;
    piece = ls_mul(piece, ls_from_const_term(std::move(rest)), cap);
    out = ls_add(out, piece);
  }
  return out;
}

// One factor of a disconnected product: genus gi carrying the given old
// slots, evaluated at the preimage (recip) or at the point itself.
LocalSep split_piece(const Ctx& ctx, int gi, const std::vector<int>& olds,
                     bool recip) {
  int ki = static_cast<int>(olds.size()) + 1;
  if (gi == 0 && ki == 2) {
    int slot = olds[0];
    LocalSep r(kBlock);
    if (!recip) {
      for (int l = 0; l <= kBlock; ++l) {
        r.c[l] = SepSum{{Rat(l + 1), {{slot, ctx.pole(l + 2)}}}};
      }
    } else {
      for (int rr = 0; rr <= kBlock; ++rr) {
        const HSeries& wr = ctx.wpow[static_cast<size_t>(rr)];
        Slotf pole = ctx.pole(rr + 2);
        for (const auto& [e, cv] : wr.coeffs()) {
          if (e > kBlock || cv.is_zero()) continue;
          r.c[e].push_back({Rat(rr + 1) * cv, {{slot, pole}}});
        }
      }
      ls_tidy(r);
    }
    return r;
  }
  return stable_factor_local(ctx, omega_cached(gi, ki), olds, recip);
}

// Sum of all admissible lower-order products, needed only through t^1.
// Old variable j occupies slot j + 1; slot 0 is reserved for the new one.
LocalSep bracket_local(const Ctx& ctx, int g, int n_old) {
  constexpr int cap = 2;
  LocalSep bkt(cap);
  if (g >= 1) bkt = ls_add(bkt, connected_piece(ctx, g, n_old, cap));
  for (unsigned mask = 0; mask < (1u << n_old); ++mask) {
    std::vector<int> n1, n2;
    for (int j = 0; j < n_old; ++j) {
      ((mask >> j) & 1u ? n1 : n2).push_back(j + 1);
    }
    for (int g1 = 0; g1 <= g; ++g1) {
      int g2 = g - g1;
      int k1 = static_cast<int>(n1.size()) + 1;
      int k2 = static_cast<int>(n2.size()) + 1;
      if ((g1 == 0 && k1 == 1) || (g2 == 0 && k2 == 1)) continue;
      bkt = ls_add(bkt, ls_mul(split_piece(ctx, g1, n1, false),
                               split_piece(ctx, g2, n2, true), cap));
    }
  }
  if (bkt.min_deg() < -kPoleBound) {
    throw std::logic_error("toporec: pole bound exceeded in the bracket");
  }
  return bkt;
}

SepSum residue_sum(int g, int n_old, int variant) {
  SepSum total;
  for (const Rat& a : {Rat(1), Rat(-1)}) {
    Ctx ctx(a, a == Rat(1) ? 1 : 2);
    LocalSep kern = kernel_local(ctx, 0, variant);
    RatFunZ preff("z", UPoly(Rat(-1)), linear(Rat(1), Rat(-1)).pow(2));
    LocalSep pref = ls_from_scalar(ratfun_local(preff, ctx.a, kBlock));
    LocalSep pb = ls_mul(pref, bracket_local(ctx, g, n_old), -1);
    if (pb.min_deg() < -kBlock + 1) {
      throw std::logic_error("toporec: kernel range exhausted");
    }
    for (const auto& [j, s] : kern.c) {
      auto it = pb.c.find(-1 - j);
      if (it == pb.c.end()) continue;
      SepSum prod = sep_mul(s, it->second);
      total.insert(total.end(), prod.begin(), prod.end());
    }
  }
  return sep_normalize(total);
}

MultiDiff md_from(int g, int n, const SepSum& s) {
  MultiDiff md;
  md.g = g;
  md.n = n;
  for (const auto& t : s) {
    DiffTerm dt;
    dt.scale = Rat(kOrientation) * t.scale;
    dt.factors.assign(static_cast<size_t>(n), rf_one());
    for (const auto& [slot, f] : t.fac) {
      dt.factors.at(static_cast<size_t>(slot)) = slotf_to_ratfun(f);
    }
    md.terms.push_back(std::move(dt));
  }
  return md;
}

bool md_equal(const MultiDiff& a, const MultiDiff& b) {
  MultiDiff d;
  d.g = a.g;
  d.n = a.n;
  d.terms = a.terms;
  for (DiffTerm t : b.terms) {
    t.scale = -t.scale;
    d.terms.push_back(std::move(t));
  }
  return d.combined().numerator.is_zero();
}

void certify(const MultiDiff& md) {
  MultiDiff::Combined c = md.combined();
  std::vector<std::string> vars;
  for (int i = 0; i < md.n; ++i) vars.push_back("z" + std::to_string(i + 1));
  MPoly num = c.numerator.with_vars(vars);
  const auto& tm = num.terms();
  for (int i = 0; i + 1 < md.n; ++i) {
    std::map<std::vector<int>, Rat> swapped;
    for (const auto& [e, v] : tm) {
      std::vector<int> e2 = e;
      std::swap(e2[static_cast<size_t>(i)], e2[static_cast<size_t>(i) + 1]);
      swapped.emplace(std::move(e2), v);
    }
    if (swapped != tm) {
      throw std::runtime_error("toporec: symmetry certification failed");
    }
  }
  if (!num.is_zero()) {
    long bound = c.pole_minus + c.pole_plus - 2;
    for (const auto& v : vars) {
      if (num.degree(v) > bound) {
        throw std::runtime_error("toporec: pole at infinity");
      }
    }
  }
  for (int i = 0; i < md.n; ++i) {
    if (md.n == 1) {
      Rat acc(0);
      for (const auto& t : md.terms) {
        acc += t.scale * (residue_at(t.factors[0], Rat(1)) +
                          residue_at(t.factors[0], Rat(-1)));
      }
      if (!acc.is_zero()) {
        throw std::runtime_error("toporec: residue certification failed");
      }
    } else {
      MultiDiff red;
      red.g = md.g;
      red.n = md.n - 1;
      for (const auto& t : md.terms) {
        Rat r = residue_at(t.factors[static_cast<size_t>(i)], Rat(1)) +
                residue_at(t.factors[static_cast<size_t>(i)], Rat(-1));
        if (r.is_zero()) continue;
        DiffTerm dt;
        dt.scale = t.scale * r;
        for (int j = 0; j < md.n; ++j) {
          if (j != i) dt.factors.push_back(t.factors[static_cast<size_t>(j)]);
        }
        red.terms.push_back(std::move(dt));
      }
      if (!red.combined().numerator.is_zero()) {
        throw std::runtime_error("toporec: residue certification failed");
      }
    }
  }
}

const MultiDiff& omega_cached(int g, int n) {
  static std::map<std::pair<int, int>, MultiDiff> cache;
  auto key = std::make_pair(g, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  MultiDiff main_md = md_from(g, n, residue_sum(g, n - 1, 0));
  MultiDiff alt_md = md_from(g, n, residue_sum(g, n - 1, 1));
  if (!md_equal(main_md, alt_md)) {
    throw std::runtime_error("toporec: base-point certification failed");
  }
  certify(main_md);
  return cache.emplace(key, std::move(main_md)).first->second;
}

XSeries upoly_on_xs(const UPoly& p, const XSeries& s) {
  if (p.is_zero()) return XSeries::constant(Rat(0), s.order());
  XSeries acc = XSeries::constant(p.coeff(p.degree()), s.order());
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = acc * s + XSeries::constant(p.coeff(i), s.order());
  }
  return acc;
}

}  // namespace

RatFunZ reciprocal_arg(const RatFunZ& f) {
  if (f.is_zero()) return f;
  int d = std::max(f.num().degree(), f.den().degree());
  auto rev = [d](const UPoly& p) {
    std::vector<Rat> c(static_cast<size_t>(d) + 1, Rat(0));
    for (int i = 0; i <= p.degree(); ++i) {
      c[static_cast<size_t>(d - i)] = p.coeff(i);
    }
    return UPoly(std::move(c));
  };
  return RatFunZ("z", rev(f.num()), rev(f.den()));
}

CurveData curve_data_m2() {
  CurveData cd;
  cd.x = RatFunZ("z", linear(Rat(1), Rat(1)).pow(2), UPoly::x());
  cd.dx_dz = RatFunZ("z", UPoly(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)}),
                     UPoly::monomial(2, Rat(1)));
  cd.w01_over_dz = RatFunZ("z", linear(Rat(1), Rat(-1)), linear(Rat(1), Rat(1)));
  return cd;
}

MultiDiff::Combined MultiDiff::combined() const {
  struct Row {
    Rat scale;
    std::vector<UPoly> nums;
    std::vector<long> p1, p2;
  };
  std::vector<Row> rows;
  long a = 0, b = 0;
  for (const auto& t : terms) {
    if (t.scale.is_zero()) continue;
    if (static_cast<int>(t.factors.size()) != n) {
      throw std::logic_error("toporec: factor count mismatch");
    }
    Row row;
    row.scale = t.scale;
    bool dead = false;
    for (const auto& f : t.factors) {
      if (f.is_zero()) {
        dead = true;
        break;
      }
      UPoly d = f.den();
      long m1 = 0, m2 = 0;
      while (d.degree() > 0 && d.eval(Rat(1)).is_zero()) {
        d = *d.divide_exact(UPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
        ++m1;
      }
      while (d.degree() > 0 && d.eval(Rat(-1)).is_zero()) {
        d = *d.divide_exact(UPoly(std::vector<Rat>{Rat(1), Rat(1)}));
        ++m2;
      }
      if (!(d == UPoly(Rat(1)))) {
        throw std::runtime_error("toporec: pole outside the critical points");
      }
      row.nums.push_back(f.num());
      row.p1.push_back(m1);
      row.p2.push_back(m2);
      a = std::max(a, m1);
      b = std::max(b, m2);
    }
    if (!dead) rows.push_back(std::move(row));
  }
  Combined out;
  out.pole_minus = a;
  out.pole_plus = b;
  MPoly sum;
  for (const auto& row : rows) {
    MPoly term = MPoly::constant(row.scale);
    for (int i = 0; i < n; ++i) {
      UPoly lifted =
          row.nums[static_cast<size_t>(i)] *
          UPoly(std::vector<Rat>{Rat(-1), Rat(1)})
              .pow(static_cast<int>(a - row.p1[static_cast<size_t>(i)])) *
          UPoly(std::vector<Rat>{Rat(1), Rat(1)})
              .pow(static_cast<int>(b - row.p2[static_cast<size_t>(i)]));
      term = term * MPoly::from_upoly(lifted, "z" + std::to_string(i + 1));
    }
    sum = sum + term;
  }
  out.numerator = sum;
  return out;
}

const MultiDiff& omega(int g, int n, int budget) {
  if (g < 0 || n < 1) {
    throw std::invalid_argument("toporec: need g >= 0 and n >= 1");
  }
  if (2 * g - 2 + n <= 0) {
    throw std::invalid_argument("toporec: unstable pair has no rational form here");
  }
  if (2 * g - 2 + n > budget) {
    throw std::runtime_error("toporec: complexity 2g-2+n exceeds the budget");
  }
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return omega_cached(g, n);
}

CompareReport expand_and_compare(int g, int n, long mu_max) {
  if (mu_max < 1) throw std::invalid_argument("toporec: mu_max must be positive");
  const MultiDiff& md = omega(g, n);
  int ord = static_cast<int>(mu_max) - 1;
  XSeries zfull = spectral::z_series(2, static_cast<int>(mu_max));
  XSeries zprime = zfull.derivative();
  XSeries zs = zfull.truncated(ord);
  std::map<std::string, std::vector<Rat>> coeff_cache;
  auto phi = [&](const RatFunZ& f) -> const std::vector<Rat>& {
    std::string key = f.num().str("z") + "/" + f.den().str("z");
    auto it = coeff_cache.find(key);
    if (it != coeff_cache.end()) return it->second;
    XSeries nn = upoly_on_xs(f.num(), zs);
    XSeries dd = upoly_on_xs(f.den(), zs);
    XSeries val = nn * dd.inverse() * zprime;
    std::vector<Rat> cs;
    for (int k = 0; k <= ord; ++k) cs.push_back(val.coeff(k));
    return coeff_cache.emplace(std::move(key), std::move(cs)).first->second;
  };
  CompareReport rep;
  std::vector<long> cur(static_cast<size_t>(n), 0);
  std::function<void(int, long)> rec = [&](int pos, long hi) {
    if (pos == n) {
      Rat acc(0);
      for (const auto& t : md.terms) {
        Rat p = t.scale;
        for (int i = 0; i < n; ++i) {
          const std::vector<Rat>& cs = phi(t.factors[static_cast<size_t>(i)]);
          p = p * cs[static_cast<size_t>(cur[static_cast<size_t>(i)] - 1)];
        }
        acc += p;
      }
      Rat denom(1);
      for (long v : cur) denom *= Rat(v);
      Rat tr = acc / denom;
      Rat fk = fockspace::bms_fock(2, g, cur);
      bool eq = tr == fk;
      if (!eq) rep.pass = false;
      rep.rows.push_back({cur, tr, fk, eq});
      return;
    }
    for (long v = hi; v >= 1; --v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, mu_max);
  return rep;
}

}  // namespace bmslab::toporec
