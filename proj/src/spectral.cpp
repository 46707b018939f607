#include "bmslab/spectral.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bmslab/linalg.hpp"
#include "bmslab/permoracle.hpp"

namespace bmslab::spectral {

namespace {

using exactmath::binomial;
using exactmath::falling_factorial;

void require_m(int m) {
  if (m < 1) throw std::invalid_argument("spectral: need m >= 1");
}

Rat z_coeff(int m, long k) {
  return binomial(Rat(static_cast<long>(m) * k), k - 1) -
         Rat(m) * binomial(Rat(static_cast<long>(m) * k - 1), k - 2);
}

Rat xi_closed_coeff(int m, int i, long k) {
  return binomial(Rat(static_cast<long>(m) * k - m), k - i);
}

// Pole positions j/m of the expansion denominator at depth d:
// integers j with m < j < m(d+1) not divisible by m.
std::vector<long> depth_pole_exponents(int m, int d) {
  std::vector<long> js;
  for (long j = m + 1; j < static_cast<long>(m) * (d + 1); ++j) {
    if (j % m != 0) js.push_back(j);
  }
  return js;
}

Rat pole_value(int m, const std::vector<long>& js, long k) {
  Rat v(1);
  for (long j : js) v *= Rat(k) - Rat(j, m);
  return v;
}

// Dense bivariate series truncated by total degree: entry (a, b) is the
// coefficient of X1^a X2^b, kept only for a + b <= bound.
struct BiTotal {
  int bound;
  std::vector<std::vector<Rat>> c;

  explicit BiTotal(int bound_)
      : bound(bound_),
        c(static_cast<size_t>(bound_) + 1,
          std::vector<Rat>(static_cast<size_t>(bound_) + 1, Rat(0))) {}

  BiTotal mul(const BiTotal& o) const {
    BiTotal r(bound);
    for (int a1 = 0; a1 <= bound; ++a1) {
      for (int b1 = 0; a1 + b1 <= bound; ++b1) {
        const Rat& x = c[static_cast<size_t>(a1)][static_cast<size_t>(b1)];
        if (x.is_zero()) continue;
        for (int a2 = 0; a1 + b1 + a2 <= bound; ++a2) {
          for (int b2 = 0; a1 + b1 + a2 + b2 <= bound; ++b2) {
            const Rat& y = o.c[static_cast<size_t>(a2)][static_cast<size_t>(b2)];
            if (y.is_zero()) continue;
            r.c[static_cast<size_t>(a1 + a2)][static_cast<size_t>(b1 + b2)] += x * y;
          }
        }
      }
    }
    return r;
  }
};

}  // namespace

XSeries z_series(int m, int order) {
  require_m(m);
  if (order < 1) throw std::invalid_argument("z_series: need order >= 1");
  XSeries s(order);
  for (long k = 1; k <= order; ++k) s.set_coeff(static_cast<int>(k), z_coeff(m, k));
  return s;
}

XSeries xi_series(int m, int i, int order) {
  require_m(m);
  if (i < 0 || i >= m) throw std::invalid_argument("xi_series: need 0 <= i <= m-1");
  if (order < 1) throw std::invalid_argument("xi_series: need order >= 1");

  XSeries closed(order);
  for (long k = 0; k <= order; ++k) {
    closed.set_coeff(static_cast<int>(k), xi_closed_coeff(m, i, k));
  }

  XSeries zvar = XSeries::monomial(1, Rat(1), order);
  XSeries den = (XSeries::constant(Rat(1), order) + zvar).pow(m - 1) *
                (XSeries::constant(Rat(1), order) - Rat(m - 1) * zvar);
  XSeries ratio = XSeries::monomial(i, Rat(1), order) * den.inverse();
  XSeries direct = ratio.compose(z_series(m, order));

  if (!(closed == direct)) {
    std::ostringstream os;
    os << "xi_series: the closed coefficients and the substituted expansion "
          "disagree for m="
       << m << ", i=" << i;
    throw std::runtime_error(os.str());
  }
  return closed;
}

XSeries d_operator(const XSeries& s) {
  XSeries out(s.order() + 1);
  for (int k = 0; k <= s.order(); ++k) {
    out.set_coeff(k + 1, Rat(-k) * s.coeff(k));
  }
  return out;
}

bool XiElement::is_zero() const {
  for (const auto& row : coeffs) {
    for (const auto& v : row) {
      if (!v.is_zero()) return false;
    }
  }
  return true;
}

Rat XiElement::expansion_coeff(long k) const {
  Rat total(0);
  for (int a = 0; a <= d; ++a) {
    Rat chain = (a % 2 ? Rat(-1) : Rat(1)) * falling_factorial(Rat(k - 1), a);
    if (chain.is_zero()) continue;
    for (int i = 0; i < m; ++i) {
      const Rat& c = coeffs[static_cast<size_t>(a)][static_cast<size_t>(i)];
      if (c.is_zero()) continue;
      total += c * chain * xi_closed_coeff(m, i, k - a);
    }
  }
  return total;
}

XSeries XiElement::expansion(int order) const {
  XSeries s(order);
  for (long k = 0; k <= order; ++k) {
    s.set_coeff(static_cast<int>(k), expansion_coeff(k));
  }
  return s;
}

std::string XiElement::to_json() const {
  nlohmann::json triples = nlohmann::json::array();
  for (int a = 0; a <= d; ++a) {
    for (int i = 0; i < m; ++i) {
      const Rat& c = coeffs[static_cast<size_t>(a)][static_cast<size_t>(i)];
      if (c.is_zero()) continue;
      triples.push_back({{"a", a}, {"i", i}, {"c", c.str()}});
    }
  }
  nlohmann::json j;
  j["m"] = m;
  j["d"] = d;
  j["coeffs"] = triples;
  return j.dump();
}

XiElement XiElement::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  XiElement e;
  e.m = j.at("m").get<int>();
  e.d = j.at("d").get<int>();
  e.coeffs.assign(static_cast<size_t>(e.d) + 1,
                  std::vector<Rat>(static_cast<size_t>(e.m), Rat(0)));
  for (const auto& t : j.at("coeffs")) {
    int a = t.at("a").get<int>();
    int i = t.at("i").get<int>();
    e.coeffs.at(static_cast<size_t>(a)).at(static_cast<size_t>(i)) =
        Rat(t.at("c").get<std::string>());
  }
  return e;
}

XiElement xi_from_poly(int m, int d, const MPoly& p) {
  if (m < 2) throw std::invalid_argument("xi_from_poly: need m >= 2");
  if (d < 0) throw std::invalid_argument("xi_from_poly: need d >= 0");
  UPoly poly = p.to_upoly("k");
  const long dim = static_cast<long>(m) * (d + 1);
  if (poly.degree() > dim - 1) {
    throw std::invalid_argument("xi_from_poly: polynomial degree exceeds m(d+1)-1");
  }

  std::vector<long> js = depth_pole_exponents(m, d);
  auto rhs_at = [&](long k) {
    return quasipoly::prefactor(m, k) * poly.eval(Rat(k)) / pole_value(m, js, k);
  };

  std::vector<std::vector<Rat>> a(static_cast<size_t>(dim),
                                  std::vector<Rat>(static_cast<size_t>(dim)));
  std::vector<Rat> b(static_cast<size_t>(dim));
  for (long k = 1; k <= dim; ++k) {
    size_t row = static_cast<size_t>(k - 1);
    for (int aa = 0; aa <= d; ++aa) {
      Rat chain = (aa % 2 ? Rat(-1) : Rat(1)) * falling_factorial(Rat(k - 1), aa);
      for (int i = 0; i < m; ++i) {
        size_t col = static_cast<size_t>(aa) * static_cast<size_t>(m) +
                     static_cast<size_t>(i);
        a[row][col] = chain * xi_closed_coeff(m, i, k - aa);
      }
    }
    b[row] = rhs_at(k);
  }
  std::vector<Rat> sol = exactmath::solve_linear(a, b);

  XiElement e;
  e.m = m;
  e.d = d;
  e.coeffs.assign(static_cast<size_t>(d) + 1, std::vector<Rat>(static_cast<size_t>(m)));
  for (int aa = 0; aa <= d; ++aa) {
    for (int i = 0; i < m; ++i) {
      e.coeffs[static_cast<size_t>(aa)][static_cast<size_t>(i)] =
          sol[static_cast<size_t>(aa) * static_cast<size_t>(m) + static_cast<size_t>(i)];
    }
  }

  for (long k = dim + 1; k <= dim + 3; ++k) {
    if (!(e.expansion_coeff(k) == rhs_at(k))) {
      std::ostringstream os;
      os << "xi_from_poly: solved element fails the expansion at k=" << k;
      throw std::runtime_error(os.str());
    }
  }
  return e;
}

Rat WTensor::coefficient(const std::vector<long>& mu) const {
  if (static_cast<int>(mu.size()) != n) {
    throw std::invalid_argument("WTensor: tuple length mismatch");
  }
  Rat total(0);
  for (const auto& [c, factors] : terms) {
    Rat prod = c;
    for (int v = 0; v < n; ++v) {
      prod *= factors[static_cast<size_t>(v)].expansion_coeff(mu[static_cast<size_t>(v)]);
      if (prod.is_zero()) break;
    }
    total += prod;
  }
  return total;
}

std::string WTensor::to_json() const {
  nlohmann::json jterms = nlohmann::json::array();
  for (const auto& [c, factors] : terms) {
    nlohmann::json jf = nlohmann::json::array();
    for (const auto& f : factors) jf.push_back(nlohmann::json::parse(f.to_json()));
    jterms.push_back({{"scale", c.str()}, {"factors", jf}});
  }
  nlohmann::json j;
  j["m"] = m;
  j["g"] = g;
  j["n"] = n;
  j["d"] = d;
  j["terms"] = jterms;
  return j.dump();
}

WTensor w_assemble(const quasipoly::QuasiPolyForm& form) {
  if (form.m < 2) throw std::invalid_argument("w_assemble: need m >= 2");
  const int m = form.m;
  const int n = form.n;
  const long hi = 4L * form.g - 4 + 2L * n - 1;

  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("mu" + std::to_string(i + 1));
  MPoly aligned = form.poly.with_vars(vars);

  long deg_v = 0;
  for (const auto& v : vars) deg_v = std::max<long>(deg_v, aligned.degree(v));

  int d = 0;
  std::vector<long> extra;
  for (;; ++d) {
    long dim = static_cast<long>(m) * (d + 1);
    if (dim <= hi) continue;
    extra.clear();
    for (long j = std::max<long>(hi, m) + 1; j < dim; ++j) {
      if (j % m != 0) extra.push_back(j);
    }
    if (deg_v + static_cast<long>(extra.size()) <= dim - 1) break;
  }

  UPoly extra_poly(Rat(1));
  for (long j : extra) {
    UPoly factor(std::vector<Rat>{Rat(-j, m), Rat(1)});
    extra_poly = extra_poly * factor;
  }

  std::map<int, XiElement> factor_cache;
  auto factor_for = [&](int e) -> const XiElement& {
    auto it = factor_cache.find(e);
    if (it != factor_cache.end()) return it->second;
    UPoly p = UPoly::monomial(e, Rat(1)) * extra_poly;
    XiElement xe = xi_from_poly(m, d, MPoly::from_upoly(p, "k"));
    return factor_cache.emplace(e, std::move(xe)).first->second;
  };

  WTensor w;
  w.m = m;
  w.g = form.g;
  w.n = n;
  w.d = d;
  for (const auto& [exps, c] : aligned.terms()) {
    std::vector<XiElement> factors;
    factors.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) factors.push_back(factor_for(exps[static_cast<size_t>(v)]));
    w.terms.emplace_back(c, std::move(factors));
  }
  return w;
}

CheckReport omega01_check(int m, int order) {
  require_m(m);
  if (order < 2) throw std::invalid_argument("omega01_check: need order >= 2");
  CheckReport report;
  XSeries z = z_series(m, order);
  for (long k = 1; k <= order; ++k) {
    Rat lhs = Rat(k) * permoracle::unstable_onepoint(m, k);
    Rat rhs = z.coeff(static_cast<int>(k));
    if (!(lhs == rhs)) {
      report.pass = false;
      std::ostringstream os;
      os << "(k=" << k << "): k*b = " << lhs.str() << " vs [X^k]z = " << rhs.str();
      report.failures.push_back(os.str());
    }
  }
  return report;
}

CheckReport omega02_check(int m, int order) {
  require_m(m);
  if (order < 2) throw std::invalid_argument("omega02_check: need order >= 2");
  CheckReport report;

  for (long k1 = 1; k1 <= order; ++k1) {
    for (long k2 = k1; k2 <= order; ++k2) {
      Rat lhs = binomial(Rat(static_cast<long>(m) * k1), k1) *
                    binomial(Rat(static_cast<long>(m) * k2), k2) -
                Rat(m) * binomial(Rat(static_cast<long>(m) * k1 - 1), k1 - 1) *
                    binomial(Rat(static_cast<long>(m) * k2 - 1), k2 - 1);
      Rat rhs = Rat(k1 + k2) * permoracle::unstable_twopoint(m, k1, k2);
      if (!(lhs == rhs)) {
        report.pass = false;
        std::ostringstream os;
        os << "(k1=" << k1 << ",k2=" << k2 << ") closed: " << lhs.str() << " vs "
           << rhs.str();
        report.failures.push_back(os.str());
      }
    }
  }

  // Mixed coefficients of log((z1 - z2)/(X1 - X2)). The divided difference
  // (X1^k - X2^k)/(X1 - X2) contributes X1^a X2^b over a + b = k - 1, so the
  // ratio needs z to total degree 2*order + 1.
  const int bound = 2 * order;
  XSeries z = z_series(m, bound + 1);
  BiTotal u(bound);
  for (int k = 1; k <= bound + 1; ++k) {
    Rat c = z.coeff(k);
    for (int aa = 0; aa <= k - 1 && aa <= bound; ++aa) {
      int bb = k - 1 - aa;
      if (bb > bound || aa + bb > bound) continue;
      u.c[static_cast<size_t>(aa)][static_cast<size_t>(bb)] += c;
    }
  }
  u.c[0][0] -= Rat(1);

  BiTotal log_series(bound);
  BiTotal power = u;
  for (int j = 1; j <= bound; ++j) {
    Rat scale = Rat(j % 2 ? 1 : -1, j);
    for (int aa = 0; aa <= bound; ++aa) {
      for (int bb = 0; aa + bb <= bound; ++bb) {
        log_series.c[static_cast<size_t>(aa)][static_cast<size_t>(bb)] +=
            scale * power.c[static_cast<size_t>(aa)][static_cast<size_t>(bb)];
      }
    }
    if (j < bound) power = power.mul(u);
  }

  for (long k1 = 1; k1 <= order; ++k1) {
    for (long k2 = 1; k2 <= order; ++k2) {
      Rat series_val = log_series.c[static_cast<size_t>(k1)][static_cast<size_t>(k2)];
      Rat count = permoracle::unstable_twopoint(m, k1, k2);
      if (!(series_val == count)) {
        report.pass = false;
        std::ostringstream os;
        os << "(k1=" << k1 << ",k2=" << k2 << ") series: " << series_val.str()
           << " vs " << count.str();
        report.failures.push_back(os.str());
      }
    }
  }
  return report;
}

}  // namespace bmslab::spectral
