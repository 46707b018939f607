#include "bmslab/faulhaber.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace bmslab::exactmath {

Rat bernoulli(long n) {
  if (n < 0) throw std::domain_error("bernoulli: negative index");
  static std::vector<Rat> table{Rat(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(table.size()) <= n) {
    const long t = static_cast<long>(table.size());
    Rat acc(0);
    for (long j = 0; j < t; ++j) acc += binomial(Rat(t + 1), j) * table[static_cast<size_t>(j)];
    table.push_back(-acc / Rat(t + 1));
  }
  return table[static_cast<size_t>(n)];
}

UPoly faulhaber_power_sum(long p) {
  if (p < 0) throw std::domain_error("faulhaber_power_sum: negative power");
  if (p == 0) return UPoly::x();
  UPoly out = UPoly::monomial(static_cast<int>(p) + 1, Rat(1) / Rat(p + 1));
  out += UPoly::monomial(static_cast<int>(p), Rat(1, 2));
  for (long k = 2; k <= p; ++k) {
    const Rat c = falling_factorial(Rat(p), k - 1) * bernoulli(k) / factorial(k);
    out += UPoly::monomial(static_cast<int>(p - k + 1), c);
  }
  return out;
}

namespace {

// sum_{g=0}^{k-1} g^b as a polynomial in k.
UPoly power_sum_from_zero(int b) {
  if (b == 0) return UPoly::x();
  return faulhaber_power_sum(b).shift(Rat(-1));
}

// sum_{g=1}^{k} g^b as a polynomial in k.
UPoly power_sum_from_one(int b) {
  if (b == 0) return UPoly::x();
  return faulhaber_power_sum(b);
}

// Shared accumulation step: given the previous chain polynomial T(x, k),
// returns sum over the next chain variable g of factor(x, g) * T(x, g),
// where the g-range is encoded by the power-sum closure.
MPoly chain_step(const MPoly& prev, const MPoly& factor, UPoly (*power_sum)(int)) {
  const MPoly g = MPoly::variable("g");
  MPoly integrand = factor * prev.substitute("k", g);
  MPoly out({"x", "k"});
  const int xi = integrand.var_index("x");
  const int gi = integrand.var_index("g");
  for (const auto& [e, c] : integrand.terms()) {
    const int a = xi >= 0 ? e[static_cast<size_t>(xi)] : 0;
    const int b = gi >= 0 ? e[static_cast<size_t>(gi)] : 0;
    const UPoly ps = power_sum(b);
    for (int i = 0; i <= ps.degree(); ++i)
      out.add_term({a, i}, c * ps.coeff(i));
  }
  return out;
}

}  // namespace

MPoly T_poly(int d) {
  if (d < 0) throw std::domain_error("T_poly: negative depth");
  static std::vector<MPoly> table{MPoly::constant(Rat(1)).with_vars({"x", "k"})};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const MPoly factor = (MPoly::variable("x") + MPoly::variable("g")).with_vars({"x", "g"});
  while (static_cast<int>(table.size()) <= d)
    table.push_back(chain_step(table.back(), factor, &power_sum_from_zero));
  return table[static_cast<size_t>(d)];
}

MPoly T_tilde_poly(int d) {
  if (d < 0) throw std::domain_error("T_tilde_poly: negative depth");
  static std::vector<MPoly> table{MPoly::constant(Rat(1)).with_vars({"x", "k"})};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const MPoly factor = (-MPoly::variable("x") + MPoly::variable("g")).with_vars({"x", "g"});
  while (static_cast<int>(table.size()) <= d)
    table.push_back(chain_step(table.back(), factor, &power_sum_from_one));
  return table[static_cast<size_t>(d)];
}

}  // namespace bmslab::exactmath
