#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "bmslab/faulhaber.hpp"
#include "bmslab/linalg.hpp"
#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/series.hpp"

using namespace bmslab::exactmath;

TEST_CASE("rational canonical form and serialization") {
  CHECK(Rat(6, 4).str() == "3/2");
  CHECK(Rat(-6, 4).str() == "-3/2");
  CHECK(Rat(6, -4).str() == "-3/2");
  CHECK(Rat(0, 5).str() == "0");
  CHECK(Rat(7).str() == "7");
  CHECK(Rat("21/14") == Rat(3, 2));
  CHECK(Rat("-5") == Rat(-5));
  CHECK(Rat("3/2").denominator() == Rat(2));
  CHECK(Rat("3/2").numerator() == Rat(3));
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat("junk"));
  CHECK_THROWS(Rat("1/0"));
}

TEST_CASE("rational arithmetic and powers") {
  const Rat a(3, 4), b(-2, 5);
  CHECK(a + b == Rat(7, 20));
  CHECK(a * b == Rat(-3, 10));
  CHECK(a / b == Rat(-15, 8));
  CHECK(a.pow(3) == Rat(27, 64));
  CHECK(a.pow(-2) == Rat(16, 9));
  CHECK(Rat(0).pow(5) == Rat(0));
  CHECK_THROWS(Rat(0).pow(-1));
  CHECK(Rat(-3, 4).abs() == Rat(3, 4));
  CHECK(Rat(5, 3) > Rat(3, 2));
  CHECK_THROWS(Rat(7, 2).to_long());
  CHECK(Rat(-12).to_long() == -12);
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == Rat(1));
  CHECK(factorial(6) == Rat(720));
  CHECK_THROWS(factorial(-1));
  CHECK(binomial(Rat(5), 2) == Rat(10));
  CHECK(binomial(Rat(5), -1) == Rat(0));
  CHECK(binomial(Rat(1), 3) == Rat(0));
  CHECK(binomial(Rat(1, 2), 2) == Rat(-1, 8));
}

TEST_CASE("falling factorial covers negative index by reciprocals") {
  CHECK(falling_factorial(Rat(3), 2) == Rat(6));
  CHECK(falling_factorial(Rat(3), 0) == Rat(1));
  CHECK(falling_factorial(Rat(3), -2) == Rat(1, 20));
  CHECK(falling_factorial(Rat(1, 2), 2) == Rat(-1, 4));
  CHECK_THROWS_WITH_AS(falling_factorial(Rat(-2), -3), doctest::Contains("vanishes"),
                       std::domain_error);
  CHECK(rising_factorial(Rat(3), 2) == Rat(12));
  CHECK(rising_factorial(Rat(3), -1) == Rat(1, 2));
  CHECK_THROWS(rising_factorial(Rat(1), -1));
}

TEST_CASE("falling factorial splice identity on random rationals") {
  std::mt19937 rng(20260819u);
  std::uniform_int_distribution<int> top(-15, 15), idx(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    // A half-integer base keeps every factor away from zero.
    const Rat a = Rat(2 * top(rng) + 1, 2);
    const long b = idx(rng), c = idx(rng);
    CHECK(falling_factorial(a, b) * falling_factorial(a - Rat(b), c) ==
          falling_factorial(a, b + c));
  }
}

TEST_CASE("rising and falling factorials mirror each other") {
  std::mt19937 rng(7u);
  std::uniform_int_distribution<int> top(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const Rat k = Rat(2 * top(rng) + 1, 2);
    for (long t = 0; t <= 4; ++t)
      CHECK(rising_factorial(k, t) == falling_factorial(k + Rat(t - 1), t));
  }
}

TEST_CASE("univariate polynomial arithmetic") {
  const UPoly p(std::vector<Rat>{Rat(1), Rat(0), Rat(3)});  // 1 + 3x^2
  const UPoly q(std::vector<Rat>{Rat(-1), Rat(1)});         // x - 1
  CHECK(p.degree() == 2);
  CHECK((p * q).coeff(3) == Rat(3));
  CHECK(p.eval(Rat(2)) == Rat(13));
  auto [quo, rem] = p.divmod(q);
  CHECK(quo * q + rem == p);
  CHECK(rem.degree() == 0);
  CHECK(p.shift(Rat(1)).eval(Rat(1)) == p.eval(Rat(2)));
  CHECK(p.compose(q).eval(Rat(3)) == p.eval(Rat(2)));
  CHECK(p.derivative() == UPoly(std::vector<Rat>{Rat(0), Rat(6)}));
  const UPoly g = UPoly::gcd(p * q, q * q);
  CHECK(g == q.monic());
  CHECK(*((p * q).divide_exact(q)) == p);
  CHECK_FALSE(p.divide_exact(q).has_value());
}

TEST_CASE("multivariate polynomial algebra") {
  const MPoly x = MPoly::variable("x");
  const MPoly y = MPoly::variable("y");
  const MPoly f = x * x + Rat(2) * (x * y) + y * y;
  CHECK(f == (x + y).pow(2));
  CHECK(f.degree("x") == 2);
  CHECK(f.total_degree() == 2);
  CHECK(f.eval({{"x", Rat(1)}, {"y", Rat(2)}}) == Rat(9));
  CHECK(f.substitute("y", Rat(0)) == (x * x).with_vars({"x"}));
  CHECK(f.coefficient("x", 1) == (Rat(2) * y).with_vars({"y"}));
  CHECK(f.substitute("y", -x) == MPoly({"x"}));
  CHECK_THROWS(f.with_vars({"x"}));
  const MPoly back = MPoly::from_json(f.to_json());
  CHECK(back == f);
  CHECK((x * x + x).to_upoly("x").degree() == 2);
  CHECK_THROWS(f.to_upoly("x"));
}

TEST_CASE("rational functions reduce to lowest terms with monic denominator") {
  const UPoly x = UPoly::x();
  const UPoly num = x * x - UPoly(Rat(1));
  const UPoly den = Rat(2) * (x - UPoly(Rat(1)));
  const RatFun f("z", num, den);
  CHECK(f.num() == Rat(1, 2) * (x + UPoly(Rat(1))));
  CHECK(f.den() == UPoly(Rat(1)));
  const RatFun g("z", UPoly(Rat(1)), x);
  CHECK((f + g).eval(Rat(2)) == Rat(2));
  CHECK_THROWS(g.eval(Rat(0)));
  CHECK((g * g * RatFun("z", x * x, UPoly(Rat(1)))) == RatFun::from_poly("z", UPoly(Rat(1))));
}

TEST_CASE("laurent series arithmetic tracks truncation") {
  HSeries one_minus_h(5);
  one_minus_h.set_coeff(0, Rat(1));
  one_minus_h.set_coeff(1, Rat(-1));
  const HSeries inv = one_minus_h.inverse();
  CHECK(inv.truncation_order() == 5);
  for (int e = 0; e <= 5; ++e) CHECK(inv.coeff(e) == Rat(1));
  CHECK((one_minus_h * inv).coeff(0) == Rat(1));
  CHECK((one_minus_h * inv).coeff(3) == Rat(0));

  HSeries lau = HSeries::monomial(-2, Rat(3), 4);
  lau.set_coeff(1, Rat(1));
  CHECK(lau.min_degree() == -2);
  const HSeries li = lau.inverse();
  CHECK(li.min_degree() == 2);
  CHECK((lau * li).coeff(0) == Rat(1));
  CHECK(lau.shifted(2).min_degree() == 0);
  CHECK_THROWS(lau.coeff(5));
  CHECK(lau.pow(2).coeff(-4) == Rat(9));
  CHECK(lau.pow(-1).agrees_with(li));

  HSeries a(3), b(7);
  a.set_coeff(0, Rat(1));
  b.set_coeff(0, Rat(1));
  CHECK((a + b).truncation_order() == 3);
  CHECK((a * b).truncation_order() == 3);
}

TEST_CASE("power series composition and inversion") {
  XSeries f(6);
  f.set_coeff(0, Rat(1));
  f.set_coeff(1, Rat(2));
  XSeries g(6);
  g.set_coeff(1, Rat(1));
  g.set_coeff(2, Rat(1));
  const XSeries h = f.compose(g);
  CHECK(h.coeff(0) == Rat(1));
  CHECK(h.coeff(2) == Rat(2));
  CHECK_THROWS(g.compose(f));
  const XSeries fi = f.inverse();
  CHECK((f * fi) == XSeries::constant(Rat(1), 6));
  CHECK(f.derivative().coeff(0) == Rat(2));
  CHECK(g.valuation() == 1);
  CHECK(XSeries(4).valuation() == 5);
}

TEST_CASE("exact linear solve by fraction-free elimination") {
  std::vector<std::vector<Rat>> a{{Rat(1, 2), Rat(1, 3)}, {Rat(1, 3), Rat(1, 4)}};
  std::vector<Rat> b{Rat(1), Rat(0)};
  const auto x = solve_linear(a, b);
  CHECK(a[0][0] * x[0] + a[0][1] * x[1] == b[0]);
  CHECK(a[1][0] * x[0] + a[1][1] * x[1] == b[1]);
  std::vector<std::vector<Rat>> sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_THROWS_AS(solve_linear(sing, b), std::runtime_error);
}

TEST_CASE("interpolation recovers polynomials exactly") {
  const UPoly p(std::vector<Rat>{Rat(1, 2), Rat(0), Rat(1)});
  std::vector<std::pair<Rat, Rat>> pts;
  for (int i = 0; i < 3; ++i) pts.emplace_back(Rat(i), p.eval(Rat(i)));
  CHECK(lagrange_interpolate(pts) == p);
  pts.emplace_back(Rat(0), Rat(9));
  CHECK_THROWS(lagrange_interpolate(pts));
}

TEST_CASE("resultant detects shared roots") {
  const UPoly x = UPoly::x();
  const UPoly a = (x - UPoly(Rat(1))) * (x - UPoly(Rat(2)));
  const UPoly b = x - UPoly(Rat(3));
  CHECK(resultant(a, b) == Rat(2));
  CHECK(resultant(a, x - UPoly(Rat(1))) == Rat(0));
  // Bilinearity spot check against the product of root differences.
  const UPoly c = (x - UPoly(Rat(1, 2))) * (x + UPoly(Rat(1)));
  CHECK(resultant(a, c) == (Rat(1) - Rat(1, 2)) * (Rat(1) + Rat(1)) * (Rat(2) - Rat(1, 2)) *
                               (Rat(2) + Rat(1)));
}

TEST_CASE("bernoulli numbers under the minus-half convention") {
  CHECK(bernoulli(0) == Rat(1));
  CHECK(bernoulli(1) == Rat(-1, 2));
  CHECK(bernoulli(2) == Rat(1, 6));
  CHECK(bernoulli(3) == Rat(0));
  CHECK(bernoulli(4) == Rat(-1, 30));
  CHECK(bernoulli(12) == Rat(-691, 2730));
}

TEST_CASE("power sum closed forms") {
  CHECK(faulhaber_power_sum(0) == UPoly::x());
  const UPoly s1 = faulhaber_power_sum(1);
  CHECK(s1 == UPoly(std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1, 2)}));
  const UPoly s2 = faulhaber_power_sum(2);
  CHECK(s2.eval(Rat(4)) == Rat(30));
  for (long p = 0; p <= 8; ++p) {
    const UPoly s = faulhaber_power_sum(p);
    Rat running(0);
    for (long n = 1; n <= 12; ++n) {
      running += Rat(n).pow(p);
      CHECK(s.eval(Rat(n)) == running);
    }
    CHECK(s.eval(Rat(0)) == Rat(0));
  }
}

namespace {

Rat chain_sum_strict(const Rat& x, long k, int d) {
  // Direct enumeration of 0 <= g_1 < ... < g_d < k.
  Rat acc(0);
  std::function<void(int, long, Rat)> rec = [&](int pos, long lo, Rat prod) {
    if (pos == d) {
      acc += prod;
      return;
    }
    for (long v = lo; v < k; ++v) rec(pos + 1, v + 1, prod * (x + Rat(v)));
  };
  rec(0, 0, Rat(1));
  return acc;
}

Rat chain_sum_weak(const Rat& x, long k, int d) {
  // Direct enumeration of 1 <= g_1 <= ... <= g_d <= k.
  Rat acc(0);
  std::function<void(int, long, Rat)> rec = [&](int pos, long lo, Rat prod) {
    if (pos == d) {
      acc += prod;
      return;
    }
    for (long v = lo; v <= k; ++v) rec(pos + 1, v, prod * (-x + Rat(v)));
  };
  rec(0, 1, Rat(1));
  return acc;
}

}  // namespace

TEST_CASE("progression sum polynomials match direct enumeration") {
  const MPoly t1 = T_poly(1);
  const MPoly expect1 =
      Rat(1, 2) * (MPoly::variable("k") * MPoly::variable("k") +
                   Rat(2) * (MPoly::variable("x") * MPoly::variable("k")) -
                   MPoly::variable("k"));
  CHECK(t1 == expect1);
  CHECK(T_poly(2).eval({{"x", Rat(0)}, {"k", Rat(3)}}) == Rat(2));
  const MPoly tt1 = T_tilde_poly(1);
  const MPoly expectt1 =
      Rat(1, 2) * (MPoly::variable("k") * MPoly::variable("k") -
                   Rat(2) * (MPoly::variable("x") * MPoly::variable("k")) +
                   MPoly::variable("k"));
  CHECK(tt1 == expectt1);
  CHECK(T_tilde_poly(2).eval({{"x", Rat(0)}, {"k", Rat(2)}}) == Rat(7));

  for (int d = 1; d <= 4; ++d) {
    for (long k = 0; k <= 6; ++k) {
      const Rat x(3, 2);
      CHECK(T_poly(d).eval({{"x", x}, {"k", Rat(k)}}) == chain_sum_strict(x, k, d));
      CHECK(T_tilde_poly(d).eval({{"x", x}, {"k", Rat(k)}}) == chain_sum_weak(x, k, d));
    }
  }
}

TEST_CASE("progression polynomials reflect into each other") {
  for (int d = 0; d <= 8; ++d) {
    const MPoly mk = -MPoly::variable("k");
    CHECK(T_tilde_poly(d) == T_poly(d).substitute("k", mk));
  }
}

TEST_CASE("progression polynomials vanish at k = 0 and have exact degree") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(T_poly(d).coefficient("k", 0).is_zero());
    CHECK(T_tilde_poly(d).coefficient("k", 0).is_zero());
    CHECK(T_poly(d).total_degree() == 2 * d);
    CHECK(T_tilde_poly(d).total_degree() == 2 * d);
  }
}

TEST_CASE("progression polynomials satisfy their window recurrences") {
  const MPoly x = MPoly::variable("x");
  const MPoly k = MPoly::variable("k");
  const MPoly km1 = k - MPoly::constant(Rat(1));
  for (int d = 1; d <= 6; ++d) {
    const MPoly lhs = T_poly(d) - T_poly(d).substitute("k", km1);
    const MPoly rhs = (x + km1) * T_poly(d - 1).substitute("k", km1);
    CHECK(lhs == rhs);

    MPoly rhs2({"x", "k"});
    for (int i = 1; i <= d; ++i)
      rhs2 = rhs2 + (k - x).pow(i) * T_tilde_poly(d - i).substitute("k", km1);
    const MPoly lhs2 = T_tilde_poly(d) - T_tilde_poly(d).substitute("k", km1);
    CHECK(lhs2 == rhs2);
  }
}
