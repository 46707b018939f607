#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "bmslab/fockspace.hpp"
#include "bmslab/linalg.hpp"
#include "bmslab/quasipoly.hpp"
#include "bmslab/spectral.hpp"

using bmslab::exactmath::MPoly;
using bmslab::exactmath::Rat;
using bmslab::exactmath::UPoly;
using bmslab::exactmath::XSeries;
namespace sp = bmslab::spectral;
namespace qp = bmslab::quasipoly;

namespace {

UPoly linear(const Rat& c0, const Rat& c1) {
  return UPoly(std::vector<Rat>{c0, c1});
}

// The polynomial p with prefactor(m,k) * p(k) = binom(mk-m, k-i).
UPoly xi_recovery_poly(int m, int i) {
  UPoly p(Rat(1));
  for (long t = 0; t < i; ++t) p = p * linear(Rat(-t), Rat(1));
  for (long s = 0; s + i <= m - 2; ++s) p = p * linear(Rat(-1 - s), Rat(m - 1));
  return p;
}

}  // namespace

TEST_CASE("inverse series of X = z/(1+z)^m") {
  auto z2 = sp::z_series(2, 6);
  CHECK(z2.coeff(0) == Rat(0));
  CHECK(z2.coeff(1) == Rat(1));
  CHECK(z2.coeff(2) == Rat(2));
  CHECK(z2.coeff(3) == Rat(5));
  CHECK(sp::z_series(3, 3).coeff(1) == Rat(1));

  SUBCASE("composing back yields the identity series") {
    for (int m = 2; m <= 4; ++m) {
      int order = 12;
      XSeries zvar = XSeries::monomial(1, Rat(1), order);
      XSeries x_of_z =
          zvar * ((XSeries::constant(Rat(1), order) + zvar).pow(m)).inverse();
      CHECK(x_of_z.compose(sp::z_series(m, order)) ==
            XSeries::monomial(1, Rat(1), order));
    }
  }

  SUBCASE("fixed-point iteration gives the same coefficients") {
    for (int m = 2; m <= 3; ++m) {
      int order = 10;
      XSeries cur(order);
      XSeries xvar = XSeries::monomial(1, Rat(1), order);
      for (int it = 0; it <= order; ++it) {
        cur = xvar * (XSeries::constant(Rat(1), order) + cur).pow(m);
      }
      CHECK(cur == sp::z_series(m, order));
    }
  }
}

TEST_CASE("xi expansions agree along both routes") {
  auto xi20 = sp::xi_series(2, 0, 8);
  CHECK(xi20.coeff(0) == Rat(1));
  CHECK(xi20.coeff(2) == Rat(1));
  CHECK(xi20.coeff(3) == Rat(4));
  CHECK(sp::xi_series(2, 1, 8).coeff(1) == Rat(1));

  for (int m = 2; m <= 4; ++m) {
    for (int i = 0; i < m; ++i) {
      CHECK_NOTHROW(sp::xi_series(m, i, 12));
    }
  }
  CHECK_THROWS_AS(sp::xi_series(2, 2, 8), std::invalid_argument);
}

TEST_CASE("derivation acts as X^k to -k X^(k+1)") {
  XSeries one = XSeries::constant(Rat(1), 5);
  XSeries d_one = sp::d_operator(one);
  for (int k = 0; k <= 6; ++k) CHECK(d_one.coeff(k) == Rat(0));

  XSeries xk = XSeries::monomial(3, Rat(1), 5);
  XSeries dxk = sp::d_operator(xk);
  CHECK(dxk.coeff(4) == Rat(-3));
  CHECK(dxk.coeff(3) == Rat(0));

  SUBCASE("prefactor identity for the derived xi series") {
    // xi_0 at m = 2 expands with the polynomial P(k) = k - 1, so the
    // derived series expands with P(k-1) = k - 2 and the shifted pole.
    int order = 9;
    XSeries dxi0 = sp::d_operator(sp::xi_series(2, 0, order));
    for (long k = 1; k <= order + 1; ++k) {
      Rat expected = -qp::prefactor(2, k) * (Rat(k) - Rat(2)) * Rat(k) *
                     (Rat(k) - Rat(1)) / (Rat(4) * (Rat(k) - Rat(3, 2)));
      CHECK(dxi0.coeff(static_cast<int>(k)) == expected);
    }
  }
}

TEST_CASE("solving for an element from its expansion polynomial") {
  SUBCASE("zero polynomial gives the zero element") {
    auto e = sp::xi_from_poly(2, 1, MPoly());
    CHECK(e.is_zero());
    CHECK(e.expansion_coeff(5) == Rat(0));
  }

  SUBCASE("plain xi recovery at depth zero") {
    for (int m = 2; m <= 3; ++m) {
      for (int i = 0; i < m; ++i) {
        auto e = sp::xi_from_poly(m, 0, MPoly::from_upoly(xi_recovery_poly(m, i), "k"));
        for (int j = 0; j < m; ++j) {
          CHECK(e.coeffs[0][static_cast<size_t>(j)] == (j == i ? Rat(1) : Rat(0)));
        }
      }
    }
  }

  SUBCASE("depth one solve verifies and matches a direct series assembly") {
    auto e = sp::xi_from_poly(2, 1, MPoly::variable("k"));
    int order = 10;
    XSeries assembled(order);
    for (int a = 0; a <= e.d; ++a) {
      for (int i = 0; i < e.m; ++i) {
        Rat c = e.coeffs[static_cast<size_t>(a)][static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        XSeries s = sp::xi_series(e.m, i, order + a);
        for (int t = 0; t < a; ++t) s = sp::d_operator(s.truncated(order + a - t - 1));
        assembled = assembled + c * s.truncated(order);
      }
    }
    CHECK(assembled == e.expansion(order));
  }

  SUBCASE("interpolating an element's own expansion returns it") {
    std::mt19937 rng(77001u);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (int m = 2; m <= 3; ++m) {
      for (int d = 0; d <= 2; ++d) {
        sp::XiElement e;
        e.m = m;
        e.d = d;
        e.coeffs.assign(static_cast<size_t>(d) + 1,
                        std::vector<Rat>(static_cast<size_t>(m)));
        for (auto& row : e.coeffs) {
          for (auto& v : row) v = Rat(pick(rng));
        }
        long dim = static_cast<long>(m) * (d + 1);
        std::vector<std::pair<Rat, Rat>> samples;
        for (long k = 1; k <= dim; ++k) {
          Rat pole(1);
          for (long j = m + 1; j < static_cast<long>(m) * (d + 1); ++j) {
            if (j % m != 0) pole *= Rat(k) - Rat(j, m);
          }
          samples.emplace_back(Rat(k),
                               e.expansion_coeff(k) * pole / qp::prefactor(m, k));
        }
        UPoly p = bmslab::exactmath::lagrange_interpolate(samples);
        auto back = sp::xi_from_poly(m, d, MPoly::from_upoly(p, "k"));
        CHECK(back.coeffs == e.coeffs);
      }
    }
  }

  SUBCASE("degree beyond the space dimension is rejected") {
    MPoly k = MPoly::variable("k");
    CHECK_THROWS_AS(sp::xi_from_poly(2, 0, k * k), std::invalid_argument);
  }

  SUBCASE("serialization round trip") {
    auto e = sp::xi_from_poly(3, 1, MPoly::variable("k"));
    auto back = sp::XiElement::from_json(e.to_json());
    CHECK(back.m == e.m);
    CHECK(back.d == e.d);
    CHECK(back.coeffs == e.coeffs);
  }
}

TEST_CASE("tensor assembly reproduces connected counts") {
  SUBCASE("three-point genus zero") {
    auto w = sp::w_assemble(qp::fit_poly(2, 0, 3));
    for (long a = 1; a <= 3; ++a) {
      for (long b = 1; b <= a; ++b) {
        for (long c = 1; c <= b; ++c) {
          CHECK(w.coefficient({a, b, c}) ==
                bmslab::fockspace::bms_fock(2, 0, {a, b, c}));
        }
      }
    }
    CHECK(w.coefficient({4, 2, 1}) == bmslab::fockspace::bms_fock(2, 0, {4, 2, 1}));
  }

  SUBCASE("one-point genus one") {
    auto w = sp::w_assemble(qp::fit_poly(2, 1, 1));
    for (long k = 1; k <= 6; ++k) {
      CHECK(w.coefficient({k}) == bmslab::fockspace::bms_fock(2, 1, {k}));
    }
  }

  SUBCASE("zero polynomial gives the zero tensor") {
    qp::QuasiPolyForm form;
    form.m = 2;
    form.g = 0;
    form.n = 3;
    auto w = sp::w_assemble(form);
    CHECK(w.terms.empty());
    CHECK(w.coefficient({2, 1, 1}) == Rat(0));
  }
}

TEST_CASE("one-point and two-point expansion checks") {
  for (int m = 2; m <= 3; ++m) {
    auto r1 = sp::omega01_check(m, 6);
    CHECK(r1.pass);
    CHECK(r1.failures.empty());
    auto r2 = sp::omega02_check(m, 6);
    CHECK(r2.pass);
    CHECK(r2.failures.empty());
  }
  CHECK_THROWS_AS(sp::omega01_check(2, 1), std::invalid_argument);
}

TEST_CASE("pole-shift cofactor polynomials stay coprime") {
  for (int m = 2; m <= 4; ++m) {
    for (int d = 0; d <= 2; ++d) {
      UPoly first(Rat(1));
      for (long i = static_cast<long>(d + 1) * m + 1; i <= static_cast<long>(d + 2) * m - 1;
           ++i) {
        first = first * linear(Rat(-i, m), Rat(1));
      }
      UPoly second(Rat(1));
      for (long i = 0; i < m; ++i) {
        second = second * linear(Rat(-i, m - 1), Rat(1));
      }
      CHECK(first.degree() == m - 1);
      CHECK(second.degree() == m);
      CHECK(bmslab::exactmath::resultant(first, second) != Rat(0));
    }
  }
}
