#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/toporec.hpp"

using bmslab::exactmath::MPoly;
using bmslab::exactmath::Rat;
using bmslab::exactmath::UPoly;
namespace tr = bmslab::toporec;

namespace {

UPoly lin(const Rat& c0, const Rat& c1) {
  return UPoly(std::vector<Rat>{c0, c1});
}

const tr::CompareRow& row_for(const tr::CompareReport& rep,
                              const std::vector<long>& mu) {
  for (const auto& r : rep.rows) {
    if (r.mu == mu) return r;
  }
  throw std::runtime_error("tuple missing from report");
}

}  // namespace

TEST_CASE("degree two curve data") {
  tr::CurveData cd = tr::curve_data_m2();

  SUBCASE("x is invariant under z -> 1/z") {
    CHECK(tr::reciprocal_arg(cd.x) == cd.x);
    CHECK(cd.x.eval(Rat(2)) == Rat(9, 2));
    CHECK(cd.x.eval(Rat(1, 2)) == Rat(9, 2));
  }

  SUBCASE("dx/dz vanishes exactly at z = 1 and z = -1") {
    CHECK(cd.dx_dz.num() == UPoly(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)}));
    CHECK(cd.dx_dz.eval(Rat(1)).is_zero());
    CHECK(cd.dx_dz.eval(Rat(-1)).is_zero());
    CHECK(cd.dx_dz.eval(Rat(2)) == Rat(3, 4));
  }

  SUBCASE("first one-form matches -z^2/(1+z)^2 times dx/dz") {
    CHECK(cd.w01_over_dz == tr::RatFunZ("z", lin(Rat(1), Rat(-1)), lin(Rat(1), Rat(1))));
    tr::RatFunZ y("z", UPoly::monomial(2, Rat(-1)), lin(Rat(1), Rat(1)).pow(2));
    CHECK(y * cd.dx_dz == cd.w01_over_dz);
  }

  SUBCASE("reciprocal substitution on a sample function") {
    tr::RatFunZ f("z", UPoly::monomial(2, Rat(1)), lin(Rat(3), Rat(1)));
    tr::RatFunZ g = tr::reciprocal_arg(f);
    CHECK(g.eval(Rat(2)) == f.eval(Rat(1, 2)));
    CHECK(g.eval(Rat(1, 5)) == f.eval(Rat(5)));
  }
}

TEST_CASE("recursion rejects invalid and oversized inputs") {
  CHECK_THROWS_AS(tr::omega(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(tr::omega(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(tr::omega(-1, 3), std::invalid_argument);
  CHECK_THROWS_AS(tr::omega(0, 0), std::invalid_argument);
  CHECK_THROWS_WITH_AS(tr::omega(3, 1), doctest::Contains("budget"),
                       std::runtime_error);
  CHECK_THROWS_AS(tr::omega(1, 3, 2), std::runtime_error);
  CHECK_THROWS_AS(tr::expand_and_compare(0, 3, 0), std::invalid_argument);
}

TEST_CASE("three-point output is a constant over the critical denominator") {
  const tr::MultiDiff& md = tr::omega(0, 3);
  CHECK(md.g == 0);
  CHECK(md.n == 3);
  tr::MultiDiff::Combined c = md.combined();
  CHECK(c.pole_minus == 2);
  CHECK(c.pole_plus == 0);
  MPoly num = c.numerator.compact();
  CHECK(num.is_constant());
  CHECK(num.constant_value() == Rat(2));
}

TEST_CASE("one-loop one-point output") {
  tr::MultiDiff::Combined c = tr::omega(1, 1).combined();
  CHECK(c.pole_minus == 4);
  CHECK(c.pole_plus == 2);
  CHECK(c.numerator.compact() == MPoly::variable("z1").pow(2));

  tr::CompareReport rep = tr::expand_and_compare(1, 1, 5);
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 5);
  CHECK(row_for(rep, {1}).tr_value.is_zero());
  CHECK(row_for(rep, {2}).tr_value.is_zero());
  CHECK(row_for(rep, {3}).tr_value == Rat(1, 3));
  CHECK(row_for(rep, {4}).tr_value == Rat(5, 2));
}

TEST_CASE("expansion coefficients match the fermionic counts") {
  SUBCASE("(0, 3)") {
    tr::CompareReport rep = tr::expand_and_compare(0, 3, 4);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 20);
    CHECK(row_for(rep, {1, 1, 1}).tr_value == Rat(2));
    CHECK(row_for(rep, {2, 1, 1}).tr_value == Rat(6));
    CHECK(row_for(rep, {2, 2, 2}).tr_value == Rat(54));
  }
  SUBCASE("(0, 4)") {
    tr::CompareReport rep = tr::expand_and_compare(0, 4, 4);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 35);
  }
  SUBCASE("(1, 2)") {
    tr::CompareReport rep = tr::expand_and_compare(1, 2, 5);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 15);
  }
  SUBCASE("(2, 1)") {
    tr::CompareReport rep = tr::expand_and_compare(2, 1, 5);
    CHECK(rep.pass);
    auto c = tr::omega(2, 1).combined();
    CHECK(c.pole_minus == 10);
    CHECK(c.pole_plus == 4);
  }
}

TEST_CASE("outputs are symmetric under permuting the variables") {
  tr::MultiDiff::Combined c = tr::omega(0, 4).combined();
  MPoly num = c.numerator.with_vars({"z1", "z2", "z3", "z4"});
  std::map<std::string, Rat> pt{{"z1", Rat(5)}, {"z2", Rat(7)},
                                {"z3", Rat(11)}, {"z4", Rat(13)}};
  Rat ref = num.eval(pt);
  std::map<std::string, Rat> rot{{"z1", Rat(7)}, {"z2", Rat(11)},
                                 {"z3", Rat(13)}, {"z4", Rat(5)}};
  std::map<std::string, Rat> swp{{"z1", Rat(7)}, {"z2", Rat(5)},
                                 {"z3", Rat(11)}, {"z4", Rat(13)}};
  CHECK(num.eval(rot) == ref);
  CHECK(num.eval(swp) == ref);
}

TEST_CASE("two-loop value decays in the expansion variable") {
  // sanity on a deep case: the first nonvanishing coefficient sits at the
  // expected offset and the low ones vanish
  tr::CompareReport rep = tr::expand_and_compare(2, 1, 6);
  CHECK(rep.pass);
  CHECK(row_for(rep, {1}).tr_value.is_zero());
  CHECK(row_for(rep, {5}).tr_value == row_for(rep, {5}).fock_value);
  CHECK_FALSE(row_for(rep, {6}).tr_value.is_zero());
}
