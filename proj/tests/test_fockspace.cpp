#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "bmslab/fockspace.hpp"
#include "bmslab/permoracle.hpp"

using namespace bmslab;
using namespace bmslab::fockspace;
using exactmath::HSeries;
using exactmath::Rat;
using exactmath::UPoly;

TEST_CASE("hook dimensions and characters") {
  CHECK(hook_dimension({4}) == 1);
  CHECK(hook_dimension({2, 1}) == 2);
  CHECK(hook_dimension({1, 1, 1}) == 1);
  CHECK(hook_dimension({3, 2}) == 5);

  CHECK(character({5}, {3, 1, 1}) == 1);
  CHECK(character({1, 1}, {2}) == -1);
  CHECK(character({2, 1}, {3}) == -1);
  CHECK(character({2, 2}, {2, 2}) == 2);
  CHECK_THROWS_AS(character({2, 1}, {2, 2}), std::invalid_argument);

  for (long n = 1; n <= 6; ++n)
    for (const Partition& lam : partitions_of(n)) {
      CAPTURE(part_str(lam));
      Partition ones(static_cast<size_t>(n), 1);
      CHECK(character(lam, ones) == hook_dimension(lam));
    }
}

TEST_CASE("character table column orthogonality") {
  for (long n = 1; n <= 6; ++n) {
    const auto parts = partitions_of(n);
    for (const Partition& mu : parts)
      for (const Partition& nu : parts) {
        mpz_class sum = 0;
        for (const Partition& lam : parts) sum += character(lam, mu) * character(lam, nu);
        CAPTURE(part_str(mu));
        CAPTURE(part_str(nu));
        const Rat expect = mu == nu ? z_weight(mu) : Rat(0);
        CHECK(Rat::from_mpq(mpq_class(sum)) == expect);
      }
  }
}

TEST_CASE("content products over diagram cells") {
  CHECK(content_product({}, 3, 5) == HSeries::constant(Rat(1), 5));

  HSeries sq(2);
  sq.set_coeff(0, Rat(1));
  sq.set_coeff(1, Rat(2));
  sq.set_coeff(2, Rat(1));
  CHECK(content_product({2}, 2, 2) == sq);

  HSeries lin(1);
  lin.set_coeff(0, Rat(1));
  lin.set_coeff(1, Rat(-1));
  CHECK(content_product({1, 1}, 1, 1) == lin);
}

TEST_CASE("disconnected expectation by the character sum") {
  CHECK(disconnected_vev(2, {2}, 2) == HSeries::monomial(1, Rat(1), 2));
  for (int m = 2; m <= 4; ++m)
    CHECK(disconnected_vev(m, {1}, 5) == HSeries::constant(Rat(1), 5));

  HSeries even(2);
  even.set_coeff(0, Rat(1));
  even.set_coeff(2, Rat(1));
  CHECK(disconnected_vev(2, {1, 1}, 2) == even);

  CHECK_THROWS_AS(disconnected_vev(2, Partition(33, 1), 1), std::runtime_error);
  CHECK_THROWS_AS(disconnected_vev(0, {2}, 1), std::invalid_argument);
}

TEST_CASE("connected correlator cumulants") {
  // One part: the connected and disconnected expectations agree after the
  // h^{-|mu|} shift.
  for (long k = 1; k <= 4; ++k)
    CHECK(connected_correlator(2, {k}, 3) ==
          disconnected_vev(2, {k}, 3 + static_cast<int>(k)).shifted(-static_cast<int>(k)));

  CHECK(connected_correlator(2, {1, 1}, 4) == HSeries::constant(Rat(1), 4));
  CHECK(connected_correlator(2, {3}, 1).coeff(1) == Rat(1, 3));
}

TEST_CASE("character route matches the permutation count") {
  for (int m = 2; m <= 3; ++m)
    for (long n = 1; n <= 4; ++n)
      for (const Partition& mu : partitions_of(n)) {
        for (int g = 0; permoracle::riemann_hurwitz_L(m, g, mu); ++g) {
          CAPTURE(m);
          CAPTURE(g);
          CAPTURE(part_str(mu));
          CHECK(bms_fock(m, g, mu) == permoracle::bms_connected_bruteforce(m, g, mu));
        }
        for (long L = m; L <= static_cast<long>(m) * n; ++L) {
          CAPTURE(m);
          CAPTURE(L);
          CAPTURE(part_str(mu));
          CHECK(bms_disconnected_fock(m, mu, L) ==
                permoracle::bms_disconnected_bruteforce(m, mu, L));
        }
      }
}

TEST_CASE("anchor values of the character route") {
  CHECK(bms_fock(2, 0, {1}) == Rat(1));
  CHECK(bms_fock(3, 0, {1}) == Rat(1));
  CHECK(bms_fock(2, 0, {3}) == Rat(5, 3));
  CHECK(bms_fock(2, 1, {3}) == Rat(1, 3));
  CHECK(bms_fock(2, 0, {1, 1, 1}) == Rat(2));
  CHECK(bms_fock(2, -1, {3}) == Rat(0));
}

namespace {

std::vector<Partition> wedge_basis(long max_size) {
  std::vector<Partition> out;
  for (long n = 0; n <= max_size; ++n)
    for (const Partition& lam : partitions_of(n)) out.push_back(lam);
  return out;
}

}  // namespace

TEST_CASE("slot occupation of basis vectors") {
  CHECK(slot_filled({}, -1));
  CHECK(slot_filled({}, -3));
  CHECK_FALSE(slot_filled({}, 1));
  // (2,1): slots 3/2, -1/2, -5/2, -7/2, ...
  CHECK(slot_filled({2, 1}, 3));
  CHECK(slot_filled({2, 1}, -1));
  CHECK_FALSE(slot_filled({2, 1}, 1));
  CHECK_FALSE(slot_filled({2, 1}, -3));
  CHECK(slot_filled({2, 1}, -5));
  CHECK_THROWS_AS(slot_filled({1}, 2), std::invalid_argument);
}

TEST_CASE("matrix element commutators on the wedge model") {
  const auto basis = wedge_basis(3);
  std::vector<Half> idx;
  for (Half x = -9; x <= 9; x += 2) idx.push_back(x);
  for (Half a : idx)
    for (Half b : idx)
      for (Half c : idx)
        for (Half d : idx) {
          for (const Partition& lam : basis) {
            const FockVector v = FockVector::basis(lam, 0);
            const FockVector lhs = e_wedge_apply(a, b, e_wedge_apply(c, d, v)) -
                                   e_wedge_apply(c, d, e_wedge_apply(a, b, v));
            FockVector rhs;
            if (b == c) rhs = rhs + e_wedge_apply(a, d, v);
            if (a == d) rhs = rhs - e_wedge_apply(c, b, v);
            if (b == c && a == d) {
              const int central = (b > 0 ? 1 : 0) - (d > 0 ? 1 : 0);
              if (central != 0) rhs = rhs + Rat(central) * v;
            }
            const FockVector diff = lhs - rhs;
            if (!diff.is_zero()) {
              CAPTURE(a);
              CAPTURE(b);
              CAPTURE(c);
              CAPTURE(d);
              CAPTURE(part_str(lam));
              CHECK(diff.is_zero());
            }
          }
        }
  CHECK(true);
}

TEST_CASE("current modes satisfy the Heisenberg relation") {
  const auto basis = wedge_basis(4);
  for (long k = -3; k <= 3; ++k)
    for (long l = -3; l <= 3; ++l) {
      if (k == 0 || l == 0) continue;
      for (const Partition& lam : basis) {
        const FockVector v = FockVector::basis(lam, 0);
        FockVector lhs = alpha_apply(k, alpha_apply(l, v)) - alpha_apply(l, alpha_apply(k, v));
        if (k + l == 0) lhs = lhs - Rat(k) * v;
        CAPTURE(k);
        CAPTURE(l);
        CAPTURE(part_str(lam));
        CHECK(lhs.is_zero());
      }
    }
}

TEST_CASE("weighted shift commutation with the unit-lowering current") {
  const auto basis = wedge_basis(4);
  const UPoly l = UPoly::x();
  const std::vector<UPoly> weights{
      UPoly(Rat(1)), l, l * l, l * l * l - Rat(2) * l + UPoly(Rat(1, 2))};
  for (long a = -2; a <= 2; ++a)
    for (const UPoly& f : weights) {
      const UPoly df = f - f.shift(Rat(-1));
      for (const Partition& lam : basis) {
        const FockVector v = FockVector::basis(lam, 0);
        const auto lower = [](const FockVector& w) {
          return weighted_shift_apply(UPoly(Rat(1)), -1, w);
        };
        const FockVector lhs =
            lower(weighted_shift_apply(f, a, v)) - weighted_shift_apply(f, a, lower(v));
        FockVector rhs = weighted_shift_apply(df, a - 1, v);
        if (a == 1) rhs = rhs + f.eval(Rat(-1, 2)) * v;
        const FockVector diff = lhs - rhs;
        CAPTURE(a);
        CAPTURE(f.str("l"));
        CAPTURE(part_str(lam));
        CHECK(diff.is_zero());
      }
    }
}

TEST_CASE("windowed conjugation slice") {
  const auto op = windowed_conjugation_oracle(2, 1, 8, 4);
  CHECK(op.id_part() == HSeries::monomial(-1, Rat(1), 4));

  for (Half l2 = op.lmin2(); l2 <= op.lmax2(); l2 += 2) {
    if (!op.entry_exact(l2 - 2, l2)) continue;
    CAPTURE(l2);
    CHECK(op.exact_entry(l2 - 2, l2).coeff(1) == Rat(1));
    // Same operator, diagonal part: 2 + 2l h + ...
    if (op.entry_exact(l2, l2)) {
      CHECK(op.exact_entry(l2, l2).coeff(0) == Rat(2));
      CHECK(op.exact_entry(l2, l2).coeff(1) == Rat(l2));
    }
  }

  CHECK_THROWS_AS(windowed_conjugation_oracle(2, 0, 8, 4), std::invalid_argument);
  CHECK_THROWS_AS(windowed_conjugation_oracle(2, 3, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(op.exact_entry(op.lmax2(), op.lmax2()), std::out_of_range);
}

TEST_CASE("window enlargement keeps the exact entries") {
  for (const auto& [m, k] : std::vector<std::pair<int, long>>{{2, 1}, {3, 2}}) {
    const int order = 3;
    const long W = k + order + 1;
    const auto small = windowed_conjugation_oracle(m, k, W, order);
    const auto large = windowed_conjugation_oracle(m, k, 2 * W, order);
    for (Half row = small.lmin2(); row <= small.lmax2(); row += 2)
      for (Half col = small.lmin2(); col <= small.lmax2(); col += 2) {
        if (!small.entry_exact(row, col)) continue;
        CAPTURE(m);
        CAPTURE(k);
        CAPTURE(row);
        CAPTURE(col);
        CHECK(small.exact_entry(row, col) == large.exact_entry(row, col));
      }
  }
}

TEST_CASE("identity part of the slice matches the one-part expectation") {
  for (int m = 2; m <= 3; ++m)
    for (long k = 1; k <= 3; ++k) {
      const int order = 3;
      const auto op = windowed_conjugation_oracle(m, k, k + order, order);
      const HSeries expect =
          disconnected_vev(m, {k}, order + static_cast<int>(k)).shifted(-static_cast<int>(k));
      CAPTURE(m);
      CAPTURE(k);
      CHECK(op.id_part() == expect);
    }
}
