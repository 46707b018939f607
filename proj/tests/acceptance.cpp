// Acceptance gate: every shipped guarantee exercised end to end, one
// verdict line per criterion.

#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "bmslab/aops.hpp"
#include "bmslab/faulhaber.hpp"
#include "bmslab/fockspace.hpp"
#include "bmslab/partitions.hpp"
#include "bmslab/permoracle.hpp"
#include "bmslab/quasipoly.hpp"
#include "bmslab/spectral.hpp"
#include "bmslab/toporec.hpp"

using bmslab::Partition;
using bmslab::exactmath::MPoly;
using bmslab::exactmath::Rat;
using bmslab::exactmath::UPoly;

namespace {

int failures = 0;

void criterion(int idx, const std::string& label,
               const std::function<bool()>& body, double budget_seconds = 0) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body();
    if (!ok) detail = "mismatch";
  } catch (const std::exception& e) {
    detail = e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (budget_seconds > 0 && secs >= budget_seconds) {
    ok = false;
    detail = "over time budget";
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": "
            << label << " (" << std::fixed << std::setprecision(1) << secs
            << "s)";
  if (!ok) {
    std::cout << " [" << detail << "]";
    ++failures;
  }
  std::cout << "\n" << std::flush;
}

void for_part_tuples(int n, long mu_max,
                     const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> cur(static_cast<size_t>(n), 0);
  std::function<void(int, long)> rec = [&](int pos, long hi) {
    if (pos == n) {
      f(cur);
      return;
    }
    for (long v = hi; v >= 1; --v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, mu_max);
}

bool routes_agree_with_anchors() {
  for (int m : {2, 3}) {
    for (long size = 1; size <= 5; ++size) {
      for (const Partition& mu : bmslab::partitions_of(size)) {
        for (int g = 0;; ++g) {
          if (!bmslab::permoracle::riemann_hurwitz_L(m, g, mu)) break;
          Rat brute = bmslab::permoracle::bms_connected_bruteforce(m, g, mu);
          Rat fock = bmslab::fockspace::bms_fock(m, g, mu);
          if (brute != fock) return false;
        }
      }
    }
  }
  if (bmslab::fockspace::bms_fock(2, 0, {3}) != Rat(5, 3)) return false;
  if (bmslab::fockspace::bms_fock(2, 1, {3}) != Rat(1, 3)) return false;
  if (bmslab::fockspace::bms_fock(2, 0, {1, 1, 1}) != Rat(2)) return false;
  return true;
}

bool genus0_matches_bruteforce() {
  for (int m : {2, 3}) {
    for (long size = 1; size <= 5; ++size) {
      for (const Partition& mu : bmslab::partitions_of(size)) {
        Rat closed = bmslab::permoracle::genus0_formula(m, mu);
        Rat brute = bmslab::permoracle::bms_connected_bruteforce(m, 0, mu);
        if (closed != brute) return false;
      }
    }
  }
  return true;
}

bool unstable_expansions_hold() {
  for (int m : {2, 3, 4}) {
    if (!bmslab::spectral::omega01_check(m, 10).pass) return false;
    if (!bmslab::spectral::omega02_check(m, 10).pass) return false;
  }
  return true;
}

bool xi_dual_path_and_interpolation() {
  for (int m = 2; m <= 4; ++m) {
    for (int i = 0; i < m; ++i) {
      bmslab::spectral::xi_series(m, i, 12);
    }
  }
  std::mt19937 rng(413001u);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  for (int m : {2, 3}) {
    for (int d = 0; d <= 2; ++d) {
      long dim = static_cast<long>(m) * (d + 1);
      for (int trial = 0; trial < 20; ++trial) {
        UPoly p;
        for (long e = 0; e < dim; ++e) {
          p = p + UPoly::monomial(static_cast<int>(e),
                                  Rat(num(rng), den(rng)));
        }
        bmslab::spectral::xi_from_poly(m, d, MPoly::from_upoly(p, "k"));
      }
    }
  }
  return true;
}

bool operator_calculus_holds() {
  namespace aops = bmslab::aops;
  for (int m : {2, 3}) {
    const aops::ACoeffTable table = aops::acoeff_table(m, 3, 2);
    for (long k = 1; k <= 4; ++k) {
      for (long q = 1; q <= 3; ++q) {
        for (int p = 0; p <= 2; ++p) {
          for (const Rat& l : {Rat(1, 2), Rat(5, 2)}) {
            if (table.e_coeff(k, q, p, l) != aops::acheck_E_coeff(m, k, q, p, l)) {
              return false;
            }
          }
        }
      }
      for (int p = -1; p <= 2; ++p) {
        if (table.id_coeff(k, p) != aops::acheck_Id_coeff(m, k, p)) {
          return false;
        }
      }
    }
  }
  for (int m = 2; m <= 5; ++m) {
    for (int p = 0; p <= 3; ++p) {
      UPoly want = p == 1 ? UPoly::monomial(2, Rat(m * (m - 1), 2)) : UPoly();
      if (!(aops::euler_weighted_difference(p, m) == want)) return false;
    }
  }
  for (int m : {2, 3, 4}) {
    for (int p = 0; p <= 3; ++p) {
      Rat expect = p == 0 ? Rat(1) : Rat(0);
      if (aops::rho(p, m).eval(Rat(0)) != expect) return false;
      if (aops::rho(p, m).eval(Rat(1, 1 - m)) != expect) return false;
    }
  }
  for (int m : {2, 3}) {
    for (int p = 0; p <= 3; ++p) {
      aops::s_id_numerator(m, p);
    }
  }
  for (int m : {2, 3}) {
    for (long r = 1; r <= 3; ++r) {
      for (long q = 1; q <= 4; ++q) {
        for (int p = 0; p <= 1; ++p) {
          for (const Rat& l : {Rat(1, 2), Rat(-3, 2)}) {
            if (!aops::residue_relation_check(m, r, q, p, l)) return false;
          }
        }
      }
    }
  }
  return true;
}

const std::vector<std::pair<int, int>> kFittedPairs{
    {0, 3}, {0, 4}, {1, 1}, {1, 2}};

bool count_forms_fit() {
  for (int m : {2, 3}) {
    for (auto [g, n] : kFittedPairs) {
      auto form = bmslab::quasipoly::fit_poly(m, g, n);
      if (g == 0 && n == 3) {
        MPoly want = MPoly::constant(Rat(m));
        for (int i = 1; i <= 3; ++i) {
          MPoly mu = MPoly::variable("mu" + std::to_string(i));
          for (long j = 1; j < m; ++j) {
            want = want * (Rat(m) * mu - MPoly::constant(Rat(j)));
          }
        }
        if (!(form.poly == want)) return false;
      }
    }
  }
  return true;
}

bool assembled_tensors_reproduce_counts() {
  for (int m : {2, 3}) {
    for (auto [g, n] : kFittedPairs) {
      auto form = bmslab::quasipoly::fit_poly(m, g, n);
      bmslab::spectral::WTensor w = bmslab::spectral::w_assemble(form);
      bool ok = true;
      for_part_tuples(n, 4, [&](const std::vector<long>& mu) {
        if (!ok) return;
        if (w.coefficient(mu) != bmslab::fockspace::bms_fock(m, g, mu)) {
          ok = false;
        }
      });
      if (!ok) return false;
    }
  }
  return true;
}

bool recursion_matches_counts() {
  for (auto [g, n] : {std::pair<int, int>{0, 3},
                      {1, 1},
                      {0, 4},
                      {1, 2},
                      {2, 1}}) {
    if (!bmslab::toporec::expand_and_compare(g, n, 6).pass) return false;
  }
  return true;
}

bool progression_polynomials_reflect() {
  for (int d = 0; d <= 8; ++d) {
    MPoly t = bmslab::exactmath::T_poly(d);
    MPoly tt = bmslab::exactmath::T_tilde_poly(d);
    if (!(tt == t.substitute("k", -MPoly::variable("k")))) return false;
    if (d >= 1) {
      if (!t.coefficient("k", 0).is_zero()) return false;
      if (!tt.coefficient("k", 0).is_zero()) return false;
      if (t.total_degree() != 2 * d) return false;
      if (tt.total_degree() != 2 * d) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "character route equals brute force with anchor values",
            routes_agree_with_anchors, 120.0);
  criterion(2, "genus-0 closed formula equals brute force",
            genus0_matches_bruteforce, 120.0);
  criterion(3, "one- and two-point expansions match the curve",
            unstable_expansions_hold);
  criterion(4, "xi series dual paths agree and interpolation round-trips",
            xi_dual_path_and_interpolation);
  criterion(5, "operator coefficient calculus holds on all routes",
            operator_calculus_holds, 300.0);
  criterion(6, "count forms fit exactly with held-out validation",
            count_forms_fit);
  criterion(7, "assembled tensors reproduce the counts on the grid",
            assembled_tensors_reproduce_counts);
  criterion(8, "recursion output equals the counts through part size six",
            recursion_matches_counts);
  criterion(9, "progression polynomials reflect and divide as stated",
            progression_polynomials_reflect);
  if (failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria failed\n";
  return 1;
}
