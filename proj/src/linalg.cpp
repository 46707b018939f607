#include "bmslab/linalg.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace bmslab::exactmath {

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const size_t n = a.size();
  if (n == 0) return {};
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("solve_linear: matrix must be square");
  if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");

  // Augmented integer matrix: each row is scaled by the lcm of its
  // denominators, which leaves the solution unchanged.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    mpz_class lcm = 1;
    auto fold = [&lcm](const Rat& r) {
      mpz_class den = r.raw().get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    };
    for (size_t j = 0; j < n; ++j) fold(a[i][j]);
    fold(b[i]);
    for (size_t j = 0; j < n; ++j)
      m[i][j] = a[i][j].raw().get_num() * (lcm / a[i][j].raw().get_den());
    m[i][n] = b[i].raw().get_num() * (lcm / b[i].raw().get_den());
  }

  mpz_class prev = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("solve_linear: singular system");
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j <= n; ++j) {
        mpz_class num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_class q;
        // Bareiss elimination divides exactly by the previous pivot.
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = q;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  std::vector<Rat> x(n);
  for (size_t ii = n; ii-- > 0;) {
    Rat acc = Rat::from_mpq(mpq_class(m[ii][n]));
    for (size_t j = ii + 1; j < n; ++j)
      acc -= Rat::from_mpq(mpq_class(m[ii][j])) * x[j];
    x[ii] = acc / Rat::from_mpq(mpq_class(m[ii][ii]));
  }
  return x;
}

UPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("lagrange_interpolate: repeated abscissa " +
                                    points[i].first.str());
  UPoly acc;
  for (size_t i = 0; i < points.size(); ++i) {
    UPoly basis(Rat(1));
    Rat denom(1);
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * UPoly(std::vector<Rat>{-points[j].first, Rat(1)});
      denom *= points[i].first - points[j].first;
    }
    acc += (points[i].second / denom) * basis;
  }
  return acc;
}

Rat resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  // res(a,b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * res(b, r)
  // with r the remainder of a by b; the recursion bottoms out at constants.
  UPoly f = a, g = b;
  Rat acc(1);
  while (g.degree() > 0) {
    UPoly r = f.divmod(g).second;
    const int df = f.degree(), dg = g.degree(), dr = r.degree();
    if ((df * dg) % 2 == 1) acc = -acc;
    if (r.is_zero()) return Rat(0);
    acc *= g.leading().pow(df - dr);
    f = g;
    g = r;
  }
  // g is a nonzero constant.
  return acc * g.coeff(0).pow(f.degree());
}

}  // namespace bmslab::exactmath
