#include "bmslab/rat.hpp"

#include <mutex>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace bmslab::exactmath {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rat: empty string");
  if (mpq_set_str(v_.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("Rat: cannot parse '" + text + "'");
  if (mpz_sgn(mpq_denref(v_.get_mpq_t())) == 0)
    throw std::domain_error("Rat: zero denominator in '" + text + "'");
  v_.canonicalize();
}

Rat Rat::from_mpq(mpq_class v) {
  Rat r;
  v.canonicalize();
  r.v_ = std::move(v);
  return r;
}

long Rat::to_long() const {
  if (!is_integer()) throw std::domain_error("Rat::to_long: not an integer: " + str());
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p()) throw std::overflow_error("Rat::to_long: out of range: " + str());
  return n.get_si();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  if (is_zero()) {
    if (e < 0) throw std::domain_error("Rat::pow: zero base with negative exponent");
    return Rat(0);
  }
  mpq_class base = v_;
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul
                           : static_cast<unsigned long>(e);
  mpq_class acc(1);
  while (n > 0) {
    if (n & 1ul) acc *= base;
    base *= base;
    n >>= 1;
  }
  if (invert) acc = 1 / acc;
  return from_mpq(acc);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  static std::vector<mpz_class> table{1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(table.size()) <= n)
    table.push_back(table.back() * static_cast<long>(table.size()));
  return Rat::from_mpq(mpq_class(table[static_cast<size_t>(n)]));
}

Rat falling_factorial(const Rat& a, long b) {
  if (b == 0) return Rat(1);
  Rat acc(1);
  if (b > 0) {
    for (long i = 0; i < b; ++i) acc *= a - Rat(i);
    return acc;
  }
  for (long i = 1; i <= -b; ++i) {
    Rat factor = a + Rat(i);
    if (factor.is_zero())
      throw std::domain_error("falling_factorial: factor (" + a.str() + " + " +
                              std::to_string(i) + ") vanishes");
    acc *= factor;
  }
  return Rat(1) / acc;
}

Rat rising_factorial(const Rat& k, long t) {
  if (t == 0) return Rat(1);
  Rat acc(1);
  if (t > 0) {
    for (long i = 0; i < t; ++i) acc *= k + Rat(i);
    return acc;
  }
  for (long i = 1; i <= -t; ++i) {
    Rat factor = k - Rat(i);
    if (factor.is_zero())
      throw std::domain_error("rising_factorial: factor (" + k.str() + " - " +
                              std::to_string(i) + ") vanishes");
    acc *= factor;
  }
  return Rat(1) / acc;
}

Rat binomial(const Rat& a, long k) {
  if (k < 0) return Rat(0);
  return falling_factorial(a, k) / factorial(k);
}

}  // namespace bmslab::exactmath
