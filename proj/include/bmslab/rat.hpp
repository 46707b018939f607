#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bmslab::exactmath {

// Exact rational scalar backed by GMP. Canonical form is enforced on every
// construction path: lowest terms, positive denominator, zero stored as 0/1.
// The serialized form is "p/q", shortened to "p" when the denominator is 1.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(static_cast<long>(n)) {}
  Rat(int n) : v_(static_cast<long>(n)) {}
  Rat(long num, long den);
  explicit Rat(const std::string& text);
  static Rat from_mpq(mpq_class v);

  const mpq_class& raw() const { return v_; }

  Rat numerator() const { return from_mpq(mpq_class(v_.get_num())); }
  Rat denominator() const { return from_mpq(mpq_class(v_.get_den())); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // Exact conversion to a machine integer; throws unless the value is an
  // integer that fits in long.
  long to_long() const;

  Rat operator-() const { return from_mpq(-v_); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

  Rat abs() const { return from_mpq(::abs(v_)); }
  Rat pow(long e) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class v_;
};

// n! for n >= 0; negative n is rejected.
Rat factorial(long n);

// Falling factorial (a)_b.
//   b > 0: a(a-1)...(a-b+1)
//   b = 0: 1
//   b < 0: 1/((a+1)(a+2)...(a-b)); a vanishing factor is rejected with an
//          error that names it.
Rat falling_factorial(const Rat& a, long b);

// Rising factorial k^(t), mirrored for t < 0 as 1/((k-1)...(k+t)) with the
// same vanishing-factor error.
Rat rising_factorial(const Rat& k, long t);

// Binomial coefficient with rational top argument; negative k gives 0.
Rat binomial(const Rat& a, long k);

}  // namespace bmslab::exactmath
