#pragma once

#include <map>
#include <string>
#include <vector>

#include "bmslab/rat.hpp"

namespace bmslab::exactmath {

// Truncated Laurent series in one formal variable h. Coefficients at
// exponents <= truncation_order() are exact; beyond that they are unknown,
// not zero. Negative exponents are allowed. Arithmetic propagates the
// tightest truncation implied by the operands.
class HSeries {
 public:
  explicit HSeries(int trunc) : trunc_(trunc) {}
  static HSeries constant(const Rat& c, int trunc);
  static HSeries monomial(int e, const Rat& c, int trunc);

  int truncation_order() const { return trunc_; }
  // Lowest exponent carrying a nonzero coefficient; trunc+1 for the zero
  // series.
  int min_degree() const;
  bool is_zero() const { return c_.empty(); }

  // Reading beyond the truncation order throws.
  Rat coeff(int e) const;
  void set_coeff(int e, const Rat& v);
  const std::map<int, Rat>& coeffs() const { return c_; }

  HSeries operator-() const;
  friend HSeries operator+(const HSeries& a, const HSeries& b);
  friend HSeries operator-(const HSeries& a, const HSeries& b);
  friend HSeries operator*(const HSeries& a, const HSeries& b);
  friend HSeries operator*(const Rat& s, HSeries p);
  // Structural equality: identical truncation and coefficients.
  friend bool operator==(const HSeries& a, const HSeries& b);

  // Equality of every coefficient over the shared known range.
  bool agrees_with(const HSeries& other) const;

  // Multiplication by c*h^e.
  HSeries shifted(int e, const Rat& c = Rat(1)) const;
  // Multiplicative inverse of a series with known leading term.
  HSeries inverse() const;
  HSeries pow(long e) const;
  HSeries truncated(int new_trunc) const;

  std::string str(const std::string& var = "h") const;

 private:
  std::map<int, Rat> c_;
  int trunc_;
};

// Dense truncated power series in X, exponents 0..order.
class XSeries {
 public:
  explicit XSeries(int order) : c_(static_cast<size_t>(order) + 1, Rat(0)), order_(order) {
    if (order < 0) throw std::invalid_argument("XSeries: negative order");
  }
  static XSeries constant(const Rat& c, int order);
  static XSeries monomial(int e, const Rat& c, int order);

  int order() const { return order_; }
  Rat coeff(int e) const;
  void set_coeff(int e, const Rat& v);
  // Lowest exponent with nonzero coefficient; order+1 for the zero series.
  int valuation() const;

  XSeries operator-() const;
  friend XSeries operator+(const XSeries& a, const XSeries& b);
  friend XSeries operator-(const XSeries& a, const XSeries& b);
  friend XSeries operator*(const XSeries& a, const XSeries& b);
  friend XSeries operator*(const Rat& s, XSeries p);
  friend bool operator==(const XSeries& a, const XSeries& b);

  // Substitution X -> inner; inner must have zero constant term.
  XSeries compose(const XSeries& inner) const;
  // Multiplicative inverse; the constant term must be nonzero.
  XSeries inverse() const;
  XSeries pow(long e) const;
  XSeries derivative() const;
  XSeries truncated(int new_order) const;

  std::string str(const std::string& var = "X") const;

 private:
  std::vector<Rat> c_;
  int order_;
};

}  // namespace bmslab::exactmath
