#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmslab/rat.hpp"

namespace bmslab::exactmath {

// Dense univariate polynomial over Rat. The coefficient vector never has a
// trailing zero; the zero polynomial is the empty vector and reports
// degree() == -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const Rat& constant);
  explicit UPoly(std::vector<Rat> coeffs);
  static UPoly x();
  static UPoly monomial(int e, const Rat& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat leading() const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rat& s, UPoly p);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly pow(int e) const;

  // Quotient and remainder; the divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& divisor) const;
  // Exact quotient, or nullopt when the remainder is nonzero.
  std::optional<UPoly> divide_exact(const UPoly& divisor) const;

  Rat eval(const Rat& x) const;
  UPoly compose(const UPoly& inner) const;
  // p(x + a).
  UPoly shift(const Rat& a) const;
  UPoly derivative() const;
  UPoly monic() const;

  static UPoly gcd(UPoly a, UPoly b);

  std::string str(const std::string& var = "x") const;

 private:
  std::vector<Rat> c_;
  void trim();
};

// Sparse multivariate polynomial with named variables. Terms are keyed by
// exponent vectors parallel to vars(); binary operations unify the two
// variable lists first.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  static MPoly constant(const Rat& c);
  static MPoly variable(const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<std::vector<int>, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial; throws if any variable appears.
  Rat constant_value() const;

  bool has_var(const std::string& name) const;
  int var_index(const std::string& name) const;  // -1 when absent

  void add_term(const std::vector<int>& exp, const Rat& c);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rat& s, const MPoly& p);
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(int e) const;

  int degree(const std::string& var) const;   // -1 for the zero polynomial
  int total_degree() const;                   // -1 for the zero polynomial

  // Every variable that actually appears must be bound; extra bindings are
  // ignored.
  Rat eval(const std::map<std::string, Rat>& point) const;
  MPoly substitute(const std::string& var, const MPoly& value) const;
  MPoly substitute(const std::string& var, const Rat& value) const;

  // Coefficient of var^e as a polynomial in the remaining variables.
  MPoly coefficient(const std::string& var, int e) const;

  // Conversion to a univariate polynomial; every other variable must be
  // absent from the support.
  UPoly to_upoly(const std::string& var) const;
  static MPoly from_upoly(const UPoly& p, const std::string& var);

  // Reorders or extends the variable list; dropping a used variable throws.
  MPoly with_vars(const std::vector<std::string>& vars) const;
  // Drops variables that do not appear in any term.
  MPoly compact() const;

  std::string str() const;
  std::string to_json() const;
  static MPoly from_json(const std::string& text);

 private:
  std::vector<std::string> vars_;
  std::map<std::vector<int>, Rat> t_;
  static void align(const MPoly& a, const MPoly& b, MPoly& a2, MPoly& b2);
};

// Rational function in one named variable, stored gcd-reduced with a monic
// denominator. Zero is 0/1.
class RatFun {
 public:
  RatFun() : var_("x"), num_(), den_(UPoly(Rat(1))) {}
  RatFun(std::string var, UPoly num, UPoly den);
  static RatFun from_poly(std::string var, UPoly num);

  const std::string& var() const { return var_; }
  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  friend bool operator==(const RatFun& a, const RatFun& b);

  // Evaluation; a vanishing denominator throws.
  Rat eval(const Rat& x) const;
  bool defined_at(const Rat& x) const;

  std::string str() const;

 private:
  std::string var_;
  UPoly num_, den_;
  void reduce();
  static void check_same_var(const RatFun& a, const RatFun& b);
};

}  // namespace bmslab::exactmath
