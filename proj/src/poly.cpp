#include "bmslab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bmslab::exactmath {

// ---------------------------------------------------------------- UPoly ----

UPoly::UPoly(const Rat& constant) {
  if (!constant.is_zero()) c_.push_back(constant);
}

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return monomial(1, Rat(1)); }

UPoly UPoly::monomial(int e, const Rat& c) {
  if (e < 0) throw std::invalid_argument("UPoly::monomial: negative exponent");
  UPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<size_t>(e) + 1, Rat(0));
  p.c_.back() = c;
  return p;
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<size_t>(i)];
}

Rat UPoly::leading() const {
  if (c_.empty()) throw std::domain_error("UPoly::leading: zero polynomial");
  return c_.back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (Rat& v : r.c_) v = -v;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly operator*(const Rat& s, UPoly p) {
  if (s.is_zero()) return UPoly();
  for (Rat& v : p.c_) v *= s;
  return p;
}

UPoly UPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("UPoly::pow: negative exponent");
  UPoly acc(Rat(1)), base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("UPoly::divmod: zero divisor");
  UPoly rem(*this);
  UPoly quot;
  const int dd = divisor.degree();
  const Rat lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= dd) {
    const int shift = rem.degree() - dd;
    const Rat factor = rem.leading() / lead;
    quot += UPoly::monomial(shift, factor);
    rem -= UPoly::monomial(shift, factor) * divisor;
  }
  return {quot, rem};
}

std::optional<UPoly> UPoly::divide_exact(const UPoly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + UPoly(c_[i]);
  return acc;
}

UPoly UPoly::shift(const Rat& a) const {
  return compose(UPoly(std::vector<Rat>{a, Rat(1)}));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> out(c_.size() - 1, Rat(0));
  for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return (Rat(1) / leading()) * *this;
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rat& v = c_[i];
    if (v.is_zero()) continue;
    Rat mag = v.abs();
    if (first) {
      if (v.sign() < 0) os << "-";
      first = false;
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != Rat(1)) os << mag.str();
    if (i > 0) {
      if (mag != Rat(1)) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- MPoly ----

MPoly MPoly::constant(const Rat& c) {
  MPoly p;
  if (!c.is_zero()) p.t_[{}] = c;
  return p;
}

MPoly MPoly::variable(const std::string& name) {
  MPoly p({name});
  p.t_[{1}] = Rat(1);
  return p;
}

bool MPoly::is_constant() const {
  for (const auto& [e, c] : t_)
    for (int x : e)
      if (x != 0) return false;
  return true;
}

Rat MPoly::constant_value() const {
  if (t_.empty()) return Rat(0);
  if (!is_constant()) throw std::domain_error("MPoly::constant_value: not constant: " + str());
  return t_.begin()->second;
}

bool MPoly::has_var(const std::string& name) const {
  return var_index(name) >= 0;
}

int MPoly::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

void MPoly::add_term(const std::vector<int>& exp, const Rat& c) {
  if (exp.size() != vars_.size())
    throw std::invalid_argument("MPoly::add_term: exponent arity mismatch");
  if (c.is_zero()) return;
  auto it = t_.find(exp);
  if (it == t_.end()) {
    t_.emplace(exp, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void MPoly::align(const MPoly& a, const MPoly& b, MPoly& a2, MPoly& b2) {
  if (a.vars_ == b.vars_) {
    a2 = a;
    b2 = b;
    return;
  }
  std::vector<std::string> u = a.vars_;
  for (const auto& v : b.vars_)
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  a2 = a.with_vars(u);
  b2 = b.with_vars(u);
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
  std::vector<int> pos(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    for (size_t j = 0; j < vars.size(); ++j)
      if (vars[j] == vars_[i]) { pos[i] = static_cast<int>(j); break; }
  }
  MPoly out(vars);
  for (const auto& [e, c] : t_) {
    std::vector<int> ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (pos[i] < 0)
        throw std::invalid_argument("MPoly::with_vars: used variable '" + vars_[i] + "' dropped");
      ne[static_cast<size_t>(pos[i])] = e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

MPoly MPoly::compact() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : t_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  std::vector<std::string> kept;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) kept.push_back(vars_[i]);
  return with_vars(kept);
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly x, y;
  MPoly::align(a, b, x, y);
  for (const auto& [e, c] : y.t_) x.add_term(e, c);
  return x;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly x, y;
  MPoly::align(a, b, x, y);
  for (const auto& [e, c] : y.t_) x.add_term(e, -c);
  return x;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly x, y;
  MPoly::align(a, b, x, y);
  MPoly out(x.vars_);
  for (const auto& [ea, ca] : x.t_) {
    for (const auto& [eb, cb] : y.t_) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly operator*(const Rat& s, const MPoly& p) {
  if (s.is_zero()) return MPoly(p.vars());
  MPoly r(p);
  for (auto& [e, c] : r.t_) c *= s;
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }

MPoly MPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
  MPoly acc = MPoly::constant(Rat(1));
  MPoly base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

int MPoly::degree(const std::string& var) const {
  const int idx = var_index(var);
  if (t_.empty()) return -1;
  if (idx < 0) return 0;
  int d = 0;
  for (const auto& [e, c] : t_) d = std::max(d, e[static_cast<size_t>(idx)]);
  return d;
}

int MPoly::total_degree() const {
  if (t_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Rat MPoly::eval(const std::map<std::string, Rat>& point) const {
  std::vector<const Rat*> vals(vars_.size(), nullptr);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it != point.end()) vals[i] = &it->second;
  }
  Rat acc(0);
  for (const auto& [e, c] : t_) {
    Rat term = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vals[i])
        throw std::invalid_argument("MPoly::eval: unbound variable '" + vars_[i] + "'");
      term *= vals[i]->pow(e[i]);
    }
    acc += term;
  }
  return acc;
}

MPoly MPoly::substitute(const std::string& var, const MPoly& value) const {
  const int idx = var_index(var);
  if (idx < 0) return *this;
  std::vector<std::string> rest = vars_;
  rest.erase(rest.begin() + idx);
  MPoly out(rest);
  std::vector<MPoly> powers{MPoly::constant(Rat(1))};
  for (const auto& [e, c] : t_) {
    const int p = e[static_cast<size_t>(idx)];
    while (static_cast<int>(powers.size()) <= p)
      powers.push_back(powers.back() * value);
    std::vector<int> re = e;
    re.erase(re.begin() + idx);
    MPoly mono(rest);
    mono.add_term(re, c);
    out = out + mono * powers[static_cast<size_t>(p)];
  }
  return out;
}

MPoly MPoly::substitute(const std::string& var, const Rat& value) const {
  return substitute(var, MPoly::constant(value));
}

MPoly MPoly::coefficient(const std::string& var, int e) const {
  const int idx = var_index(var);
  if (idx < 0) return e == 0 ? *this : MPoly(vars_);
  std::vector<std::string> rest = vars_;
  rest.erase(rest.begin() + idx);
  MPoly out(rest);
  for (const auto& [ex, c] : t_) {
    if (ex[static_cast<size_t>(idx)] != e) continue;
    std::vector<int> re = ex;
    re.erase(re.begin() + idx);
    out.add_term(re, c);
  }
  return out;
}

UPoly MPoly::to_upoly(const std::string& var) const {
  const int idx = var_index(var);
  std::vector<Rat> out;
  for (const auto& [e, c] : t_) {
    int p = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (static_cast<int>(i) != idx)
        throw std::domain_error("MPoly::to_upoly: variable '" + vars_[i] + "' present");
      p = e[i];
    }
    if (static_cast<int>(out.size()) <= p) out.resize(static_cast<size_t>(p) + 1, Rat(0));
    out[static_cast<size_t>(p)] += c;
  }
  return UPoly(std::move(out));
}

MPoly MPoly::from_upoly(const UPoly& p, const std::string& var) {
  MPoly out({var});
  for (int i = 0; i <= p.degree(); ++i) out.add_term({i}, p.coeff(i));
  return out;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool any_var = false;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) any_var = true;
    if (!any_var || mag != Rat(1)) os << mag.str();
    bool printed = !any_var || mag != Rat(1);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

std::string MPoly::to_json() const {
  nlohmann::json j;
  j["vars"] = vars_;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : t_) {
    nlohmann::json t;
    t["exp"] = e;
    t["coef"] = c.str();
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j.dump();
}

MPoly MPoly::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MPoly out(j.at("vars").get<std::vector<std::string>>());
  for (const auto& t : j.at("terms"))
    out.add_term(t.at("exp").get<std::vector<int>>(), Rat(t.at("coef").get<std::string>()));
  return out;
}

// --------------------------------------------------------------- RatFun ----

RatFun::RatFun(std::string var, UPoly num, UPoly den)
    : var_(std::move(var)), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
  reduce();
}

RatFun RatFun::from_poly(std::string var, UPoly num) {
  return RatFun(std::move(var), std::move(num), UPoly(Rat(1)));
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    den_ = UPoly(Rat(1));
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = *num_.divide_exact(g);
    den_ = *den_.divide_exact(g);
  }
  const Rat lead = den_.leading();
  if (lead != Rat(1)) {
    const Rat inv = Rat(1) / lead;
    num_ = inv * num_;
    den_ = inv * den_;
  }
}

void RatFun::check_same_var(const RatFun& a, const RatFun& b) {
  if (a.var_ != b.var_)
    throw std::invalid_argument("RatFun: variable mismatch '" + a.var_ + "' vs '" + b.var_ + "'");
}

RatFun RatFun::operator-() const { return RatFun(var_, -num_, den_); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  RatFun::check_same_var(a, b);
  return RatFun(a.var_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  RatFun::check_same_var(a, b);
  return RatFun(a.var_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  RatFun::check_same_var(a, b);
  return RatFun(a.var_, a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  RatFun::check_same_var(a, b);
  if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
  return RatFun(a.var_, a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFun& a, const RatFun& b) {
  return a.var_ == b.var_ && a.num_ == b.num_ && a.den_ == b.den_;
}

Rat RatFun::eval(const Rat& x) const {
  const Rat d = den_.eval(x);
  if (d.is_zero())
    throw std::domain_error("RatFun::eval: pole at " + var_ + " = " + x.str());
  return num_.eval(x) / d;
}

bool RatFun::defined_at(const Rat& x) const { return !den_.eval(x).is_zero(); }

std::string RatFun::str() const {
  if (is_poly()) return num_.str(var_);
  return "(" + num_.str(var_) + ") / (" + den_.str(var_) + ")";
}

}  // namespace bmslab::exactmath
