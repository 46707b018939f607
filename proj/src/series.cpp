#include "bmslab/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bmslab::exactmath {

// -------------------------------------------------------------- HSeries ----

HSeries HSeries::constant(const Rat& c, int trunc) {
  HSeries s(trunc);
  s.set_coeff(0, c);
  return s;
}

HSeries HSeries::monomial(int e, const Rat& c, int trunc) {
  HSeries s(trunc);
  s.set_coeff(e, c);
  return s;
}

int HSeries::min_degree() const {
  if (c_.empty()) return trunc_ + 1;
  return c_.begin()->first;
}

Rat HSeries::coeff(int e) const {
  if (e > trunc_)
    throw std::domain_error("HSeries::coeff: exponent " + std::to_string(e) +
                            " beyond truncation order " + std::to_string(trunc_));
  auto it = c_.find(e);
  return it == c_.end() ? Rat(0) : it->second;
}

void HSeries::set_coeff(int e, const Rat& v) {
  if (e > trunc_)
    throw std::domain_error("HSeries::set_coeff: exponent beyond truncation order");
  if (v.is_zero())
    c_.erase(e);
  else
    c_[e] = v;
}

HSeries HSeries::operator-() const {
  HSeries r(*this);
  for (auto& [e, v] : r.c_) v = -v;
  return r;
}

HSeries operator+(const HSeries& a, const HSeries& b) {
  HSeries r(std::min(a.trunc_, b.trunc_));
  for (const auto& [e, v] : a.c_)
    if (e <= r.trunc_) r.c_[e] = v;
  for (const auto& [e, v] : b.c_) {
    if (e > r.trunc_) continue;
    auto it = r.c_.find(e);
    if (it == r.c_.end()) {
      r.c_[e] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) r.c_.erase(it);
    }
  }
  return r;
}

HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }

HSeries operator*(const HSeries& a, const HSeries& b) {
  // A product coefficient at e is exact only when every split i + (e-i)
  // stays inside both known ranges; that bounds e by trunc + the other
  // factor's valuation.
  const int va = a.min_degree();
  const int vb = b.min_degree();
  const int trunc = std::min(a.trunc_ + vb, b.trunc_ + va);
  HSeries r(trunc);
  for (const auto& [ea, ca] : a.c_) {
    for (const auto& [eb, cb] : b.c_) {
      const int e = ea + eb;
      if (e > trunc) continue;
      auto it = r.c_.find(e);
      if (it == r.c_.end()) {
        r.c_[e] = ca * cb;
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
  }
  return r;
}

HSeries operator*(const Rat& s, HSeries p) {
  if (s.is_zero()) return HSeries(p.trunc_);
  for (auto& [e, v] : p.c_) v *= s;
  return p;
}

bool operator==(const HSeries& a, const HSeries& b) {
  return a.trunc_ == b.trunc_ && a.c_ == b.c_;
}

bool HSeries::agrees_with(const HSeries& other) const {
  const int hi = std::min(trunc_, other.trunc_);
  for (const auto& [e, v] : c_)
    if (e <= hi && coeff(e) != other.coeff(e)) return false;
  for (const auto& [e, v] : other.c_)
    if (e <= hi && coeff(e) != other.coeff(e)) return false;
  return true;
}

HSeries HSeries::shifted(int e, const Rat& c) const {
  HSeries r(trunc_ + e);
  if (c.is_zero()) return r;
  for (const auto& [d, v] : c_) r.c_[d + e] = c * v;
  return r;
}

HSeries HSeries::inverse() const {
  if (c_.empty()) throw std::domain_error("HSeries::inverse: zero series");
  const int v = min_degree();
  const Rat lead = c_.begin()->second;
  // Write the series as lead*h^v*(1+u); then the inverse is known through
  // trunc - 2v.
  const int n = trunc_ - v;  // u is known through exponent n in the shifted variable
  std::vector<Rat> u(static_cast<size_t>(n) + 1, Rat(0));
  for (const auto& [e, cv] : c_) {
    const int d = e - v;
    if (d >= 1 && d <= n) u[static_cast<size_t>(d)] = cv / lead;
  }
  // Power series inversion of 1+u by the linear recurrence b_t = -sum a_j b_{t-j}.
  std::vector<Rat> b(static_cast<size_t>(n) + 1, Rat(0));
  b[0] = Rat(1);
  for (int t = 1; t <= n; ++t) {
    Rat acc(0);
    for (int j = 1; j <= t; ++j) acc += u[static_cast<size_t>(j)] * b[static_cast<size_t>(t - j)];
    b[static_cast<size_t>(t)] = -acc;
  }
  HSeries r(trunc_ - 2 * v);
  for (int t = 0; t <= n; ++t) {
    const int e = t - v;
    if (e > r.trunc_) break;
    if (!b[static_cast<size_t>(t)].is_zero()) r.c_[e] = b[static_cast<size_t>(t)] / lead;
  }
  return r;
}

HSeries HSeries::pow(long e) const {
  if (e == 0) return HSeries::constant(Rat(1), trunc_);
  const HSeries base = e < 0 ? inverse() : *this;
  long n = e < 0 ? -e : e;
  HSeries acc = base;
  --n;
  while (n > 0) {
    acc = acc * base;
    --n;
  }
  return acc;
}

HSeries HSeries::truncated(int new_trunc) const {
  if (new_trunc > trunc_)
    throw std::domain_error("HSeries::truncated: cannot extend known range");
  HSeries r(new_trunc);
  for (const auto& [e, v] : c_)
    if (e <= new_trunc) r.c_[e] = v;
  return r;
}

std::string HSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : c_) {
    Rat mag = v.abs();
    if (first) {
      if (v.sign() < 0) os << "-";
      first = false;
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    if (e == 0 || mag != Rat(1)) os << mag.str();
    if (e != 0) {
      if (mag != Rat(1)) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << (trunc_ + 1) << ")";
  return os.str();
}

// -------------------------------------------------------------- XSeries ----

XSeries XSeries::constant(const Rat& c, int order) {
  XSeries s(order);
  s.set_coeff(0, c);
  return s;
}

XSeries XSeries::monomial(int e, const Rat& c, int order) {
  XSeries s(order);
  s.set_coeff(e, c);
  return s;
}

Rat XSeries::coeff(int e) const {
  if (e < 0) return Rat(0);
  if (e > order_)
    throw std::domain_error("XSeries::coeff: exponent beyond order");
  return c_[static_cast<size_t>(e)];
}

void XSeries::set_coeff(int e, const Rat& v) {
  if (e < 0 || e > order_) throw std::domain_error("XSeries::set_coeff: exponent out of range");
  c_[static_cast<size_t>(e)] = v;
}

int XSeries::valuation() const {
  for (int e = 0; e <= order_; ++e)
    if (!c_[static_cast<size_t>(e)].is_zero()) return e;
  return order_ + 1;
}

XSeries XSeries::operator-() const {
  XSeries r(*this);
  for (Rat& v : r.c_) v = -v;
  return r;
}

XSeries operator+(const XSeries& a, const XSeries& b) {
  XSeries r(std::min(a.order_, b.order_));
  for (int e = 0; e <= r.order_; ++e) r.c_[static_cast<size_t>(e)] = a.coeff(e) + b.coeff(e);
  return r;
}

XSeries operator-(const XSeries& a, const XSeries& b) { return a + (-b); }

XSeries operator*(const XSeries& a, const XSeries& b) {
  XSeries r(std::min(a.order_, b.order_));
  for (int i = 0; i <= a.order_ && i <= r.order_; ++i) {
    if (a.c_[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j <= b.order_ && i + j <= r.order_; ++j)
      r.c_[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
  }
  return r;
}

XSeries operator*(const Rat& s, XSeries p) {
  for (Rat& v : p.c_) v *= s;
  return p;
}

bool operator==(const XSeries& a, const XSeries& b) {
  return a.order_ == b.order_ && a.c_ == b.c_;
}

XSeries XSeries::compose(const XSeries& inner) const {
  if (!inner.coeff(0).is_zero())
    throw std::domain_error("XSeries::compose: inner constant term must vanish");
  XSeries acc(std::min(order_, inner.order_));
  for (int i = order_; i >= 0; --i) {
    acc = acc * inner;
    acc.c_[0] += c_[static_cast<size_t>(i)];
  }
  return acc;
}

XSeries XSeries::inverse() const {
  if (c_[0].is_zero()) throw std::domain_error("XSeries::inverse: vanishing constant term");
  XSeries r(order_);
  r.c_[0] = Rat(1) / c_[0];
  for (int e = 1; e <= order_; ++e) {
    Rat acc(0);
    for (int j = 1; j <= e; ++j) acc += coeff(j) * r.c_[static_cast<size_t>(e - j)];
    r.c_[static_cast<size_t>(e)] = -acc / c_[0];
  }
  return r;
}

XSeries XSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  XSeries acc = XSeries::constant(Rat(1), order_);
  for (long i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

XSeries XSeries::derivative() const {
  XSeries r(order_);
  for (int e = 1; e <= order_; ++e)
    r.c_[static_cast<size_t>(e - 1)] = Rat(e) * c_[static_cast<size_t>(e)];
  r.c_[static_cast<size_t>(order_)] = Rat(0);
  return r;
}

XSeries XSeries::truncated(int new_order) const {
  if (new_order > order_) throw std::domain_error("XSeries::truncated: cannot extend");
  XSeries r(new_order);
  for (int e = 0; e <= new_order; ++e) r.c_[static_cast<size_t>(e)] = coeff(e);
  return r;
}

std::string XSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int e = 0; e <= order_; ++e) {
    const Rat& v = c_[static_cast<size_t>(e)];
    if (v.is_zero()) continue;
    Rat mag = v.abs();
    if (first) {
      if (v.sign() < 0) os << "-";
      first = false;
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    if (e == 0 || mag != Rat(1)) os << mag.str();
    if (e != 0) {
      if (mag != Rat(1)) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << (order_ + 1) << ")";
  return os.str();
}

}  // namespace bmslab::exactmath
