#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zcs/field.hpp"

namespace zcs {

/// Dense univariate polynomial over a field F, ascending coefficients.
///
/// A zero element of F is carried along so that the zero polynomial still
/// knows which field it lives over.
template <class F>
class Poly {
 public:
  using Traits = FieldTraits<F>;

  Poly() = default;
  explicit Poly(F zero) : zero_(std::move(zero)) {}
  Poly(F zero, std::vector<F> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const F& a) { return Poly(Traits::zero(a), {a}); }
  static Poly x(const F& like) { return Poly(Traits::zero(like), {Traits::zero(like), Traits::one(like)}); }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const F& zero_element() const noexcept { return zero_; }
  const std::vector<F>& coeffs() const noexcept { return c_; }
  F operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_; }
  F leading() const { return c_.empty() ? zero_ : c_.back(); }

  F eval(const F& x) const {
    F acc = zero_;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    std::vector<F> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(Traits::from_int(zero_, i) * c_[i]);
    return Poly(zero_, std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    F inv = Traits::one(zero_) / leading();
    return scaled(inv);
  }

  Poly scaled(const F& s) const {
    std::vector<F> r(c_);
    for (auto& v : r) v = v * s;
    return Poly(zero_, std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return Poly(a.zero_, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
    return Poly(a.zero_, std::move(r));
  }
  Poly operator-() const { return Poly(zero_) - *this; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (Traits::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(a.zero_, std::move(r));
  }

  /// Euclidean division; the divisor must be nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidDivisor, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(a.zero_), a};
    std::vector<F> rem(a.c_);
    std::vector<F> quo(a.c_.size() - b.c_.size() + 1, a.zero_);
    const F inv_lead = Traits::one(a.zero_) / b.leading();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      if (Traits::is_zero(rem[i])) continue;
      F q = rem[i] * inv_lead;
      quo[i - db] = q;
      for (int j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.c_[j];
    }
    rem.resize(db);
    return {Poly(a.zero_, std::move(quo)), Poly(a.zero_, std::move(rem))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (Traits::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + element_str(c_[i]) + ")";
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  static std::string element_str(const FieldElement& e) { return e.str(); }
  static std::string element_str(const Rational& q) { return zcs::to_string(q); }

  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  F zero_{};
  std::vector<F> c_;
};

/// Monic gcd.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (d, s, t) with d = s a + t b and d monic (or zero if a = b = 0).
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
  using Traits = FieldTraits<F>;
  const F z = a.zero_element();
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::constant(Traits::one(z)), s1(z);
  Poly<F> t0(z), t1 = Poly<F>::constant(Traits::one(z));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly<F> t = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = Traits::one(z) / r0.leading();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

}  // namespace zcs
