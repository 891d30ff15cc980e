#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zcs/modular.hpp"

namespace zcs {

class FieldElement;

/// F_{p^k} = F_p[t]/(modulus), 1 <= k <= 4.
///
/// Elements keep a raw pointer to their field, so the ExtField must outlive
/// them; fields are handed out as shared_ptr and held by every context that
/// produces elements.
class ExtField : public std::enable_shared_from_this<ExtField> {
 public:
  static constexpr int kMaxDegree = 4;

  /// Field for curve work: p odd prime, modulus the smallest monic irreducible.
  static std::shared_ptr<const ExtField> make(u64 p, int k = 1) {
    require_odd_prime(p);
    return residue_field(p, k);
  }

  /// Same, but with a caller-supplied monic modulus (ascending coefficients, length k+1).
  static std::shared_ptr<const ExtField> make(u64 p, const std::vector<u64>& modulus) {
    require_odd_prime(p);
    return build(p, modulus);
  }

  /// Residue field for the dedicated local routines; p = 2 is allowed here.
  static std::shared_ptr<const ExtField> residue_field(u64 p, int k = 1) {
    if (!is_prime(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
    if (k < 1 || k > kMaxDegree) fail(ErrorKind::Unsupported, "extension degree must be in [1, 4]");
    if (p >= (u64(1) << 31)) fail(ErrorKind::Unsupported, "prime exceeds 31 bits");
    return build(p, smallest_irreducible(p, k));
  }

  u64 p() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  u64 size() const noexcept { return q_; }
  const std::vector<u64>& modulus() const noexcept { return modulus_; }

  bool same_as(const ExtField& o) const noexcept {
    return this == &o || (p_ == o.p_ && modulus_ == o.modulus_);
  }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement gen() const;
  FieldElement from_int(const BigInt& n) const;
  FieldElement from_int(long long n) const;
  /// Element whose base-p digits are the coefficients (constant term least significant).
  FieldElement from_index(u64 idx) const;

  /// True iff the monic polynomial (ascending, leading 1) is irreducible over F_p.
  /// Degrees <= 3: no roots. Degree 4: no roots and no monic quadratic factor.
  static bool is_irreducible(u64 p, const std::vector<u64>& m) {
    const int k = static_cast<int>(m.size()) - 1;
    if (k < 1 || m.back() != 1) return false;
    if (k == 1) return true;
    for (u64 x = 0; x < p; ++x) {
      u64 acc = 0;
      for (int i = k; i >= 0; --i) acc = (mulmod(acc, x, p) + m[i]) % p;
      if (acc == 0) return false;
    }
    if (k <= 3) return true;
    for (u64 b = 0; b < p; ++b) {
      for (u64 c = 0; c < p; ++c) {
        // remainder of m modulo x^2 + b x + c
        std::vector<u64> r(m.begin(), m.end());
        for (int i = k; i >= 2; --i) {
          u64 lead = r[i];
          if (!lead) continue;
          r[i] = 0;
          r[i - 1] = (r[i - 1] + p - mulmod(lead, b, p)) % p;
          r[i - 2] = (r[i - 2] + p - mulmod(lead, c, p)) % p;
        }
        if (r[0] == 0 && r[1] == 0) return false;
      }
    }
    return true;
  }

 private:
  ExtField(u64 p, std::vector<u64> modulus)
      : p_(p), k_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < k_; ++i) q_ *= p_;
  }

  static std::shared_ptr<const ExtField> build(u64 p, const std::vector<u64>& modulus) {
    const int k = static_cast<int>(modulus.size()) - 1;
    if (k < 1 || k > kMaxDegree) fail(ErrorKind::Unsupported, "extension degree must be in [1, 4]");
    std::vector<u64> m(modulus);
    for (auto& c : m) c %= p;
    if (!is_irreducible(p, m))
      fail(ErrorKind::ParseError, "modulus is not a monic irreducible polynomial");
    return std::shared_ptr<const ExtField>(new ExtField(p, std::move(m)));
  }

  static std::vector<u64> smallest_irreducible(u64 p, int k) {
    if (k == 1) return {0, 1};
    u64 count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> m(k + 1, 0);
      u64 t = idx;
      for (int i = 0; i < k; ++i) {
        m[i] = t % p;
        t /= p;
      }
      m[k] = 1;
      if (is_irreducible(p, m)) return m;
    }
    fail(ErrorKind::Unsupported, "no irreducible polynomial found");
  }

  u64 p_;
  int k_;
  u64 q_;
  std::vector<u64> modulus_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const ExtField* f, const std::array<u64, 4>& c) : f_(f), c_(c) {}

  const ExtField* field() const noexcept { return f_; }
  u64 coeff(int i) const noexcept { return c_[i]; }
  const std::array<u64, 4>& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_one() const noexcept { return c_[0] == 1 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  u64 index() const noexcept {
    u64 idx = 0;
    for (int i = f_->degree() - 1; i >= 0; --i) idx = idx * f_->p() + c_[i];
    return idx;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    const u64 p = a.f_->p();
    std::array<u64, 4> r{};
    for (int i = 0; i < 4; ++i) {
      r[i] = a.c_[i] + b.c_[i];
      if (r[i] >= p) r[i] -= p;
    }
    return {a.f_, r};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    const u64 p = a.f_->p();
    std::array<u64, 4> r{};
    for (int i = 0; i < 4; ++i) r[i] = a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i] : a.c_[i] + p - b.c_[i];
    return {a.f_, r};
  }
  FieldElement operator-() const {
    const u64 p = f_->p();
    std::array<u64, 4> r{};
    for (int i = 0; i < 4; ++i) r[i] = c_[i] ? p - c_[i] : 0;
    return {f_, r};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    const u64 p = a.f_->p();
    const int k = a.f_->degree();
    if (k == 1) return {a.f_, {a.c_[0] * b.c_[0] % p, 0, 0, 0}};
    std::array<u64, 8> prod{};
    for (int i = 0; i < k; ++i) {
      if (!a.c_[i]) continue;
      for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    const auto& m = a.f_->modulus();
    for (int i = 2 * k - 2; i >= k; --i) {
      const u64 lead = prod[i];
      if (!lead) continue;
      prod[i] = 0;
      for (int j = 0; j < k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - lead) * m[j]) % p;
    }
    return {a.f_, {prod[0], prod[1], prod[2], prod[3]}};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(u64 e) const {
    FieldElement r = f_->one(), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  FieldElement inverse() const {
    if (is_zero()) fail(ErrorKind::NonResidue, "inverse of zero");
    return pow(f_->size() - 2);
  }

  FieldElement frobenius() const { return pow(f_->p()); }

  bool is_square() const { return is_zero() || pow((f_->size() - 1) / 2).is_one(); }

  /// Square root with the smaller index of the two roots; nullopt for non-squares.
  std::optional<FieldElement> sqrt() const {
    if (is_zero()) return *this;
    if (!is_square()) return std::nullopt;
    const u64 q = f_->size();
    u64 odd = q - 1;
    int s = 0;
    while ((odd & 1) == 0) {
      odd >>= 1;
      ++s;
    }
    FieldElement z = f_->one();
    for (u64 idx = 2;; ++idx) {
      z = f_->from_index(idx);
      if (!z.is_square()) break;
    }
    int m = s;
    FieldElement c = z.pow(odd);
    FieldElement t = pow(odd);
    FieldElement r = pow((odd + 1) / 2);
    while (!t.is_one()) {
      int i = 0;
      FieldElement tt = t;
      while (!tt.is_one()) {
        tt *= tt;
        ++i;
      }
      FieldElement b = c;
      for (int j = 0; j + i + 1 < m; ++j) b *= b;
      m = i;
      c = b * b;
      t *= c;
      r *= b;
    }
    FieldElement other = -r;
    return other.index() < r.index() ? other : r;
  }

  /// Multiplicative order; the element must be nonzero.
  u64 multiplicative_order() const {
    if (is_zero()) fail(ErrorKind::NonResidue, "order of zero");
    const u64 n = f_->size() - 1;
    u64 ord = n;
    u64 rest = n;
    for (u64 q = 2; q * q <= rest; ++q) {
      if (rest % q) continue;
      while (rest % q == 0) rest /= q;
      while (ord % q == 0 && pow(ord / q).is_one()) ord /= q;
    }
    if (rest > 1)
      while (ord % rest == 0 && pow(ord / rest).is_one()) ord /= rest;
    return ord;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return a.c_ == b.c_;
  }
  /// Ordering by index; deterministic output ordering only.
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); }

  std::string str() const {
    const int k = f_->degree();
    if (k == 1) return std::to_string(c_[0]);
    std::string s;
    for (int i = k - 1; i >= 0; --i) {
      if (!c_[i]) continue;
      if (!s.empty()) s += "+";
      if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
      if (i >= 1) s += "t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const FieldElement& o) const {
    if (f_ != o.f_ && (!f_ || !o.f_ || !f_->same_as(*o.f_)))
      fail(ErrorKind::FieldMismatch, "operands belong to different fields");
  }

  const ExtField* f_ = nullptr;
  std::array<u64, 4> c_{};
};

inline FieldElement ExtField::zero() const { return {this, {0, 0, 0, 0}}; }
inline FieldElement ExtField::one() const { return {this, {1, 0, 0, 0}}; }
inline FieldElement ExtField::gen() const {
  if (k_ == 1) fail(ErrorKind::Unsupported, "prime field has no generator t");
  return {this, {0, 1, 0, 0}};
}
inline FieldElement ExtField::from_int(const BigInt& n) const { return {this, {mod_u64(n, p_), 0, 0, 0}}; }
inline FieldElement ExtField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return {this, {static_cast<u64>(r), 0, 0, 0}};
}
inline FieldElement ExtField::from_index(u64 idx) const {
  std::array<u64, 4> c{};
  for (int i = 0; i < k_; ++i) {
    c[i] = idx % p_;
    idx /= p_;
  }
  return {this, c};
}

/// Uniform interface used by the generic polynomial and group-law templates.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<FieldElement> {
  static FieldElement zero(const FieldElement& like) { return like.field()->zero(); }
  static FieldElement one(const FieldElement& like) { return like.field()->one(); }
  static FieldElement from_int(const FieldElement& like, long long n) { return like.field()->from_int(n); }
  static bool is_zero(const FieldElement& x) { return x.is_zero(); }
};

template <>
struct FieldTraits<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_int(const Rational&, long long n) { return Rational(n); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

}  // namespace zcs
