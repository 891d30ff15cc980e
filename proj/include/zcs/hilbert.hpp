#pragma once

#include <cstdint>
#include <string>

#include "zcs/bigint.hpp"
#include "zcs/modular.hpp"

namespace zcs {

/// A place of Q: the real place or a finite prime.
struct Place {
  u64 p = 0;  // 0 encodes the real place

  static Place real() { return Place{0}; }
  static Place prime(u64 q) { return Place{q}; }
  bool is_real() const noexcept { return p == 0; }
  std::string str() const { return is_real() ? "real" : std::to_string(p); }

  friend auto operator<=>(const Place&, const Place&) = default;
};

namespace detail {

// Same square class as q, as an integer.
inline BigInt square_class_integer(const Rational& q) { return numerator(q) * denominator(q); }

inline std::pair<int, BigInt> split_valuation(BigInt n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

}  // namespace detail

/// (a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
inline int hilbert_symbol(const Rational& a_in, const Rational& b_in, Place v) {
  if (a_in == 0 || b_in == 0) fail(ErrorKind::ParseError, "hilbert symbol of zero");
  BigInt a = detail::square_class_integer(a_in);
  BigInt b = detail::square_class_integer(b_in);
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const u64 p = v.p;
  if (!is_prime(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  auto [alpha, u] = detail::split_valuation(a, p);
  auto [beta, w] = detail::split_valuation(b, p);
  if (p == 2) {
    const u64 u8 = mod_u64(u, 8), w8 = mod_u64(w, 8);
    auto eps = [](u64 x) { return ((x - 1) / 2) & 1; };
    auto omega = [](u64 x) { return ((x * x - 1) / 8) & 1; };
    u64 e = eps(u8) * eps(w8) + static_cast<u64>(alpha) * omega(w8) + static_cast<u64>(beta) * omega(u8);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((static_cast<u64>(alpha) * beta & 1) && ((p - 1) / 2 & 1)) s = -s;
  if (beta & 1) s *= legendre(u, p);
  if (alpha & 1) s *= legendre(w, p);
  return s;
}

}  // namespace zcs
