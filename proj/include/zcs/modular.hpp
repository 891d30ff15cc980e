#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zcs/bigint.hpp"
#include "zcs/error.hpp"

namespace zcs {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline u64 next_prime(u64 n) {
  while (!is_prime(n)) ++n;
  return n;
}

inline std::optional<u64> try_inv_mod(u64 a, u64 m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

inline u64 inv_mod(u64 a, u64 m) {
  auto r = try_inv_mod(a, m);
  if (!r) fail(ErrorKind::NonResidue, "element not invertible modulo " + std::to_string(m));
  return *r;
}

/// Reduce a rational to Z/m; nullopt when the denominator is not a unit.
inline std::optional<u64> reduce_rational(const Rational& q, u64 m) {
  auto inv = try_inv_mod(mod_u64(denominator(q), m), m);
  if (!inv) return std::nullopt;
  return mulmod(mod_u64(numerator(q), m), *inv, m);
}

/// Odd prime p, checked at construction.
class PrimeField {
 public:
  explicit PrimeField(u64 p) : p_(p) {
    if (!is_prime(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
    if (p == 2) fail(ErrorKind::Unsupported, "p = 2 is handled only by the 2-adic routines");
    if (p >= (u64(1) << 31)) fail(ErrorKind::Unsupported, "prime exceeds 31 bits");
  }
  u64 p() const noexcept { return p_; }

 private:
  u64 p_;
};

inline void require_odd_prime(u64 p) { (void)PrimeField(p); }

inline int legendre(u64 a, u64 p) {
  require_odd_prime(p);
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline int legendre(const BigInt& a, u64 p) {
  require_odd_prime(p);
  return legendre(mod_u64(a, p), p);
}

/// Tonelli-Shanks; returns the smaller of the two roots in [0, p).
inline u64 sqrt_mod(const BigInt& a_in, u64 p) {
  require_odd_prime(p);
  u64 a = mod_u64(a_in, p);
  if (a == 0) return 0;
  if (legendre(a, p) != 1)
    fail(ErrorKind::NonResidue, std::to_string(a) + " is not a square mod " + std::to_string(p));
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

}  // namespace zcs
