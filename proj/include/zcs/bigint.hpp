#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zcs/error.hpp"

namespace zcs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt abs_big(const BigInt& n) { return n < 0 ? BigInt(-n) : n; }

inline BigInt gcd_big(BigInt a, BigInt b) {
  a = abs_big(a);
  b = abs_big(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Floor square root of a nonnegative integer.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) fail(ErrorKind::ParseError, "isqrt of negative integer");
  if (n < 2) return n;
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const BigInt& n, BigInt* root = nullptr) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

/// Integer cube root if n is a perfect cube (sign preserved).
inline std::optional<BigInt> exact_cbrt(const BigInt& n) {
  BigInt a = abs_big(n);
  BigInt lo = 0, hi = 1;
  while (hi * hi * hi < a) hi *= 2;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mid * mid * mid < a) lo = mid + 1; else hi = mid;
  }
  if (lo * lo * lo != a) return std::nullopt;
  return n < 0 ? BigInt(-lo) : lo;
}

/// p-adic valuation of a nonzero integer; returns a large sentinel for 0.
inline int valuation(BigInt n, std::uint64_t p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& q, std::uint64_t p) {
  if (q == 0) return 1 << 20;
  return valuation(numerator(q), p) - valuation(denominator(q), p);
}

/// Least nonnegative residue of n modulo m.
inline std::uint64_t mod_u64(const BigInt& n, std::uint64_t m) {
  BigInt r = n % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

/// Trial division up to 10^6; a cofactor above that bound is accepted only if
/// it is below 10^12 (hence prime) or passes Miller-Rabin.
inline std::map<BigInt, int> factor(const BigInt& n_in) {
  std::map<BigInt, int> out;
  BigInt n = abs_big(n_in);
  if (n == 0) fail(ErrorKind::FactorizationLimit, "cannot factor zero");
  for (std::uint64_t d = 2; d <= 1000000; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > n) break;
    while (n % d == 0) {
      out[BigInt(d)]++;
      n /= d;
    }
  }
  if (n > 1) {
    if (n < BigInt(1000000) * 1000000 || boost::multiprecision::miller_rabin_test(n, 40)) {
      out[n]++;
    } else {
      fail(ErrorKind::FactorizationLimit,
           "composite cofactor with no factor below 10^6: " + n.str());
    }
  }
  return out;
}

inline std::vector<std::uint64_t> prime_divisors_u64(const BigInt& n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factor(n)) {
    if (p > BigInt(std::numeric_limits<std::uint32_t>::max()))
      fail(ErrorKind::Unsupported, "prime divisor too large for residue arithmetic: " + p.str());
    out.push_back(static_cast<std::uint64_t>(p));
  }
  return out;
}

inline BigInt squarefree_part(const BigInt& n) {
  BigInt s = n < 0 ? BigInt(-1) : BigInt(1);
  for (const auto& [p, e] : factor(n))
    if (e % 2) s *= p;
  return s;
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace zcs
