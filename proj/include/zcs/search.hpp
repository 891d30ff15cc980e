#pragma once

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "zcs/curves.hpp"
#include "zcs/parallel.hpp"

namespace zcs {

using i128 = __int128;

/// Rational points found by a bounded search, as primitive integer triples.
///
/// Conics and plane cubics: projective (x : y : z) with max |coordinate| <= height.
/// Elliptic: x = a/b with max(|a|, b) <= height, written projectively,
/// plus the point at infinity. Hyperelliptic: weighted (a : Y : b) with x = a/b.
struct PointSearch {
  u64 height = 0;
  std::string method;
  std::vector<std::array<BigInt, 3>> points;
  bool truncated = false;
};

namespace detail {

inline BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

inline bool fits_i64(const BigInt& v) {
  return v <= BigInt(std::numeric_limits<long long>::max()) && v >= BigInt(std::numeric_limits<long long>::min());
}

inline std::optional<unsigned __int128> isqrt_exact(i128 v) {
  if (v < 0) return std::nullopt;
  using u128x = unsigned __int128;
  u128x n = static_cast<u128x>(v);
  if (n < 2) return n;
  // Newton from a power-of-two overestimate.
  int bits = 0;
  for (u128x t = n; t; t >>= 1) ++bits;
  u128x x = u128x(1) << ((bits + 1) / 2);
  for (;;) {
    u128x y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  if (x * x == n) return x;
  return std::nullopt;
}

inline std::array<BigInt, 3> primitive(std::array<BigInt, 3> v) {
  BigInt g = gcd_big(gcd_big(v[0], v[1]), v[2]);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline long long small(const BigInt& v, const char* what) {
  if (!fits_i64(v) || abs_big(v) > BigInt(1) << 40)
    fail(ErrorKind::Unsupported, std::string(what) + " coefficient too large for the point search");
  return static_cast<long long>(v);
}

}  // namespace detail

inline PointSearch search_rational_points(const CurveModel& curve, u64 height, unsigned threads = 1,
                                          std::size_t max_points = 64) {
  PointSearch out;
  out.height = height;
  const long long H = static_cast<long long>(height);
  if (H < 0 || height > 1'000'000) fail(ErrorKind::ConfigError, "height bound must be in [0, 10^6]");
  std::mutex mu;
  auto add = [&](std::array<BigInt, 3> pt) {
    std::lock_guard<std::mutex> lock(mu);
    out.points.push_back(detail::primitive(std::move(pt)));
  };
  auto finish = [&] {
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    if (out.points.size() > max_points) {
      out.points.resize(max_points);
      out.truncated = true;
    }
    return out;
  };

  if (auto* k = std::get_if<Conic>(&curve)) {
    // c z^2 = a x^2 + b y^2 on the original coefficients.
    out.method = "conic: square test on (a x^2 + b y^2) / c";
    const i128 a = detail::small(k->orig_a, "conic"), b = detail::small(k->orig_b, "conic"),
               c = detail::small(k->orig_c, "conic");
    parallel_for(static_cast<size_t>(H + 1), threads, [&](size_t xi) {
      const i128 x = static_cast<i128>(xi);
      for (i128 y = 0; y <= H; ++y) {
        if (x == 0 && y == 0) continue;
        i128 num = a * x * x + b * y * y;
        if (num % c != 0) continue;
        auto z = detail::isqrt_exact(num / c);
        if (z && static_cast<i128>(*z) <= H) add({detail::to_big(x), detail::to_big(y), detail::to_big(static_cast<i128>(*z))});
      }
    });
    return finish();
  }

  if (auto* e = std::get_if<EllipticCurve>(&curve)) {
    out.method = "elliptic: x = a/b, square test on b (a^3 + A a b^2 + B b^3)";
    const i128 A = detail::small(e->a, "elliptic"), B = detail::small(e->b, "elliptic");
    add({0, 1, 0});
    parallel_for(static_cast<size_t>(H), threads, [&](size_t bi) {
      const i128 b = static_cast<i128>(bi) + 1;
      for (i128 a = -H; a <= H; ++a) {
        if (std::gcd(static_cast<long long>(a < 0 ? -a : a), static_cast<long long>(b)) != 1) continue;
        i128 r = b * (a * a * a + A * a * b * b + B * b * b * b);
        auto Y = detail::isqrt_exact(r);
        if (!Y) continue;
        const BigInt yb = detail::to_big(static_cast<i128>(*Y));
        // (a/b : Y/b^2 : 1) = (a b : Y : b^2)
        add({detail::to_big(a * b), yb, detail::to_big(b * b)});
        if (yb != 0) add({detail::to_big(a * b), BigInt(-yb), detail::to_big(b * b)});
      }
    });
    return finish();
  }

  if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
    out.method = "hyperelliptic: x = a/b, square test on the degree-6 homogenization";
    std::array<i128, 7> f{};
    for (size_t i = 0; i < h->f.size(); ++i) f[i] = detail::small(h->f[i], "hyperelliptic");
    if (f[6] == 0) add({1, 0, 0});
    else if (auto s = detail::isqrt_exact(f[6])) {
      add({1, detail::to_big(static_cast<i128>(*s)), 0});
      add({1, detail::to_big(-static_cast<i128>(*s)), 0});
    }
    if (height > 20000) fail(ErrorKind::ConfigError, "hyperelliptic height bound must be <= 20000");
    parallel_for(static_cast<size_t>(H), threads, [&](size_t bi) {
      const i128 b = static_cast<i128>(bi) + 1;
      std::array<i128, 7> bp{};
      bp[0] = 1;
      for (int i = 1; i <= 6; ++i) bp[i] = bp[i - 1] * b;
      for (i128 a = -H; a <= H; ++a) {
        if (std::gcd(static_cast<long long>(a < 0 ? -a : a), static_cast<long long>(b)) != 1) continue;
        i128 r = 0, ap = 1;
        for (int i = 0; i <= 6; ++i) {
          r += f[i] * ap * bp[6 - i];
          ap *= a;
        }
        auto Y = detail::isqrt_exact(r);
        if (!Y) continue;
        const BigInt yb = detail::to_big(static_cast<i128>(*Y));
        add({detail::to_big(a), yb, detail::to_big(b)});
        if (yb != 0) add({detail::to_big(a), BigInt(-yb), detail::to_big(b)});
      }
    });
    return finish();
  }

  const auto& cubic = std::get<PlaneCubic>(curve);
  std::array<i128, 10> c{};
  for (int i = 0; i < 10; ++i) c[i] = detail::small(cubic.coeffs[i], "plane cubic");
  const auto mons = monomials_of_degree(3);

  if (cubic.diagonal_in_z()) {
    // F = G(x, y) + c9 z^3: test whether -G(x, y) / c9 is a cube of size <= H.
    out.method = "plane cubic, diagonal in z: cube test on -G(x, y) / c";
    if (height > 100000) fail(ErrorKind::ConfigError, "plane cubic height bound must be <= 100000");
    const i128 cz = c[9];
    std::vector<i128> cubes;
    for (i128 z = -H; z <= H; ++z) cubes.push_back(z * z * z);
    constexpr int kM1 = 63, kM2 = 247;
    std::array<bool, kM1> ok1{};
    std::array<bool, kM2> ok2{};
    for (int z = 0; z < kM1; ++z) ok1[(z * z * z) % kM1] = true;
    for (int z = 0; z < kM2; ++z) ok2[(z * z * z) % kM2] = true;
    // Binary cubic G(x, y) = g3 x^3 + g2 x^2 y + g1 x y^2 + g0 y^3.
    const i128 g3 = c[0], g2 = c[1], g1 = c[3], g0 = c[6];
    auto scan_row = [&](i128 x, i128 ylo) {
      const i128 x2 = x * x, x3 = x2 * x;
      for (i128 y = ylo; y <= H; ++y) {
        const i128 v = ((g0 * y + g1 * x) * y + g2 * x2) * y + g3 * x3;
        if (v % cz != 0) continue;
        const i128 t = -v / cz;
        int r1 = static_cast<int>(t % kM1);
        if (r1 < 0) r1 += kM1;
        if (!ok1[r1]) continue;
        int r2 = static_cast<int>(t % kM2);
        if (r2 < 0) r2 += kM2;
        if (!ok2[r2]) continue;
        auto it = std::lower_bound(cubes.begin(), cubes.end(), t);
        if (it != cubes.end() && *it == t) {
          const i128 z = static_cast<i128>(it - cubes.begin()) - H;
          if (x == 0 && y == 0 && z == 0) continue;
          add({detail::to_big(x), detail::to_big(y), detail::to_big(z)});
        }
      }
    };
    // (x, y, z) ~ (-x, -y, -z): x > 0 with every y, plus x = 0 with y >= 0.
    parallel_for(static_cast<size_t>(H + 1), threads, [&](size_t xi) {
      const i128 x = static_cast<i128>(xi);
      scan_row(x, x == 0 ? 0 : -H);
    });
    return finish();
  }

  out.method = "plane cubic: exhaustive box search";
  if (height > 200) fail(ErrorKind::ConfigError, "general plane cubic height bound must be <= 200");
  parallel_for(static_cast<size_t>(2 * H + 1), threads, [&](size_t xi) {
    const i128 x = static_cast<i128>(xi) - H;
    for (i128 y = -H; y <= H; ++y)
      for (i128 z = -H; z <= H; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        // One representative per line through the origin: first nonzero coordinate positive.
        const i128 lead = x != 0 ? x : (y != 0 ? y : z);
        if (lead < 0) continue;
        std::array<i128, 3> v{x, y, z};
        i128 s = 0;
        for (int i = 0; i < 10; ++i) {
          if (c[i] == 0) continue;
          i128 t = c[i];
          for (int j = 0; j < 3; ++j)
            for (int e = 0; e < mons[i][j]; ++e) t *= v[j];
          s += t;
        }
        if (s == 0) add({detail::to_big(x), detail::to_big(y), detail::to_big(z)});
      }
  });
  return finish();
}

/// Exact check that a triple from a search lies on the curve.
inline bool on_curve(const CurveModel& curve, const std::array<BigInt, 3>& pt) {
  if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) return false;
  if (auto* k = std::get_if<Conic>(&curve))
    return k->orig_a * pt[0] * pt[0] + k->orig_b * pt[1] * pt[1] == k->orig_c * pt[2] * pt[2];
  BigInt acc = 0;
  const auto eq = equation(curve);
  for (const auto& [e, c] : eq.form) {
    BigInt t = c;
    for (int j = 0; j < 3; ++j)
      for (int n = 0; n < e[j]; ++n) t *= pt[j];
    acc += t;
  }
  return acc == 0;
}

}  // namespace zcs
