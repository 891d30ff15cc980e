#pragma once

#include <string>

#include "zcs/field.hpp"

namespace zcs {

/// Point on y^2 = x^3 + a x + b; the identity is the point at infinity.
template <class F>
struct ECPoint {
  bool infinity = true;
  F x{}, y{};

  static ECPoint identity() { return ECPoint{}; }
  static ECPoint affine(F x, F y) { return ECPoint{false, std::move(x), std::move(y)}; }

  friend bool operator==(const ECPoint& a, const ECPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

/// Chord-tangent group law over any field of characteristic != 2.
template <class F>
class EllipticGroup {
 public:
  using Traits = FieldTraits<F>;
  using Point = ECPoint<F>;

  EllipticGroup(F a, F b) : a_(std::move(a)), b_(std::move(b)) {}

  const F& a() const noexcept { return a_; }
  const F& b() const noexcept { return b_; }

  bool on_curve(const Point& p) const {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + a_ * p.x + b_;
  }

  Point neg(const Point& p) const {
    if (p.infinity) return p;
    return Point::affine(p.x, -p.y);
  }

  /// Group law without membership checks.
  Point add_unchecked(const Point& p, const Point& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    F lambda;
    if (p.x == q.x) {
      if (Traits::is_zero(p.y + q.y)) return Point::identity();
      const F three = Traits::from_int(p.x, 3), two = Traits::from_int(p.x, 2);
      lambda = (three * p.x * p.x + a_) / (two * p.y);
    } else {
      lambda = (q.y - p.y) / (q.x - p.x);
    }
    F x3 = lambda * lambda - p.x - q.x;
    F y3 = lambda * (p.x - x3) - p.y;
    return Point::affine(std::move(x3), std::move(y3));
  }

  Point add(const Point& p, const Point& q) const {
    if (!on_curve(p) || !on_curve(q)) fail(ErrorKind::PointNotOnCurve, "ec_add operand is not on the curve");
    return add_unchecked(p, q);
  }

  Point mul(const Point& p, long long n) const {
    Point base = n < 0 ? neg(p) : p;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
    Point acc = Point::identity();
    while (e) {
      if (e & 1) acc = add_unchecked(acc, base);
      base = add_unchecked(base, base);
      e >>= 1;
    }
    return acc;
  }

 private:
  F a_, b_;
};

}  // namespace zcs
