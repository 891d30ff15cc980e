#pragma once

#include <string>

#include "zcs/poly.hpp"

namespace zcs {

/// Reduced divisor class on y^2 = f(x), deg f = 5: u monic, deg v < deg u <= 2, u | v^2 - f.
template <class F>
struct MumfordDivisor {
  Poly<F> u, v;

  friend bool operator==(const MumfordDivisor& a, const MumfordDivisor& b) { return a.u == b.u && a.v == b.v; }
};

/// Cantor composition and reduction on the Jacobian of an imaginary genus-2 model.
template <class F>
class HyperellipticJacobian {
 public:
  using Traits = FieldTraits<F>;
  using Divisor = MumfordDivisor<F>;
  static constexpr int kGenus = 2;

  explicit HyperellipticJacobian(Poly<F> f) : f_(std::move(f)) {
    if (f_.degree() != 5) fail(ErrorKind::Unsupported, "Cantor arithmetic needs an odd-degree (deg 5) model");
  }

  const Poly<F>& f() const noexcept { return f_; }

  Divisor identity() const {
    const F z = f_.zero_element();
    return {Poly<F>::constant(Traits::one(z)), Poly<F>(z)};
  }

  /// [P - infinity] for an affine point P = (x, y).
  Divisor from_point(const F& x, const F& y) const {
    const F z = f_.zero_element();
    if (!(y * y == f_.eval(x))) fail(ErrorKind::PointNotOnCurve, "point is not on the curve");
    return {Poly<F>(z, {-x, Traits::one(z)}), Poly<F>::constant(y)};
  }

  bool is_valid(const Divisor& d) const {
    if (d.u.is_zero() || d.u.degree() > kGenus) return false;
    if (!(d.u.leading() == Traits::one(f_.zero_element()))) return false;
    if (d.v.degree() >= d.u.degree()) return false;
    return ((d.v * d.v - f_) % d.u).is_zero();
  }

  Divisor neg(const Divisor& d) const { return {d.u, (-d.v) % d.u}; }

  Divisor add(const Divisor& a, const Divisor& b) const {
    if (!is_valid(a) || !is_valid(b)) fail(ErrorKind::InvalidDivisor, "cantor_add operand is not a reduced Mumford pair");
    return add_unchecked(a, b);
  }

  Divisor add_unchecked(const Divisor& a, const Divisor& b) const {
    auto [d1, e1, e2] = xgcd(a.u, b.u);
    auto [d, c1, c2] = xgcd(d1, a.v + b.v);
    Poly<F> s1 = c1 * e1, s2 = c1 * e2;
    const Poly<F>& s3 = c2;
    Poly<F> u = (a.u * b.u) / (d * d);
    Poly<F> v = ((s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f_)) / d) % u;
    while (u.degree() > kGenus) {
      Poly<F> u2 = (f_ - v * v) / u;
      v = (-v) % u2;
      u = std::move(u2);
    }
    u = u.monic();
    v = v % u;
    return {std::move(u), std::move(v)};
  }

  Divisor mul(const Divisor& d, long long n) const {
    Divisor base = n < 0 ? neg(d) : d;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
    Divisor acc = identity();
    while (e) {
      if (e & 1) acc = add_unchecked(acc, base);
      base = add_unchecked(base, base);
      e >>= 1;
    }
    return acc;
  }

 private:
  Poly<F> f_;
};

}  // namespace zcs
