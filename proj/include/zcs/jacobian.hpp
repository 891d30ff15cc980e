#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "zcs/curves.hpp"
#include "zcs/ec.hpp"
#include "zcs/mumford.hpp"

namespace zcs {

// ---------------------------------------------------------------------------
// Rational points of the Jacobian and the user-supplied Mordell-Weil data.

using RationalECPoint = ECPoint<Rational>;
using RationalDivisor = MumfordDivisor<Rational>;
using JacobianElementQ = std::variant<RationalECPoint, RationalDivisor>;

inline EllipticGroup<Rational> rational_group(const EllipticCurve& e) { return {Rational(e.a), Rational(e.b)}; }

inline HyperellipticJacobian<Rational> rational_group(const HyperellipticCurve& h) {
  return HyperellipticJacobian<Rational>(rational_poly(h.f));
}

/// Group law on J(Q) for the two supported Jacobian models.
class RationalJacobian {
 public:
  explicit RationalJacobian(const CurveModel& curve) {
    if (auto* e = std::get_if<EllipticCurve>(&curve)) {
      ec_.emplace(rational_group(*e));
    } else if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
      if (h->degree() != 5) fail(ErrorKind::Unsupported, "Jacobian arithmetic needs a degree-5 model");
      g2_.emplace(rational_group(*h));
    } else {
      fail(ErrorKind::EmbeddingUnavailable, curve_kind(curve) + " has no supported Jacobian model");
    }
  }

  bool is_elliptic() const noexcept { return ec_.has_value(); }

  JacobianElementQ identity() const {
    if (ec_) return RationalECPoint::identity();
    return g2_->identity();
  }

  bool contains(const JacobianElementQ& x) const {
    if (ec_) return std::holds_alternative<RationalECPoint>(x) && ec_->on_curve(std::get<RationalECPoint>(x));
    return std::holds_alternative<RationalDivisor>(x) && g2_->is_valid(std::get<RationalDivisor>(x));
  }

  void require(const JacobianElementQ& x, const std::string& what) const {
    if (!contains(x)) fail(ErrorKind::PointNotOnCurve, what + " does not lie on the Jacobian");
  }

  JacobianElementQ add(const JacobianElementQ& a, const JacobianElementQ& b) const {
    require(a, "operand");
    require(b, "operand");
    if (ec_) return ec_->add_unchecked(std::get<RationalECPoint>(a), std::get<RationalECPoint>(b));
    return g2_->add_unchecked(std::get<RationalDivisor>(a), std::get<RationalDivisor>(b));
  }

  JacobianElementQ neg(const JacobianElementQ& a) const {
    if (ec_) return ec_->neg(std::get<RationalECPoint>(a));
    return g2_->neg(std::get<RationalDivisor>(a));
  }

  JacobianElementQ mul(const JacobianElementQ& a, long long n) const {
    require(a, "operand");
    if (ec_) return ec_->mul(std::get<RationalECPoint>(a), n);
    return g2_->mul(std::get<RationalDivisor>(a), n);
  }

  bool is_identity(const JacobianElementQ& a) const { return a == identity(); }

  /// [P - infinity] for an affine rational point.
  JacobianElementQ point_class(const Rational& x, const Rational& y) const {
    if (ec_) {
      auto p = RationalECPoint::affine(x, y);
      if (!ec_->on_curve(p)) fail(ErrorKind::PointNotOnCurve, "point is not on the curve");
      return p;
    }
    return g2_->from_point(x, y);
  }

 private:
  std::optional<EllipticGroup<Rational>> ec_;
  std::optional<HyperellipticJacobian<Rational>> g2_;
};

struct TorsionGenerator {
  JacobianElementQ element;
  u64 order = 1;
};

/// Generators of (a subgroup of) J(Q), as supplied by the user.
///
/// Membership and declared torsion orders are checked; independence of the
/// free generators and whether the generators span all of J(Q) are not.
struct MordellWeilBasis {
  std::vector<TorsionGenerator> torsion;
  std::vector<JacobianElementQ> free;
  std::string provenance = "user-supplied";

  void validate(const CurveModel& curve) const {
    RationalJacobian jac(curve);
    for (size_t i = 0; i < torsion.size(); ++i) {
      const auto& t = torsion[i];
      jac.require(t.element, "torsion generator " + std::to_string(i));
      if (t.order < 1) fail(ErrorKind::ConfigError, "torsion order must be positive");
      if (!jac.is_identity(jac.mul(t.element, static_cast<long long>(t.order))))
        fail(ErrorKind::ConfigError, "torsion generator " + std::to_string(i) + " is not killed by its declared order");
    }
    for (size_t i = 0; i < free.size(); ++i) jac.require(free[i], "free generator " + std::to_string(i));
  }

  std::vector<u64> torsion_orders() const {
    std::vector<u64> out;
    for (const auto& t : torsion) out.push_back(t.order);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Jacobians over F_p as explicit finite groups.

/// E(F_p) for a short Weierstrass model.
class EllipticFp {
 public:
  using Element = ECPoint<FieldElement>;

  EllipticFp(const EllipticCurve& e, u64 p)
      : curve_(e), field_(ExtField::make(p)), group_(field_->from_int(e.a), field_->from_int(e.b)) {
    detail::require_good(CurveModel(e), p);
  }

  const ExtField& field() const { return *field_; }
  Element identity() const { return Element::identity(); }
  Element add(const Element& a, const Element& b) const { return group_.add_unchecked(a, b); }
  Element neg(const Element& a) const { return group_.neg(a); }
  bool contains(const Element& a) const { return group_.on_curve(a); }

  u64 key(const Element& a) const {
    if (a.infinity) return 0;
    return 1 + a.x.index() * field_->p() + a.y.index();
  }

  /// Identity first, then affine points lexicographically.
  std::vector<Element> enumerate() const {
    std::vector<Element> out{Element::identity()};
    for (const auto& pt : enumerate_points(CurveModel(curve_), *field_))
      if (!pt.at_infinity()) out.push_back(Element::affine(pt.x, pt.y));
    return out;
  }

  /// Classes [P - O] of the points of the reduced curve.
  std::vector<Element> point_classes() const { return enumerate(); }

  /// Reduction of a rational point; points with p in the denominator of x reduce to O.
  Element reduce(const JacobianElementQ& q) const {
    const auto* pt = std::get_if<RationalECPoint>(&q);
    if (!pt) fail(ErrorKind::ConfigError, "expected an elliptic-curve point");
    if (pt->infinity) return Element::identity();
    const u64 p = field_->p();
    if (valuation(pt->x, p) < 0) return Element::identity();
    auto x = reduce_rational(pt->x, p), y = reduce_rational(pt->y, p);
    if (!x || !y) fail(ErrorKind::NonIntegralAtP, "point is not p-integral");
    Element r = Element::affine(field_->from_int(static_cast<long long>(*x)), field_->from_int(static_cast<long long>(*y)));
    if (!group_.on_curve(r)) fail(ErrorKind::PointNotOnCurve, "reduction is not on the reduced curve");
    return r;
  }

  bool reducible(const JacobianElementQ& q) const {
    try {
      (void)reduce(q);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

 private:
  EllipticCurve curve_;
  std::shared_ptr<const ExtField> field_;
  EllipticGroup<FieldElement> group_;
};

/// J(F_p) for y^2 = f(x), deg f = 5, via Mumford pairs.
class Genus2Fp {
 public:
  using Element = MumfordDivisor<FieldElement>;

  Genus2Fp(const HyperellipticCurve& h, u64 p)
      : curve_(h), field_(ExtField::make(p)), jac_(detail::reduce_poly(h.f, *field_)) {
    detail::require_good(CurveModel(h), p);
    if (p > 40000) fail(ErrorKind::Unsupported, "prime too large for genus-2 enumeration keys");
  }

  const ExtField& field() const { return *field_; }
  const HyperellipticJacobian<FieldElement>& jacobian() const { return jac_; }
  Element identity() const { return jac_.identity(); }
  Element add(const Element& a, const Element& b) const { return jac_.add_unchecked(a, b); }
  Element neg(const Element& a) const { return jac_.neg(a); }
  bool contains(const Element& a) const { return jac_.is_valid(a); }

  u64 key(const Element& d) const {
    const u64 p = field_->p();
    auto c = [&](const Poly<FieldElement>& poly, int i) { return poly[i].index(); };
    if (d.u.degree() == 0) return 0;
    if (d.u.degree() == 1) return 1 + c(d.u, 0) * p + c(d.v, 0);
    return 1 + p * p + ((c(d.u, 1) * p + c(d.u, 0)) * p + c(d.v, 1)) * p + c(d.v, 0);
  }

  /// Every reduced divisor, ordered by key: identity, degree one, degree two.
  ///
  /// Degree-two classes are built from the factorization type of u: split
  /// (two affine points), a double root (tangent condition), or an irreducible
  /// quadratic (a conjugate pair over F_{p^2}).
  std::vector<Element> enumerate() const {
    const ExtField& k = *field_;
    const u64 p = k.p();
    const auto& f = jac_.f();
    const FieldElement zero = k.zero(), one = k.one();
    std::vector<Element> out{identity()};
    std::vector<std::vector<FieldElement>> ys(p);
    for (u64 a = 0; a < p; ++a) {
      FieldElement x = k.from_index(a);
      if (auto s = f.eval(x).sqrt()) {
        ys[a].push_back(*s);
        if (!s->is_zero()) ys[a].push_back(-*s);
      }
      for (const auto& y : ys[a]) out.push_back(jac_.from_point(x, y));
    }
    auto linear = [&](const FieldElement& v1, const FieldElement& v0) {
      return Poly<FieldElement>(zero, {v0, v1});
    };
    // split u = (x - a)(x - b), a < b
    for (u64 a = 0; a < p; ++a)
      for (u64 b = a + 1; b < p; ++b) {
        FieldElement xa = k.from_index(a), xb = k.from_index(b);
        Poly<FieldElement> u(zero, {xa * xb, -(xa + xb), one});
        for (const auto& ya : ys[a])
          for (const auto& yb : ys[b]) {
            FieldElement v1 = (yb - ya) / (xb - xa);
            out.push_back({u, linear(v1, ya - v1 * xa)});
          }
      }
    // u = (x - a)^2 with f(a) != 0
    const auto df = f.derivative();
    const FieldElement two = k.from_int(2);
    for (u64 a = 0; a < p; ++a) {
      FieldElement xa = k.from_index(a);
      Poly<FieldElement> u(zero, {xa * xa, -(two * xa), one});
      for (const auto& ya : ys[a]) {
        if (ya.is_zero()) continue;
        FieldElement v1 = df.eval(xa) / (two * ya);
        out.push_back({u, linear(v1, ya - v1 * xa)});
      }
    }
    // irreducible u = x^2 + u1 x + u0
    auto k2 = ExtField::make(p, 2);
    auto lift = [&](const FieldElement& e) { return k2->from_int(static_cast<long long>(e.index())); };
    std::vector<FieldElement> f2;
    for (const auto& c : f.coeffs()) f2.push_back(lift(c));
    Poly<FieldElement> fq(k2->zero(), f2);
    const FieldElement two2 = k2->from_int(2);
    for (u64 u1 = 0; u1 < p; ++u1)
      for (u64 u0 = 0; u0 < p; ++u0) {
        FieldElement c1 = k.from_index(u1), c0 = k.from_index(u0);
        FieldElement disc = c1 * c1 - FieldElement(k.from_int(4)) * c0;
        if (disc.is_zero() || disc.is_square()) continue;
        auto sq = lift(disc).sqrt();
        FieldElement alpha = (sq.value() - lift(c1)) / two2;
        FieldElement alpha_bar = alpha.frobenius();
        FieldElement target = fq.eval(alpha);
        auto beta = target.sqrt();
        if (!beta) continue;
        Poly<FieldElement> u(zero, {c0, c1, one});
        std::vector<FieldElement> betas{*beta};
        if (!beta->is_zero()) betas.push_back(-*beta);
        for (const auto& b : betas) {
          FieldElement w1 = (b - b.frobenius()) / (alpha - alpha_bar);
          FieldElement w0 = b - w1 * alpha;
          if (w1.coeff(1) != 0 || w0.coeff(1) != 0) fail(ErrorKind::InvalidDivisor, "conjugate interpolation left F_p");
          out.push_back({u, linear(k.from_index(w1.coeff(0)), k.from_index(w0.coeff(0)))});
        }
      }
    std::sort(out.begin(), out.end(), [&](const Element& x, const Element& y) { return key(x) < key(y); });
    return out;
  }

  /// Classes [P - infinity] for P in C(F_p), infinity included (as the identity).
  std::vector<Element> point_classes() const {
    std::vector<Element> out{identity()};
    for (const auto& pt : enumerate_points(CurveModel(curve_), *field_))
      if (!pt.at_infinity()) out.push_back(jac_.from_point(pt.x, pt.y));
    return out;
  }

  Element reduce(const JacobianElementQ& q) const {
    const auto* d = std::get_if<RationalDivisor>(&q);
    if (!d) fail(ErrorKind::ConfigError, "expected a Mumford divisor");
    const u64 p = field_->p();
    auto red = [&](const Poly<Rational>& poly) {
      std::vector<FieldElement> c;
      for (const auto& r : poly.coeffs()) {
        auto v = reduce_rational(r, p);
        if (!v) fail(ErrorKind::NonIntegralAtP, "Mumford coefficients are not p-integral at " + std::to_string(p));
        c.push_back(field_->from_int(static_cast<long long>(*v)));
      }
      return Poly<FieldElement>(field_->zero(), std::move(c));
    };
    Element e{red(d->u), red(d->v)};
    if (!jac_.is_valid(e)) fail(ErrorKind::InvalidDivisor, "reduction is not a reduced Mumford pair");
    return e;
  }

  bool reducible(const JacobianElementQ& q) const {
    try {
      (void)reduce(q);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

 private:
  HyperellipticCurve curve_;
  std::shared_ptr<const ExtField> field_;
  HyperellipticJacobian<FieldElement> jac_;
};

/// J(F_p) materialized: every element gets an index in canonical enumeration order.
template <class Ops>
class FiniteJacobian {
 public:
  using Element = typename Ops::Element;

  explicit FiniteJacobian(Ops ops) : ops_(std::move(ops)), elems_(ops_.enumerate()) {
    index_.reserve(elems_.size() * 2);
    for (u32 i = 0; i < elems_.size(); ++i) index_.emplace(ops_.key(elems_[i]), i);
    if (index_.size() != elems_.size()) fail(ErrorKind::InvalidDivisor, "duplicate group elements in enumeration");
  }

  using u32 = std::uint32_t;

  const Ops& ops() const noexcept { return ops_; }
  std::size_t order() const noexcept { return elems_.size(); }
  const Element& element(u32 i) const { return elems_[i]; }
  const std::vector<Element>& elements() const noexcept { return elems_; }

  u32 index_of(const Element& e) const {
    auto it = index_.find(ops_.key(e));
    if (it == index_.end()) fail(ErrorKind::InvalidDivisor, "element not found in enumerated group");
    return it->second;
  }

  u32 add(u32 a, u32 b) const { return index_of(ops_.add(elems_[a], elems_[b])); }
  u32 neg(u32 a) const { return index_of(ops_.neg(elems_[a])); }

  u32 mul(u32 a, u64 n) const {
    Element acc = ops_.identity(), base = elems_[a];
    while (n) {
      if (n & 1) acc = ops_.add(acc, base);
      base = ops_.add(base, base);
      n >>= 1;
    }
    return index_of(acc);
  }

 private:
  Ops ops_;
  std::vector<Element> elems_;
  std::unordered_map<u64, u32> index_;
};

/// Labels of J(F_p)/B*J(F_p); each label is the smallest index in its coset.
template <class Ops>
class QuotientMap {
 public:
  using u32 = std::uint32_t;

  QuotientMap(const FiniteJacobian<Ops>& group, u64 modulus) : modulus_(modulus) {
    const size_t n = group.order();
    std::vector<char> in_bj(n, 0);
    for (u32 i = 0; i < n; ++i) in_bj[group.mul(i, modulus)] = 1;
    for (char c : in_bj) bj_size_ += c;

    // Generators of B*J by greedy subgroup closure.
    std::vector<char> in_h(n, 0);
    std::vector<u32> h{0};
    in_h[0] = 1;
    std::vector<u32> gens;
    for (u32 b = 0; b < n; ++b) {
      if (!in_bj[b] || in_h[b]) continue;
      gens.push_back(b);
      std::vector<u32> layer = h, grown = h;
      for (;;) {
        std::vector<u32> next;
        next.reserve(layer.size());
        for (u32 x : layer) next.push_back(group.add(x, b));
        if (in_h[next.front()]) break;
        for (u32 x : next) {
          in_h[x] = 1;
          grown.push_back(x);
        }
        layer = std::move(next);
      }
      h = std::move(grown);
    }
    if (h.size() != bj_size_) fail(ErrorKind::InvalidDivisor, "subgroup closure disagrees with B*J");

    labels_.assign(n, ~u32(0));
    std::vector<u32> stack;
    for (u32 i = 0; i < n; ++i) {
      if (labels_[i] != ~u32(0)) continue;
      ++label_count_;
      labels_[i] = i;
      stack.push_back(i);
      while (!stack.empty()) {
        u32 x = stack.back();
        stack.pop_back();
        for (u32 g : gens) {
          u32 y = group.add(x, g);
          if (labels_[y] == ~u32(0)) {
            labels_[y] = i;
            stack.push_back(y);
          }
        }
      }
    }
  }

  u64 modulus() const noexcept { return modulus_; }
  u32 label(u32 element_index) const { return labels_[element_index]; }
  const std::vector<u32>& labels() const noexcept { return labels_; }
  std::size_t label_count() const noexcept { return label_count_; }
  std::size_t subgroup_size() const noexcept { return bj_size_; }

 private:
  u64 modulus_;
  std::vector<u32> labels_;
  std::size_t label_count_ = 0;
  std::size_t bj_size_ = 0;
};

/// #J(F_p): point count in genus 1; L(1) of the zeta numerator in genus 2.
inline BigInt jacobian_order(const CurveModel& curve, u64 p) {
  detail::require_good(curve, p);
  const int g = genus(curve);
  if (g == 1) {
    if (!std::holds_alternative<EllipticCurve>(curve))
      fail(ErrorKind::Unsupported, "jacobian_order for plane cubics is not supported");
    return BigInt(count_points(curve, *ExtField::make(p)));
  }
  if (g != 2) fail(ErrorKind::Unsupported, "jacobian_order needs genus 1 or 2");
  const BigInt q(p);
  const BigInt n1(count_points(curve, *ExtField::make(p, 1)));
  const BigInt n2(count_points(curve, *ExtField::make(p, 2)));
  const BigInt a1 = n1 - q - 1;
  const BigInt twice_a2 = a1 * a1 + n2 - q * q - 1;
  const BigInt a2 = twice_a2 / 2;
  return 1 + a1 + a2 + q * a1 + q * q;
}

}  // namespace zcs
