#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <variant>
#include <vector>

#include "zcs/bigint.hpp"
#include "zcs/field.hpp"
#include "zcs/modular.hpp"
#include "zcs/poly.hpp"
#include "zcs/resultant.hpp"

namespace zcs {

/// a x^2 + b y^2 = c z^2, normalized to pairwise coprime squarefree coefficients.
///
/// `scale` maps normalized coordinates back: original_i = scale[i] * normalized_i.
struct Conic {
  BigInt a, b, c;
  BigInt orig_a, orig_b, orig_c;
  std::array<Rational, 3> scale{Rational(1), Rational(1), Rational(1)};

  static Conic make(const BigInt& a, const BigInt& b, const BigInt& c) {
    if (a == 0 || b == 0 || c == 0) fail(ErrorKind::SingularModel, "conic coefficients must be nonzero");
    Conic k;
    k.orig_a = a;
    k.orig_b = b;
    k.orig_c = c;
    // Work with the diagonal form A X^2 + B Y^2 + C Z^2.
    std::array<BigInt, 3> co{a, b, BigInt(-c)};
    auto drop_common = [&] {
      BigInt g = gcd_big(gcd_big(co[0], co[1]), co[2]);
      for (auto& v : co) v /= g;
    };
    drop_common();
    for (int i = 0; i < 3; ++i) {
      BigInt sq = 1;
      for (const auto& [p, e] : factor(co[i]))
        for (int j = 0; j < e / 2; ++j) sq *= p;
      co[i] /= sq * sq;
      k.scale[i] /= Rational(sq);
    }
    drop_common();
    for (;;) {
      bool changed = false;
      for (int i = 0; i < 3 && !changed; ++i) {
        const int j = (i + 1) % 3, l = (i + 2) % 3;
        BigInt g = gcd_big(co[i], co[j]);
        if (g == 1) continue;
        const BigInt p = factor(g).begin()->first;
        co[i] /= p;
        co[j] /= p;
        co[l] *= p;
        k.scale[l] *= Rational(p);
        drop_common();
        changed = true;
      }
      if (!changed) break;
    }
    k.a = co[0];
    k.b = co[1];
    k.c = -co[2];
    return k;
  }

  /// Maps a solution of the normalized equation to a primitive integer solution of the original.
  std::array<BigInt, 3> to_original(const std::array<BigInt, 3>& v) const {
    std::array<Rational, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = scale[i] * Rational(v[i]);
    BigInt l = 1;
    for (auto& q : r) l = boost::multiprecision::lcm(l, denominator(q));
    std::array<BigInt, 3> out;
    BigInt g = 0;
    for (int i = 0; i < 3; ++i) {
      out[i] = numerator(r[i] * Rational(l));
      g = gcd_big(g, out[i]);
    }
    if (g > 1)
      for (auto& x : out) x /= g;
    return out;
  }
};

inline Poly<Rational> rational_poly(const IntPoly& f) {
  std::vector<Rational> c;
  for (const auto& v : f) c.emplace_back(v);
  return Poly<Rational>(Rational(0), std::move(c));
}

/// y^2 = x^3 + a x + b.
struct EllipticCurve {
  BigInt a, b;

  static EllipticCurve make(const BigInt& a, const BigInt& b) {
    EllipticCurve e{a, b};
    if (e.discriminant() == 0) fail(ErrorKind::SingularModel, "4a^3 + 27b^2 = 0");
    return e;
  }
  BigInt discriminant() const { return -16 * (4 * a * a * a + 27 * b * b); }
};

/// y^2 = f(x), deg f in {5, 6}; coefficients ascending.
struct HyperellipticCurve {
  IntPoly f;

  static HyperellipticCurve make(IntPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    const int d = static_cast<int>(f.size()) - 1;
    if (d != 5 && d != 6) fail(ErrorKind::Unsupported, "genus-2 models need deg f in {5, 6}");
    HyperellipticCurve h{std::move(f)};
    if (poly_discriminant(h.f) == 0) fail(ErrorKind::SingularModel, "f has a repeated root");
    return h;
  }
  int degree() const { return static_cast<int>(f.size()) - 1; }
  const BigInt& leading() const { return f.back(); }
};

/// Ternary cubic; coefficients of X^3, X^2Y, X^2Z, XY^2, XYZ, XZ^2, Y^3, Y^2Z, YZ^2, Z^3.
struct PlaneCubic {
  std::array<BigInt, 10> coeffs;

  static PlaneCubic make(const std::array<BigInt, 10>& c) {
    PlaneCubic k{c};
    if (ternary_cubic_discriminant(k.form()) == 0) fail(ErrorKind::SingularModel, "ternary cubic is singular");
    return k;
  }

  TernaryForm form() const {
    TernaryForm f;
    const auto mons = monomials_of_degree(3);
    for (size_t i = 0; i < 10; ++i)
      if (coeffs[i] != 0) f[mons[i]] = coeffs[i];
    return f;
  }

  /// True when Z enters only through the Z^3 term.
  bool diagonal_in_z() const {
    const auto mons = monomials_of_degree(3);
    for (size_t i = 0; i < 10; ++i)
      if (mons[i][2] > 0 && mons[i][2] < 3 && coeffs[i] != 0) return false;
    return coeffs[9] != 0;
  }
};

using CurveModel = std::variant<Conic, EllipticCurve, HyperellipticCurve, PlaneCubic>;

inline int genus(const CurveModel& c) {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Conic>) return 0;
        else if constexpr (std::is_same_v<T, HyperellipticCurve>) return 2;
        else return 1;
      },
      c);
}

inline std::string curve_kind(const CurveModel& c) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Conic>) return "conic";
        else if constexpr (std::is_same_v<T, EllipticCurve>) return "elliptic";
        else if constexpr (std::is_same_v<T, HyperellipticCurve>) return "hyperelliptic";
        else return "plane_cubic";
      },
      c);
}

/// Conic: -abc (determinant of the diagonal form). Elliptic: -16(4a^3+27b^2).
/// Hyperelliptic: disc(f). Plane cubic: Res(grad F)/27.
inline BigInt discriminant(const CurveModel& curve) {
  BigInt d = std::visit(
      [](const auto& k) -> BigInt {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Conic>) return -k.a * k.b * k.c;
        else if constexpr (std::is_same_v<T, EllipticCurve>) return k.discriminant();
        else if constexpr (std::is_same_v<T, HyperellipticCurve>) return poly_discriminant(k.f);
        else return ternary_cubic_discriminant(k.form());
      },
      curve);
  if (d == 0) fail(ErrorKind::SingularModel, "discriminant is zero");
  return d;
}

struct ReductionInfo {
  u64 p = 0;
  bool good = false;
};

/// Product whose prime divisors are exactly the bad primes (besides 2, always bad).
inline BigInt bad_reduction_product(const CurveModel& curve) {
  BigInt n = 2 * discriminant(curve);
  if (auto* h = std::get_if<HyperellipticCurve>(&curve)) n *= h->leading();
  if (std::holds_alternative<PlaneCubic>(curve)) n *= 3;
  return n;
}

inline std::vector<u64> bad_primes(const CurveModel& curve) { return prime_divisors_u64(bad_reduction_product(curve)); }

inline ReductionInfo reduction_type(const CurveModel& curve, u64 p) {
  if (!is_prime(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  if (p == 2) return {p, false};
  return {p, bad_reduction_product(curve) % p != 0};
}

/// The defining equation as F(x, y, z) = 0 in a weighted projective plane.
struct WeightedEquation {
  TernaryForm form;
  std::array<int, 3> weights{1, 1, 1};
};

inline WeightedEquation equation(const CurveModel& curve) {
  return std::visit(
      [](const auto& k) -> WeightedEquation {
        using T = std::decay_t<decltype(k)>;
        WeightedEquation w;
        if constexpr (std::is_same_v<T, Conic>) {
          w.form[{2, 0, 0}] = k.a;
          w.form[{0, 2, 0}] = k.b;
          w.form[{0, 0, 2}] = -k.c;
        } else if constexpr (std::is_same_v<T, EllipticCurve>) {
          w.form[{0, 2, 1}] = 1;
          w.form[{3, 0, 0}] = -1;
          if (k.a != 0) w.form[{1, 0, 2}] = -k.a;
          if (k.b != 0) w.form[{0, 0, 3}] = -k.b;
        } else if constexpr (std::is_same_v<T, HyperellipticCurve>) {
          w.weights = {1, 3, 1};
          w.form[{0, 2, 0}] = 1;
          for (int i = 0; i < static_cast<int>(k.f.size()); ++i)
            if (k.f[i] != 0) w.form[{i, 0, 6 - i}] = -k.f[i];
        } else {
          w.form = k.form();
        }
        return w;
      },
      curve);
}

/// Projective point over F_q, normalized: z = 1 if z != 0, else x = 1, else y = 1.
struct ProjectivePoint {
  FieldElement x, y, z;

  bool at_infinity() const { return z.is_zero(); }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  /// Affine points first, lexicographic by (x, y); then points at infinity.
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    auto key = [](const ProjectivePoint& p) {
      return std::array<u64, 4>{p.at_infinity() ? 1u : 0u, p.x.index(), p.y.index(), p.z.index()};
    };
    return key(a) < key(b);
  }
  std::string str() const { return "(" + x.str() + " : " + y.str() + " : " + z.str() + ")"; }
};

namespace detail {

inline FieldElement eval_form(const TernaryForm& f, const FieldElement& x, const FieldElement& y,
                              const FieldElement& z) {
  const ExtField* k = x.field();
  FieldElement acc = k->zero();
  for (const auto& [e, c] : f) {
    FieldElement t = k->from_int(c);
    t *= x.pow(static_cast<u64>(e[0]));
    t *= y.pow(static_cast<u64>(e[1]));
    t *= z.pow(static_cast<u64>(e[2]));
    acc += t;
  }
  return acc;
}

inline Poly<FieldElement> reduce_poly(const IntPoly& f, const ExtField& k) {
  std::vector<FieldElement> c;
  for (const auto& v : f) c.push_back(k.from_int(v));
  return Poly<FieldElement>(k.zero(), std::move(c));
}

inline void require_good(const CurveModel& curve, u64 p) {
  if (!reduction_type(curve, p).good)
    fail(ErrorKind::BadReduction, curve_kind(curve) + " has bad reduction at " + std::to_string(p));
}

constexpr u64 kMaxPlaneEnumeration = 2500;

}  // namespace detail

enum class ReductionPolicy { RequireGood, AllowBad };

/// All F_q-points of the model, in the deterministic order of ProjectivePoint.
inline std::vector<ProjectivePoint> enumerate_points(const CurveModel& curve, const ExtField& k,
                                                     ReductionPolicy policy = ReductionPolicy::RequireGood) {
  const bool planar = std::holds_alternative<Conic>(curve) || std::holds_alternative<PlaneCubic>(curve);
  if (policy == ReductionPolicy::RequireGood || !planar) detail::require_good(curve, k.p());
  std::vector<ProjectivePoint> pts;
  const u64 q = k.size();
  if (auto* e = std::get_if<EllipticCurve>(&curve)) {
    const FieldElement a = k.from_int(e->a), b = k.from_int(e->b);
    for (u64 i = 0; i < q; ++i) {
      FieldElement x = k.from_index(i);
      FieldElement r = x * x * x + a * x + b;
      if (auto s = r.sqrt()) {
        pts.push_back({x, *s, k.one()});
        if (!s->is_zero()) pts.push_back({x, -*s, k.one()});
      }
    }
    pts.push_back({k.zero(), k.one(), k.zero()});
  } else if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
    const auto f = detail::reduce_poly(h->f, k);
    for (u64 i = 0; i < q; ++i) {
      FieldElement x = k.from_index(i);
      if (auto s = f.eval(x).sqrt()) {
        pts.push_back({x, *s, k.one()});
        if (!s->is_zero()) pts.push_back({x, -*s, k.one()});
      }
    }
    if (h->degree() == 5) {
      pts.push_back({k.one(), k.zero(), k.zero()});
    } else if (auto s = f.leading().sqrt()) {
      pts.push_back({k.one(), *s, k.zero()});
      pts.push_back({k.one(), -*s, k.zero()});
    }
  } else {
    if (q > detail::kMaxPlaneEnumeration) fail(ErrorKind::Unsupported, "field too large for plane enumeration");
    const TernaryForm f = equation(curve).form;
    for (u64 i = 0; i < q; ++i)
      for (u64 j = 0; j < q; ++j) {
        FieldElement x = k.from_index(i), y = k.from_index(j);
        if (detail::eval_form(f, x, y, k.one()).is_zero()) pts.push_back({x, y, k.one()});
      }
    for (u64 j = 0; j < q; ++j) {
      FieldElement y = k.from_index(j);
      if (detail::eval_form(f, k.one(), y, k.zero()).is_zero()) pts.push_back({k.one(), y, k.zero()});
    }
    if (detail::eval_form(f, k.zero(), k.one(), k.zero()).is_zero()) pts.push_back({k.zero(), k.one(), k.zero()});
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// Number of projective points of the smooth model over F_q.
inline u64 count_points(const CurveModel& curve, const ExtField& k) {
  detail::require_good(curve, k.p());
  const u64 q = k.size();
  auto chi_count = [&](const Poly<FieldElement>& f) {
    u64 n = 0;
    for (u64 i = 0; i < q; ++i) {
      FieldElement r = f.eval(k.from_index(i));
      n += r.is_zero() ? 1 : (r.is_square() ? 2 : 0);
    }
    return n;
  };
  if (auto* e = std::get_if<EllipticCurve>(&curve)) {
    IntPoly f{e->b, e->a, 0, 1};
    return chi_count(detail::reduce_poly(f, k)) + 1;
  }
  if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
    const auto f = detail::reduce_poly(h->f, k);
    u64 inf = h->degree() == 5 ? 1 : (f.leading().is_square() ? 2 : 0);
    return chi_count(f) + inf;
  }
  return enumerate_points(curve, k).size();
}

}  // namespace zcs
