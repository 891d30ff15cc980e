#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zcs/curves.hpp"
#include "zcs/hilbert.hpp"

namespace zcs {

// ---------------------------------------------------------------------------
// Real place.

namespace detail {

/// Number of real roots of a squarefree rational polynomial (Sturm).
inline int real_root_count(const Poly<Rational>& f) {
  if (f.degree() <= 0) return 0;
  std::vector<Poly<Rational>> seq{f, f.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(Poly<Rational>(Rational(0)) - r);
  }
  auto sign_changes = [&](bool at_plus) {
    int changes = 0, last = 0;
    for (const auto& g : seq) {
      if (g.is_zero()) continue;
      int s = g.leading() > 0 ? 1 : -1;
      if (!at_plus && g.degree() % 2) s = -s;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  };
  return sign_changes(false) - sign_changes(true);
}

}  // namespace detail

inline bool real_soluble(const CurveModel& curve) {
  if (auto* k = std::get_if<Conic>(&curve)) {
    // a x^2 + b y^2 - c z^2 is isotropic over R iff it is indefinite.
    const int sa = k->a > 0 ? 1 : -1, sb = k->b > 0 ? 1 : -1, sc = k->c > 0 ? -1 : 1;
    return !(sa == sb && sb == sc);
  }
  if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
    if (h->degree() % 2 == 1 || h->leading() > 0) return true;
    return detail::real_root_count(rational_poly(h->f)) > 0;
  }
  return true;
}

// ---------------------------------------------------------------------------
// p-adic places: Hensel tree search on affine charts.

struct LocalReport {
  Place place;
  bool soluble = false;
  /// "hensel", "real", or "weil_bound".
  std::string method;
  /// Primitive integer point with F(witness) = 0 mod p^witness_precision.
  std::optional<std::array<BigInt, 3>> witness;
  int witness_precision = 0;
  /// min valuation of the chart partials at the witness; 2k < witness_precision.
  int lift_valuation = 0;
  /// Coordinate fixed to 1 in the chart that produced the witness.
  int chart_unit = -1;
  /// Search depth allowed (the requested precision).
  int precision = 0;
};

namespace detail {

/// Dense bivariate integer polynomial, coefficient [i][j] of U^i W^j.
struct Bivariate {
  int deg = 0;
  std::vector<std::vector<BigInt>> c;

  explicit Bivariate(int d = 0) : deg(d), c(d + 1, std::vector<BigInt>(d + 1, BigInt(0))) {}

  bool is_zero() const {
    for (const auto& row : c)
      for (const auto& v : row)
        if (v != 0) return false;
    return true;
  }
};

inline BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline BigInt pow_big(const BigInt& b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// H(a + s U, b + t W).
inline Bivariate substitute(const Bivariate& h, const BigInt& a, const BigInt& s, const BigInt& b, const BigInt& t) {
  Bivariate out(h.deg);
  for (int i = 0; i <= h.deg; ++i)
    for (int j = 0; j <= h.deg; ++j) {
      if (h.c[i][j] == 0) continue;
      for (int x = 0; x <= i; ++x) {
        BigInt cx = h.c[i][j] * binomial(i, x) * pow_big(a, i - x) * pow_big(s, x);
        if (cx == 0) continue;
        for (int y = 0; y <= j; ++y) out.c[x][y] += cx * binomial(j, y) * pow_big(b, j - y) * pow_big(t, y);
      }
    }
  return out;
}

inline int content_valuation(const Bivariate& h, u64 p) {
  int v = 1 << 20;
  for (const auto& row : h.c)
    for (const auto& x : row)
      if (x != 0) v = std::min(v, valuation(x, p));
  return v;
}

inline void divide_content(Bivariate& h, u64 p, int v) {
  const BigInt d = pow_big(BigInt(p), v);
  for (auto& row : h.c)
    for (auto& x : row) x /= d;
}

/// Reduced coefficients mod p for fast residue scans.
struct ReducedBivariate {
  u64 p;
  std::vector<std::vector<u64>> c;

  ReducedBivariate(const Bivariate& h, u64 p_) : p(p_), c(h.deg + 1, std::vector<u64>(h.deg + 1)) {
    for (int i = 0; i <= h.deg; ++i)
      for (int j = 0; j <= h.deg; ++j) c[i][j] = mod_u64(h.c[i][j], p);
  }

  /// Value and both partial derivatives at (u, w) mod p.
  std::array<u64, 3> eval(u64 u, u64 w) const {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<u64> up(d + 1, 1), wp(d + 1, 1);
    for (int i = 1; i <= d; ++i) {
      up[i] = mulmod(up[i - 1], u, p);
      wp[i] = mulmod(wp[i - 1], w, p);
    }
    u64 v = 0, du = 0, dw = 0;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        if (c[i][j] == 0) continue;
        v = (v + mulmod(c[i][j], mulmod(up[i], wp[j], p), p)) % p;
        if (i > 0) du = (du + mulmod(mulmod(c[i][j], i % p, p), mulmod(up[i - 1], wp[j], p), p)) % p;
        if (j > 0) dw = (dw + mulmod(mulmod(c[i][j], j % p, p), mulmod(up[i], wp[j - 1], p), p)) % p;
      }
    return {v, du, dw};
  }
};

inline BigInt eval_bivariate(const Bivariate& h, const BigInt& u, const BigInt& w) {
  BigInt acc = 0;
  for (int i = 0; i <= h.deg; ++i)
    for (int j = 0; j <= h.deg; ++j)
      if (h.c[i][j] != 0) acc += h.c[i][j] * pow_big(u, i) * pow_big(w, j);
  return acc;
}

inline BigInt mod_big(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

/// An affine chart of the weighted projective model: coordinate `unit` is 1,
/// the free coordinates are `free[0]`, `free[1]`, each constrained to p^scale Z_p.
struct Chart {
  int unit;
  std::array<int, 2> free;
  std::array<int, 2> scale;
};

inline std::vector<Chart> charts_for(const std::array<int, 3>& weights) {
  if (weights == std::array<int, 3>{1, 1, 1})
    return {Chart{0, {1, 2}, {0, 0}}, Chart{1, {0, 2}, {1, 0}}, Chart{2, {0, 1}, {1, 1}}};
  // Weights (1, 3, 1): x and z form a primitive pair, y is determined up to sign.
  return {Chart{0, {1, 2}, {0, 0}}, Chart{2, {0, 1}, {1, 0}}};
}

inline Bivariate chart_polynomial(const TernaryForm& form, const Chart& ch) {
  int deg = 0;
  for (const auto& [e, c] : form) deg = std::max({deg, e[ch.free[0]] + e[ch.free[1]], e[ch.free[0]], e[ch.free[1]]});
  Bivariate h(deg);
  for (const auto& [e, c] : form) h.c[e[ch.free[0]]][e[ch.free[1]]] += c;
  return h;
}

inline std::array<BigInt, 3> chart_point(const Chart& ch, const BigInt& u, const BigInt& w) {
  std::array<BigInt, 3> pt;
  pt[ch.unit] = 1;
  pt[ch.free[0]] = u;
  pt[ch.free[1]] = w;
  return pt;
}

inline BigInt eval_form_int(const TernaryForm& f, const std::array<BigInt, 3>& pt) {
  BigInt acc = 0;
  for (const auto& [e, c] : f) acc += c * pow_big(pt[0], e[0]) * pow_big(pt[1], e[1]) * pow_big(pt[2], e[2]);
  return acc;
}

class HenselSearch {
 public:
  HenselSearch(const WeightedEquation& eq, u64 p, int max_depth) : eq_(eq), p_(p), max_depth_(max_depth) {}

  /// Returns the first liftable point in chart/residue order, or nullopt.
  std::optional<LocalReport> run() {
    for (const auto& ch : charts_for(eq_.weights)) {
      Bivariate g = chart_polynomial(eq_.form, ch);
      const BigInt su = pow_big(BigInt(p_), ch.scale[0]), sw = pow_big(BigInt(p_), ch.scale[1]);
      Bivariate h = substitute(g, 0, su, 0, sw);
      if (h.is_zero()) continue;
      divide_content(h, p_, content_valuation(h, p_));
      if (auto r = explore(ch, g, h, 0, su, 0, sw, 0)) return r;
    }
    return std::nullopt;
  }

  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::optional<LocalReport> explore(const Chart& ch, const Bivariate& g, const Bivariate& h, const BigInt& u0,
                                     const BigInt& su, const BigInt& w0, const BigInt& sw, int depth) {
    ReducedBivariate hr(h, p_);
    std::vector<std::pair<u64, u64>> singular;
    for (u64 u = 0; u < p_; ++u)
      for (u64 w = 0; w < p_; ++w) {
        auto [v, du, dw] = hr.eval(u, w);
        if (v != 0) continue;
        if (du != 0 || dw != 0) return witness(ch, g, h, u0, su, w0, sw, u, w, du != 0);
        singular.emplace_back(u, w);
      }
    if (singular.empty()) return std::nullopt;
    if (depth + 1 >= max_depth_) {
      exhausted_ = true;
      return std::nullopt;
    }
    const BigInt p(p_);
    for (auto [u, w] : singular) {
      Bivariate next = substitute(h, BigInt(u), p, BigInt(w), p);
      divide_content(next, p_, content_valuation(next, p_));
      if (auto r = explore(ch, g, next, u0 + su * u, su * p, w0 + sw * w, sw * p, depth + 1)) return r;
    }
    return std::nullopt;
  }

  /// Lift a smooth root of h mod p along the variable with unit partial until the
  /// original chart polynomial satisfies v(G) > 2 v(grad G).
  LocalReport witness(const Chart& ch, const Bivariate& g, const Bivariate& h, const BigInt& u0, const BigInt& su,
                      const BigInt& w0, const BigInt& sw, u64 u, u64 w, bool lift_u) {
    const BigInt p(p_);
    BigInt U(u), W(w);
    // Derivative of h along the lifting direction at the residue, inverted mod p.
    auto [v0, du, dw] = ReducedBivariate(h, p_).eval(u, w);
    (void)v0;
    const BigInt inv(inv_mod(lift_u ? du : dw, p_));
    BigInt pk = p;
    const auto& eq = eq_;
    for (int n = 1; n < 4096; ++n) {
      std::array<BigInt, 3> pt = chart_point(ch, u0 + su * U, w0 + sw * W);
      auto check = verify_point(eq, pt, ch);
      if (check) {
        auto [m, k] = *check;
        LocalReport r;
        r.place = Place::prime(p_);
        r.soluble = true;
        r.method = "hensel";
        const BigInt mod = pow_big(p, m);
        for (int i = 0; i < 3; ++i)
          if (i != ch.unit) pt[i] = mod_big(pt[i], mod);
        r.witness = pt;
        r.witness_precision = m;
        r.lift_valuation = k;
        r.chart_unit = ch.unit;
        r.precision = max_depth_;
        return r;
      }
      // One more p-adic digit of the root of h.
      BigInt val = eval_bivariate(h, U, W);
      BigInt step = mod_big(-(val / pk) * inv, p);
      if (lift_u) U += step * pk;
      else W += step * pk;
      pk *= p;
    }
    fail(ErrorKind::PrecisionExhausted, "Hensel lifting did not stabilize");
  }

 public:
  /// (m, k) with m = 2k + 1, when F(pt) = 0 mod p^m and the chart partials have min valuation k.
  static std::optional<std::pair<int, int>> certify(const WeightedEquation& eq, const std::array<BigInt, 3>& pt,
                                                    const Chart& ch, u64 p) {
    int k = 1 << 20;
    for (int var : ch.free) {
      BigInt d = eval_form_int(partial(eq.form, var), pt);
      if (d != 0) k = std::min(k, valuation(d, p));
    }
    if (k >= (1 << 20)) return std::nullopt;
    BigInt val = eval_form_int(eq.form, pt);
    const int m = 2 * k + 1;
    if (val != 0 && valuation(val, p) < m) return std::nullopt;
    return std::make_pair(m, k);
  }

 private:
  std::optional<std::pair<int, int>> verify_point(const WeightedEquation& eq, const std::array<BigInt, 3>& pt,
                                                  const Chart& ch) const {
    return certify(eq, pt, ch, p_);
  }

  const WeightedEquation& eq_;
  u64 p_;
  int max_depth_;
  bool exhausted_ = false;
};

}  // namespace detail

/// Default search depth 2 v_p(disc) + 3, capped so that p^m fits comfortably in 62 bits.
inline int default_precision(const CurveModel& curve, u64 p) {
  int m = 2 * valuation(abs_big(discriminant(curve)), p) + 3;
  int cap = 0;
  for (u128 q = 1; q * p < (u128(1) << 62); q *= p) ++cap;
  return std::max(1, std::min(m, std::max(cap, 3)));
}

/// Solubility over Q_p by Hensel tree search to depth `precision`.
inline LocalReport qp_soluble(const CurveModel& curve, u64 p, int precision) {
  if (!is_prime(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  if (precision < 1) fail(ErrorKind::ConfigError, "precision must be >= 1");
  const WeightedEquation eq = equation(curve);
  detail::HenselSearch search(eq, p, precision);
  if (auto r = search.run()) return *r;
  if (search.exhausted())
    fail(ErrorKind::PrecisionExhausted, "no certificate at p = " + std::to_string(p) + " with precision " +
                                            std::to_string(precision));
  LocalReport r;
  r.place = Place::prime(p);
  r.soluble = false;
  r.method = "hensel";
  r.precision = precision;
  return r;
}

inline LocalReport qp_soluble(const CurveModel& curve, u64 p) { return qp_soluble(curve, p, default_precision(curve, p)); }

/// Independent check of a soluble report: primitive point, chart shape, F = 0 mod p^m, v(F) > 2 k.
inline bool verify_local_witness(const CurveModel& curve, const LocalReport& r) {
  if (!r.soluble || r.place.is_real()) return r.soluble && r.method == "real" && real_soluble(curve);
  if (!r.witness || r.chart_unit < 0 || r.chart_unit > 2) return false;
  const auto& pt = *r.witness;
  const u64 p = r.place.p;
  if (pt[r.chart_unit] != 1) return false;
  const WeightedEquation eq = equation(curve);
  BigInt value = detail::eval_form_int(eq.form, pt);
  if (value != 0 && valuation(value, p) < r.witness_precision) return false;
  int k = 1 << 20;
  for (int var = 0; var < 3; ++var) {
    if (var == r.chart_unit) continue;
    BigInt d = detail::eval_form_int(partial(eq.form, var), pt);
    if (d != 0) k = std::min(k, valuation(d, p));
  }
  return k == r.lift_valuation && 2 * k < r.witness_precision;
}

inline LocalReport real_report(const CurveModel& curve) {
  LocalReport r;
  r.place = Place::real();
  r.soluble = real_soluble(curve);
  r.method = "real";
  return r;
}

struct ElsReport {
  bool soluble = true;
  /// Real place first, then primes ascending.
  std::vector<LocalReport> places;
  /// Good primes above this bound are soluble by the Weil bound.
  u64 weil_bound = 0;
  std::vector<u64> bad_primes;
};

inline u64 weil_threshold(int g) { return static_cast<u64>(4 * g * g + 5); }

/// Checks the real place, every bad prime, and every good prime up to max(4g^2 + 5, explicit_bound).
inline ElsReport everywhere_locally_soluble(const CurveModel& curve, u64 explicit_bound = 0) {
  ElsReport out;
  out.bad_primes = bad_primes(curve);
  out.weil_bound = std::max(weil_threshold(genus(curve)), explicit_bound);
  out.places.push_back(real_report(curve));
  std::vector<u64> primes = out.bad_primes;
  for (u64 p : primes_up_to(out.weil_bound)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (u64 p : primes) {
    try {
      out.places.push_back(qp_soluble(curve, p));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PrecisionExhausted)
        fail(ErrorKind::PrecisionExhausted, "place " + std::to_string(p) + ": " + e.what());
      throw;
    }
  }
  for (const auto& r : out.places) out.soluble = out.soluble && r.soluble;
  return out;
}

// ---------------------------------------------------------------------------
// Local index.

struct ClosedPointWitness {
  int degree = 0;
  /// Residue-field coordinates of a smooth point of the reduction, or a description.
  std::string description;
  bool unramified = true;
};

struct LocalIndexReport {
  Place place;
  u64 index = 0;
  std::vector<ClosedPointWitness> degrees;
  /// Set when the value is only an upper bound (bad prime, unramified data only).
  bool unramified_only = false;
  int max_degree_searched = 0;
};

namespace detail {

inline int frobenius_orbit(const std::array<FieldElement, 3>& pt) {
  auto cur = pt;
  for (int n = 1; n <= 8; ++n) {
    for (auto& c : cur) c = c.frobenius();
    if (cur == pt) return n;
  }
  return 0;
}

inline std::optional<std::array<FieldElement, 3>> exact_degree_smooth_point(const CurveModel& curve,
                                                                             const ExtField& k) {
  const int want = k.degree();
  const u64 q = k.size();
  auto accept = [&](const std::array<FieldElement, 3>& pt) { return frobenius_orbit(pt) == want; };
  if (std::holds_alternative<EllipticCurve>(curve) || std::holds_alternative<HyperellipticCurve>(curve)) {
    IntPoly f;
    if (auto* e = std::get_if<EllipticCurve>(&curve)) f = {e->b, e->a, 0, 1};
    else f = std::get<HyperellipticCurve>(curve).f;
    const auto fk = reduce_poly(f, k);
    const auto dfk = fk.derivative();
    for (u64 i = 0; i < q; ++i) {
      FieldElement x = k.from_index(i);
      auto s = fk.eval(x).sqrt();
      if (!s) continue;
      if (s->is_zero() && dfk.eval(x).is_zero()) continue;
      std::array<FieldElement, 3> pt{x, *s, k.one()};
      if (accept(pt)) return pt;
    }
    return std::nullopt;
  }
  if (q > kMaxPlaneEnumeration) return std::nullopt;
  const TernaryForm form = equation(curve).form;
  const std::array<TernaryForm, 3> grad{partial(form, 0), partial(form, 1), partial(form, 2)};
  for (const auto& pt : enumerate_points(curve, k, ReductionPolicy::AllowBad)) {
    std::array<FieldElement, 3> c{pt.x, pt.y, pt.z};
    bool smooth = false;
    for (const auto& gi : grad) smooth = smooth || !eval_form(gi, c[0], c[1], c[2]).is_zero();
    if (smooth && accept(c)) return c;
  }
  return std::nullopt;
}

inline std::string describe(const std::array<FieldElement, 3>& pt) {
  return "(" + pt[0].str() + " : " + pt[1].str() + " : " + pt[2].str() + ") over F_" +
         std::to_string(pt[0].field()->size());
}

}  // namespace detail

/// gcd of degrees d <= min(2g + 2, 4) of closed points found over unramified extensions.
inline LocalIndexReport local_index(const CurveModel& curve, u64 p) {
  LocalIndexReport out;
  out.place = Place::prime(p);
  const int g = genus(curve);
  const bool good = reduction_type(curve, p).good;
  out.unramified_only = !good;
  out.max_degree_searched = std::min(2 * g + 2, ExtField::kMaxDegree);
  u64 gcd_all = 0;
  auto r = qp_soluble(curve, p);
  if (r.soluble) {
    out.degrees.push_back({1, "Hensel-liftable point at precision " + std::to_string(r.witness_precision), true});
    out.index = 1;
    out.unramified_only = false;
    return out;
  }
  for (int d = 2; d <= out.max_degree_searched && gcd_all != 1; ++d) {
    auto k = ExtField::residue_field(p, d);
    if (auto pt = detail::exact_degree_smooth_point(curve, *k)) {
      out.degrees.push_back({d, detail::describe(*pt), true});
      gcd_all = std::gcd(gcd_all, static_cast<u64>(d));
    }
  }
  // Structural closed points, possibly over ramified extensions.
  if (auto* h = std::get_if<HyperellipticCurve>(&curve); h && std::gcd(gcd_all, u64(2)) != gcd_all) {
    out.degrees.push_back({2, "fiber over x = 0, y^2 = " + zcs::to_string(Rational(h->f[0])), false});
    gcd_all = std::gcd(gcd_all, u64(2));
  }
  if (std::holds_alternative<Conic>(curve) && std::gcd(gcd_all, u64(2)) != gcd_all) {
    out.degrees.push_back({2, "section by the line z = 0", false});
    gcd_all = std::gcd(gcd_all, u64(2));
  }
  if (std::holds_alternative<PlaneCubic>(curve) && std::gcd(gcd_all, u64(3)) != gcd_all) {
    out.degrees.push_back({3, "section by the line z = 0", false});
    gcd_all = std::gcd(gcd_all, u64(3));
  }
  std::sort(out.degrees.begin(), out.degrees.end(),
            [](const ClosedPointWitness& a, const ClosedPointWitness& b) { return a.degree < b.degree; });
  out.index = gcd_all;
  return out;
}

}  // namespace zcs
