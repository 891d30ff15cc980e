#pragma once

// Brute-force reference implementation for differential tests. It shares no code
// with the library: plain 64-bit modular arithmetic, its own group laws, its own
// enumeration, and a naive admissible-coset test without quotient labels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace oracle {

using i64 = long long;
using Elem = std::vector<i64>;
using Tuple = std::vector<std::uint32_t>;

struct Fp {
  i64 p;
  i64 n(i64 a) const { return ((a % p) + p) % p; }
  i64 add(i64 a, i64 b) const { return n(a + b); }
  i64 sub(i64 a, i64 b) const { return n(a - b); }
  i64 mul(i64 a, i64 b) const { return n(a * b); }
  i64 pow(i64 a, i64 e) const {
    i64 r = 1;
    a = n(a);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  i64 inv(i64 a) const {
    if (n(a) == 0) throw std::domain_error("oracle: inverse of zero");
    return pow(a, p - 2);
  }
};

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Decimal string or machine integer reduced mod p.
inline i64 int_mod(const nlohmann::json& j, i64 p) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return static_cast<i64>(j.get<std::uint64_t>() % static_cast<std::uint64_t>(p));
    return ((j.get<i64>() % p) + p) % p;
  }
  const std::string s = j.get<std::string>();
  bool neg = !s.empty() && s[0] == '-';
  i64 r = 0;
  for (size_t i = neg ? 1 : 0; i < s.size(); ++i) r = (r * 10 + (s[i] - '0')) % p;
  return neg ? (p - r) % p : r;
}

// A rational as int or [num, den]; returns false when p divides the denominator.
inline bool rat_mod(const nlohmann::json& j, i64 p, i64& out) {
  Fp F{p};
  if (j.is_array()) {
    i64 d = int_mod(j[1], p);
    if (d == 0) return false;
    out = F.mul(int_mod(j[0], p), F.inv(d));
    return true;
  }
  out = int_mod(j, p);
  return true;
}

// ---------------------------------------------------------------------------
// Elliptic curves y^2 = x^3 + a x + b over F_p. Elements: {} for O, {x, y} otherwise.

struct Elliptic {
  Fp F;
  i64 a, b;

  Elem identity() const { return {}; }
  Elem neg(const Elem& P) const { return P.empty() ? P : Elem{P[0], F.n(-P[1])}; }

  Elem add(const Elem& P, const Elem& Q) const {
    if (P.empty()) return Q;
    if (Q.empty()) return P;
    i64 lam;
    if (P[0] == Q[0]) {
      if (F.add(P[1], Q[1]) == 0) return {};
      lam = F.mul(F.add(F.mul(3, F.mul(P[0], P[0])), a), F.inv(F.mul(2, P[1])));
    } else {
      lam = F.mul(F.sub(Q[1], P[1]), F.inv(F.sub(Q[0], P[0])));
    }
    i64 x = F.sub(F.sub(F.mul(lam, lam), P[0]), Q[0]);
    i64 y = F.sub(F.mul(lam, F.sub(P[0], x)), P[1]);
    return {x, y};
  }

  std::vector<Elem> all() const {
    std::vector<Elem> out{{}};
    for (i64 x = 0; x < F.p; ++x)
      for (i64 y = 0; y < F.p; ++y)
        if (F.mul(y, y) == F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a, x)), b)) out.push_back({x, y});
    return out;
  }

  // [P - O] for every point P of the curve.
  std::vector<Elem> curve_classes() const { return all(); }

  bool parse(const nlohmann::json& j, Elem& out) const {
    if (j.is_string()) {
      out = {};
      return true;
    }
    if (!j.is_array()) throw std::invalid_argument("oracle: elliptic element must be [x, y]");
    // A point whose x has p in the denominator reduces to O.
    i64 x, y;
    if (!rat_mod(j[0], F.p, x)) {
      out = {};
      return true;
    }
    if (!rat_mod(j[1], F.p, y)) return false;
    out = {x, y};
    return true;
  }
};

// ---------------------------------------------------------------------------
// Genus-2 Jacobians y^2 = f(x), deg f = 5, via Cantor on plain coefficient vectors.
// Elements: {deg u, u_0, u_1, v_0, v_1} with unused slots zero.

using Pol = std::vector<i64>;

struct PolyOps {
  Fp F;
  void trim(Pol& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  Pol add(Pol a, const Pol& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    trim(a);
    return a;
  }
  Pol scale(Pol a, i64 s) const {
    for (auto& c : a) c = F.mul(c, s);
    trim(a);
    return a;
  }
  Pol sub(const Pol& a, const Pol& b) const { return add(a, scale(b, F.p - 1)); }
  Pol mul(const Pol& a, const Pol& b) const {
    if (a.empty() || b.empty()) return {};
    Pol r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    trim(r);
    return r;
  }
  void divmod(const Pol& a, const Pol& b, Pol& q, Pol& r) const {
    r = a;
    trim(r);
    q.clear();
    if (b.empty()) throw std::domain_error("oracle: division by zero polynomial");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    const i64 li = F.inv(b.back());
    while (!r.empty() && r.size() >= b.size()) {
      const size_t s = r.size() - b.size();
      const i64 c = F.mul(r.back(), li);
      q[s] = c;
      for (size_t i = 0; i < b.size(); ++i) r[s + i] = F.sub(r[s + i], F.mul(c, b[i]));
      trim(r);
    }
    trim(q);
  }
  Pol mod(const Pol& a, const Pol& b) const {
    Pol q, r;
    divmod(a, b, q, r);
    return r;
  }
  Pol div(const Pol& a, const Pol& b) const {
    Pol q, r;
    divmod(a, b, q, r);
    if (!r.empty()) throw std::logic_error("oracle: inexact division");
    return q;
  }
  Pol monic(const Pol& a) const { return a.empty() ? a : scale(a, F.inv(a.back())); }
  // g = s a + t b with g monic.
  Pol xgcd(const Pol& a, const Pol& b, Pol& s, Pol& t) const {
    Pol r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
      Pol q, r;
      divmod(r0, r1, q, r);
      Pol s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      r0 = r1;
      r1 = r;
      s0 = s1;
      s1 = s2;
      t0 = t1;
      t1 = t2;
    }
    if (r0.empty()) {
      s = {};
      t = {};
      return r0;
    }
    const i64 li = F.inv(r0.back());
    s = scale(s0, li);
    t = scale(t0, li);
    return scale(r0, li);
  }
  i64 eval(const Pol& a, i64 x) const {
    i64 r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
  }
};

struct Genus2 {
  Fp F;
  Pol f;

  PolyOps P() const { return PolyOps{F}; }

  Elem key(const Pol& u, const Pol& v) const {
    Elem e{static_cast<i64>(u.size()) - 1, 0, 0, 0, 0};
    for (size_t i = 0; i + 1 < u.size(); ++i) e[1 + i] = u[i];
    for (size_t i = 0; i < v.size(); ++i) e[3 + i] = v[i];
    return e;
  }
  void unkey(const Elem& e, Pol& u, Pol& v) const {
    const int d = static_cast<int>(e[0]);
    u.assign(e.begin() + 1, e.begin() + 1 + d);
    u.push_back(1);
    v.assign(e.begin() + 3, e.begin() + 3 + d);
    P().trim(v);
  }

  Elem identity() const { return {0, 0, 0, 0, 0}; }

  Elem neg(const Elem& e) const {
    Pol u, v;
    unkey(e, u, v);
    return key(u, P().scale(v, F.p - 1));
  }

  Elem add(const Elem& a, const Elem& b) const {
    const PolyOps O = P();
    Pol u1, v1, u2, v2;
    unkey(a, u1, v1);
    unkey(b, u2, v2);
    Pol e1, e2, c1, c2;
    Pol d1 = O.xgcd(u1, u2, e1, e2);
    Pol d = O.xgcd(d1, O.add(v1, v2), c1, c2);
    Pol s1 = O.mul(c1, e1), s2 = O.mul(c1, e2), s3 = c2;
    Pol u = O.div(O.mul(u1, u2), O.mul(d, d));
    Pol num = O.add(O.add(O.mul(O.mul(s1, u1), v2), O.mul(O.mul(s2, u2), v1)), O.mul(s3, O.add(O.mul(v1, v2), f)));
    Pol v = O.mod(O.div(num, d), u);
    while (u.size() > 3) {
      Pol un = O.monic(O.div(O.sub(f, O.mul(v, v)), u));
      v = O.mod(O.scale(v, F.p - 1), un);
      u = un;
    }
    u = O.monic(u);
    v = O.mod(v, u);
    return key(u, v);
  }

  // Every reduced pair (u, v) with u | v^2 - f, found by trying all of them.
  std::vector<Elem> all() const {
    const PolyOps O = P();
    std::vector<Elem> out{identity()};
    const i64 p = F.p;
    for (i64 u0 = 0; u0 < p; ++u0)
      for (i64 v0 = 0; v0 < p; ++v0)
        if (O.mod(O.sub(O.mul(Pol{v0}, Pol{v0}), f), Pol{u0, 1}).empty()) out.push_back(key({u0, 1}, O.add({}, Pol{v0})));
    for (i64 u0 = 0; u0 < p; ++u0)
      for (i64 u1 = 0; u1 < p; ++u1) {
        Pol u{u0, u1, 1};
        for (i64 v0 = 0; v0 < p; ++v0)
          for (i64 v1 = 0; v1 < p; ++v1) {
            Pol v = O.add({}, Pol{v0, v1});
            if (O.mod(O.sub(O.mul(v, v), f), u).empty()) out.push_back(key(u, v));
          }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Elem> curve_classes() const {
    std::vector<Elem> out{identity()};
    const PolyOps O = P();
    for (i64 x = 0; x < F.p; ++x)
      for (i64 y = 0; y < F.p; ++y)
        if (F.mul(y, y) == O.eval(f, x)) out.push_back(key({F.n(-x), 1}, O.add({}, Pol{y})));
    return out;
  }

  bool parse(const nlohmann::json& j, Elem& out) const {
    const PolyOps O = P();
    if (j.is_string()) {
      out = identity();
      return true;
    }
    if (j.is_array()) {
      i64 x, y;
      if (!rat_mod(j[0], F.p, x) || !rat_mod(j[1], F.p, y)) return false;
      out = key({F.n(-x), 1}, O.add({}, Pol{y}));
      return true;
    }
    Pol u, v;
    for (const auto& c : j.at("u")) {
      i64 r;
      if (!rat_mod(c, F.p, r)) return false;
      u.push_back(r);
    }
    for (const auto& c : j.at("v")) {
      i64 r;
      if (!rat_mod(c, F.p, r)) return false;
      v.push_back(r);
    }
    O.trim(u);
    O.trim(v);
    // Reduce through the group law so the pair is canonical.
    out = add(identity(), key(u, O.mod(v, u)));
    return true;
  }
};

template <class G>
Elem mul(const G& g, Elem x, i64 n) {
  if (n < 0) {
    x = g.neg(x);
    n = -n;
  }
  Elem r = g.identity();
  while (n) {
    if (n & 1) r = g.add(r, x);
    x = g.add(x, x);
    n >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sieve reference.

struct Generators {
  std::vector<nlohmann::json> free;
  std::vector<std::pair<nlohmann::json, i64>> torsion;
};

inline Generators generators(const nlohmann::json& basis) {
  Generators g;
  if (basis.contains("free"))
    for (const auto& x : basis.at("free")) g.free.push_back(x.at("point"));
  if (basis.contains("torsion"))
    for (const auto& x : basis.at("torsion")) g.torsion.emplace_back(x.at("point"), x.at("order").get<i64>());
  return g;
}

inline nlohmann::json base_element(const nlohmann::json& base) {
  if (base.is_string()) return base;
  if (base.contains("point")) return base.at("point");
  return base.at("class");
}

// W_p: tuples t with sum t_i g_i in image + B J(F_p), tested by brute force.
template <class G>
std::vector<Tuple> admissible(const G& g, const Generators& gens, const nlohmann::json& base, i64 B, bool zero_cycles) {
  std::vector<Elem> gen_elems;
  std::vector<std::uint32_t> radix;
  auto reduce = [&](const nlohmann::json& j) {
    Elem e;
    if (!g.parse(j, e)) throw std::runtime_error("oracle: generator does not reduce");
    return e;
  };
  for (const auto& x : gens.free) {
    gen_elems.push_back(reduce(x));
    radix.push_back(static_cast<std::uint32_t>(B));
  }
  for (const auto& [x, n] : gens.torsion) {
    gen_elems.push_back(reduce(x));
    radix.push_back(static_cast<std::uint32_t>(std::gcd(n, B)));
  }
  const Elem b0 = reduce(base);

  const auto group = g.all();
  std::set<Elem> bj;
  for (const auto& x : group) bj.insert(mul(g, x, B));
  std::vector<Elem> image;
  if (zero_cycles) {
    image = group;
  } else {
    for (const auto& c : g.curve_classes()) image.push_back(g.add(c, g.neg(b0)));
  }

  std::vector<Tuple> out;
  std::uint64_t total = 1;
  for (auto r : radix) total *= r;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Tuple t(radix.size());
    std::uint64_t rest = idx;
    for (size_t i = radix.size(); i-- > 0;) {
      t[i] = static_cast<std::uint32_t>(rest % radix[i]);
      rest /= radix[i];
    }
    Elem e = g.identity();
    for (size_t i = 0; i < t.size(); ++i) e = g.add(e, mul(g, gen_elems[i], t[i]));
    bool ok = false;
    for (const auto& m : image)
      if (bj.count(g.add(e, g.neg(m)))) {
        ok = true;
        break;
      }
    if (ok) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PrimeResult {
  i64 prime;
  i64 group_order;
  std::vector<Tuple> admissible;
};

struct SieveResult {
  std::vector<PrimeResult> steps;
  std::vector<Tuple> survivors;
};

// Runs the naive sieve on a configuration echo (curve, basis, base, modulus, primes, mode).
inline SieveResult sieve(const nlohmann::json& echo) {
  const auto& curve = echo.at("curve");
  const auto& coeffs = curve.at("coeffs");
  const i64 B = echo.at("modulus").get<i64>();
  const bool zc = echo.at("mode") == "zero_cycles";
  const Generators gens = generators(echo.at("basis"));
  const nlohmann::json base = base_element(echo.at("base"));
  SieveResult res;
  std::vector<Tuple> running;
  bool first = true;
  for (const auto& pj : echo.at("primes")) {
    const i64 p = pj.get<i64>();
    PrimeResult step{p, 0, {}};
    if (curve.at("type") == "elliptic") {
      Elliptic g{Fp{p}, int_mod(coeffs[0], p), int_mod(coeffs[1], p)};
      step.group_order = static_cast<i64>(g.all().size());
      step.admissible = admissible(g, gens, base, B, zc);
    } else {
      Pol f;
      for (const auto& c : coeffs) f.push_back(int_mod(c, p));
      PolyOps{Fp{p}}.trim(f);
      Genus2 g{Fp{p}, f};
      step.group_order = static_cast<i64>(g.all().size());
      step.admissible = admissible(g, gens, base, B, zc);
    }
    if (first) {
      running = step.admissible;
      first = false;
    } else {
      std::vector<Tuple> next;
      std::set_intersection(running.begin(), running.end(), step.admissible.begin(), step.admissible.end(),
                            std::back_inserter(next));
      running = next;
    }
    res.steps.push_back(std::move(step));
  }
  res.survivors = running;
  return res;
}

}  // namespace oracle
