#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zcs/local.hpp"
#include "zcs/search.hpp"

namespace zcs {

/// 2g - 2 for g >= 2; nothing for g <= 1.
inline std::optional<u64> canonical_index_bound(int g) {
  if (g < 0) fail(ErrorKind::ConfigError, "genus must be >= 0");
  if (g <= 1) return std::nullopt;
  return static_cast<u64>(2 * g - 2);
}

struct DegreeWitness {
  u64 degree = 0;
  std::string description;
};

struct StructuralDivisor {
  u64 value = 0;
  std::string rule;
};

struct IndexReport {
  std::string curve_kind;
  int genus = 0;
  u64 height_bound = 0;
  std::vector<DegreeWitness> witnesses;
  std::vector<StructuralDivisor> structural;
  /// gcd of witnessed degrees; divides the true index's multiples, bounds it from above.
  u64 upper_bound = 0;
  bool rational_point_found = false;
};

namespace detail {

inline std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factor(abs_big(n))) {
    const size_t sz = out.size();
    BigInt pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A rational root (x : y) of a binary form sum_i c_i x^i y^(d-i), if any.
inline std::optional<std::pair<BigInt, BigInt>> binary_form_rational_root(const std::vector<BigInt>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  if (c[d] == 0) return std::make_pair(BigInt(1), BigInt(0));
  if (c[0] == 0) return std::make_pair(BigInt(0), BigInt(1));
  for (const auto& r : divisors(c[0]))
    for (const auto& s : divisors(c[d]))
      for (int sign : {1, -1}) {
        BigInt acc = 0, rp = 1, sp = 1;
        std::vector<BigInt> spow(d + 1);
        for (int i = 0; i <= d; ++i) {
          spow[i] = sp;
          sp *= s;
        }
        const BigInt rr = sign * r;
        for (int i = 0; i <= d; ++i) {
          acc += c[i] * rp * spow[d - i];
          rp *= rr;
        }
        if (acc == 0 && gcd_big(r, s) == 1) return std::make_pair(rr, s);
      }
  return std::nullopt;
}

inline std::string triple_str(const std::array<BigInt, 3>& p) {
  return "(" + p[0].str() + " : " + p[1].str() + " : " + p[2].str() + ")";
}

}  // namespace detail

/// gcd of degrees of closed points found by a bounded search, plus structural divisors.
inline IndexReport index_upper_bound(const CurveModel& curve, u64 height_bound, unsigned threads = 1) {
  IndexReport out;
  out.curve_kind = curve_kind(curve);
  out.genus = genus(curve);
  out.height_bound = height_bound;
  if (auto b = canonical_index_bound(out.genus)) out.structural.push_back({*b, "canonical divisor, I | 2g - 2"});

  auto search = search_rational_points(curve, height_bound, threads, 1);
  if (!search.points.empty()) {
    out.rational_point_found = true;
    out.witnesses.push_back({1, "rational point " + detail::triple_str(search.points.front())});
  }

  if (auto* h = std::get_if<HyperellipticCurve>(&curve)) {
    out.structural.push_back({2, "fibers of the degree-2 map x"});
    // A rational x with f(x) not a square gives a quadratic point.
    for (long long x = 0;; x = x > 0 ? -x : 1 - x) {
      BigInt v = 0, xp = 1;
      for (const auto& c : h->f) {
        v += c * xp;
        xp *= x;
      }
      if (v != 0 && !is_square(v)) {
        out.witnesses.push_back({2, "x = " + std::to_string(x) + ", y^2 = " + v.str()});
        break;
      }
      if (std::abs(x) > 1000) break;
    }
  } else if (auto* k = std::get_if<Conic>(&curve)) {
    out.structural.push_back({2, "section by a rational line"});
    out.witnesses.push_back({2, "section by the line z = 0: " + k->orig_a.str() + " x^2 + " + k->orig_b.str() + " y^2 = 0"});
  } else if (auto* cubic = std::get_if<PlaneCubic>(&curve)) {
    out.structural.push_back({3, "section by a rational line (Bezout)"});
    // Restriction to z = 0: binary cubic with coefficients of y^3, x y^2, x^2 y, x^3.
    std::vector<BigInt> g{cubic->coeffs[6], cubic->coeffs[3], cubic->coeffs[1], cubic->coeffs[0]};
    if (auto root = detail::binary_form_rational_root(g)) {
      out.witnesses.push_back({1, "rational point (" + root->first.str() + " : " + root->second.str() + " : 0)"});
    } else {
      out.witnesses.push_back({3, "section by the line z = 0 (irreducible binary cubic)"});
    }
  } else {
    out.witnesses.push_back({1, "point at infinity (0 : 1 : 0)"});
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(),
            [](const DegreeWitness& a, const DegreeWitness& b) { return a.degree < b.degree; });
  u64 g = 0;
  for (const auto& w : out.witnesses) g = std::gcd(g, w.degree);
  out.upper_bound = g;
  return out;
}

// ---------------------------------------------------------------------------
// Period/index relations.

struct Claim {
  std::string id;
  std::string statement;
  /// "proven-at-desk-scale", "conditional", or "informational".
  std::string status;
  std::string rule;
};

struct PeriodIndexRelation {
  std::vector<Claim> claims;
  /// Exact values, only when determined (the index is never asserted unless it is 1).
  std::optional<u64> index;
  std::optional<u64> period;
  u64 index_upper_bound = 0;
};

struct ConicDecision {
  bool soluble = false;
  /// Primitive solution of the original equation a x^2 + b y^2 = c z^2.
  std::optional<std::array<BigInt, 3>> witness;
  /// Hilbert symbols (ac, bc)_v on the normalized coefficients, real place first.
  std::vector<std::pair<Place, int>> symbols;
  /// Every place where the symbol is -1 (an even number of them).
  std::vector<Place> obstructions;
  u64 search_bound = 0;
};

/// Hasse principle for conics: Hilbert symbols at the real place and p | 2abc, then a bounded witness search.
inline ConicDecision conic_has_rational_point(const BigInt& a, const BigInt& b, const BigInt& c) {
  const Conic k = Conic::make(a, b, c);
  ConicDecision out;
  std::vector<Place> places{Place::real()};
  for (u64 p : prime_divisors_u64(2 * k.a * k.b * k.c)) places.push_back(Place::prime(p));
  const Rational ac(k.a * k.c), bc(k.b * k.c);
  out.soluble = true;
  for (const auto& v : places) {
    const int s = hilbert_symbol(ac, bc, v);
    out.symbols.emplace_back(v, s);
    if (s == -1) {
      out.soluble = false;
      out.obstructions.push_back(v);
    }
  }
  if (!out.soluble) return out;
  // Legendre/Holzer: a solution exists with |x| <= sqrt|bc|, |y| <= sqrt|ac|.
  BigInt bx = isqrt(abs_big(k.b * k.c)) + 1, by = isqrt(abs_big(k.a * k.c)) + 1;
  for (int round = 0; round < 8 && !out.witness; ++round, bx *= 2, by *= 2) {
    if (bx > 1'000'000 || by > 1'000'000) break;
    out.search_bound = static_cast<u64>(std::max(bx, by));
    for (BigInt x = 0; x <= bx && !out.witness; ++x)
      for (BigInt y = 0; y <= by; ++y) {
        if (x == 0 && y == 0) continue;
        BigInt num = k.a * x * x + k.b * y * y;
        if (num % k.c != 0) continue;
        BigInt z;
        if (is_square(num / k.c, &z)) {
          out.witness = k.to_original({x, y, z});
          break;
        }
      }
  }
  if (!out.witness) fail(ErrorKind::PrecisionExhausted, "conic witness search bound exhausted");
  return out;
}

inline PeriodIndexRelation period_report(const CurveModel& curve, const ElsReport& local, const IndexReport& index) {
  PeriodIndexRelation out;
  out.index_upper_bound = index.upper_bound;
  const int g = genus(curve);
  if (index.upper_bound == 1) {
    out.index = 1;
    out.period = 1;
  }

  if (std::holds_alternative<Conic>(curve)) {
    const auto& k = std::get<Conic>(curve);
    auto d = conic_has_rational_point(k.orig_a, k.orig_b, k.orig_c);
    out.index = d.soluble ? 1 : 2;
    out.period = out.index;
    out.claims.push_back({"conic-index", "period = index, each 1 or 2; equals 1 iff a rational point exists: I = P = " +
                                             std::to_string(*out.index),
                          "proven-at-desk-scale", "conic: index 1 or 2, 1 exactly when a rational point exists"});
    out.claims.push_back({"conic-generic-period", "generic period equals the index for conics (P_U = I)",
                          "informational", "conic with a removed point: the generic period equals the index"});
    return out;
  }

  if (local.soluble) {
    out.claims.push_back({"index-equals-period", "I = P (degree-1 zero-cycles exist at every place)",
                          "proven-at-desk-scale", "index equals period for a locally soluble curve"});
  }
  const int d = g;  // dimension of the Jacobian
  std::string pip = "P | I | P^" + std::to_string(2 * d);
  if (out.index) pip += "; determined: I = P = 1";
  out.claims.push_back({"period-index-divisibility", pip, "informational",
                        "P | I | P^(2d) with d the dimension of the Jacobian"});

  if (g == 1 && local.soluble && std::holds_alternative<PlaneCubic>(curve)) {
    out.claims.push_back({"cubic-index-divides-3", "P = I divides 3", "proven-at-desk-scale",
                          "index equals period, and a line section has degree 3"});
    if (!index.rational_point_found && index.upper_bound == 3) {
      out.claims.push_back({"cubic-index-value",
                            "consistent with I = P = 3 (no rational point up to height " +
                                std::to_string(index.height_bound) + ")",
                            "conditional", "exact value not asserted without a global obstruction"});
    }
  }
  if (out.index) {
    out.claims.push_back({"pointed", "I = P = 1 (a closed point of degree 1 was found)", "proven-at-desk-scale",
                          "a rational point has degree 1"});
  }
  if (auto b = canonical_index_bound(g)) {
    const bool divides = *b % index.upper_bound == 0;
    out.claims.push_back({"canonical-bound",
                          "I | " + std::to_string(*b) + (divides ? " (upper bound " : " (upper bound does not divide; ") +
                              std::to_string(index.upper_bound) + ")",
                          "proven-at-desk-scale", "canonical divisor, I | 2g - 2"});
  }
  return out;
}

struct ShaCorollary {
  bool conclusion = false;
  std::string claim;
  std::string status = "conditional";
  std::vector<u64> required_primes;
  std::vector<u64> missing_primes;
};

/// With Sha[p] = 0 for every p | 2g - 2 and local solubility everywhere, a rational 0-cycle of degree 1 exists.
inline ShaCorollary sha_corollary_report(int g, bool locally_soluble, const std::set<u64>& sha_zero_primes) {
  if (g < 2) fail(ErrorKind::HypothesisUnmet, "the corollary needs genus >= 2");
  if (!locally_soluble) fail(ErrorKind::HypothesisUnmet, "the curve is not everywhere locally soluble");
  ShaCorollary out;
  out.required_primes = prime_divisors_u64(BigInt(2 * g - 2));
  for (u64 p : out.required_primes)
    if (!sha_zero_primes.count(p)) out.missing_primes.push_back(p);
  out.conclusion = out.missing_primes.empty();
  if (out.conclusion) {
    out.claim = "rational 0-cycle of degree 1 exists (conditional): I = 1";
  } else {
    std::string m;
    for (u64 p : out.missing_primes) m += (m.empty() ? "" : ", ") + std::to_string(p);
    out.claim = "not established: no Sha[p] = 0 assumption for p in {" + m + "}";
  }
  return out;
}

}  // namespace zcs
