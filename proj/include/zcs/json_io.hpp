#pragma once

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "zcs/jacobian.hpp"

namespace zcs {

using json = nlohmann::json;

/// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
inline json big_to_json(const BigInt& v) {
  if (v >= BigInt(std::numeric_limits<long long>::min()) && v <= BigInt(std::numeric_limits<long long>::max()))
    return static_cast<long long>(v);
  return v.str();
}

inline BigInt json_to_big(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return BigInt(s);
  }
  fail(ErrorKind::ParseError, where + ": expected an integer");
}

inline u64 json_to_u64(const json& j, const std::string& where) {
  BigInt v = json_to_big(j, where);
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max()))
    fail(ErrorKind::ConfigError, where + ": expected a non-negative 32-bit integer");
  return static_cast<u64>(v);
}

/// Rationals are integers or [num, den] pairs.
inline Rational json_to_rational(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) fail(ErrorKind::ParseError, where + ": rational must be [num, den]");
    BigInt d = json_to_big(j[1], where);
    if (d == 0) fail(ErrorKind::ParseError, where + ": zero denominator");
    return Rational(json_to_big(j[0], where), d);
  }
  return Rational(json_to_big(j, where));
}

inline json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) return big_to_json(numerator(q));
  return json::array({big_to_json(numerator(q)), big_to_json(denominator(q))});
}

inline void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::ParseError, where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(ErrorKind::ConfigError, where + ": unknown key \"" + it.key() + "\"");
}

inline const json& require_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(ErrorKind::ParseError, where + ": missing \"" + key + "\"");
  return j.at(key);
}

// ---------------------------------------------------------------------------
// Curves.

inline CurveModel parse_curve(const json& j) {
  require_keys(j, {"type", "coeffs"}, "curve");
  const json& t = require_field(j, "type", "curve");
  const json& cs = require_field(j, "coeffs", "curve");
  if (!t.is_string()) fail(ErrorKind::ParseError, "curve.type: expected a string");
  if (!cs.is_array()) fail(ErrorKind::ParseError, "curve.coeffs: expected an array");
  std::vector<BigInt> c;
  for (size_t i = 0; i < cs.size(); ++i) c.push_back(json_to_big(cs[i], "curve.coeffs[" + std::to_string(i) + "]"));
  const std::string type = t.get<std::string>();
  auto need = [&](size_t n) {
    if (c.size() != n)
      fail(ErrorKind::ParseError, "curve.coeffs: " + type + " needs " + std::to_string(n) + " coefficients");
  };
  if (type == "conic") {
    need(3);
    return Conic::make(c[0], c[1], c[2]);
  }
  if (type == "elliptic") {
    need(2);
    return EllipticCurve::make(c[0], c[1]);
  }
  if (type == "hyperelliptic") {
    if (c.size() < 6 || c.size() > 7) fail(ErrorKind::ParseError, "curve.coeffs: hyperelliptic needs 6 or 7 coefficients");
    return HyperellipticCurve::make(c);
  }
  if (type == "plane_cubic") {
    need(10);
    std::array<BigInt, 10> a;
    std::copy(c.begin(), c.end(), a.begin());
    return PlaneCubic::make(a);
  }
  fail(ErrorKind::ParseError, "curve.type: unknown type \"" + type + "\"");
}

inline json curve_to_json(const CurveModel& curve) {
  json c = json::array();
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Conic>) {
          for (const auto* v : {&k.orig_a, &k.orig_b, &k.orig_c}) c.push_back(big_to_json(*v));
        } else if constexpr (std::is_same_v<T, EllipticCurve>) {
          c.push_back(big_to_json(k.a));
          c.push_back(big_to_json(k.b));
        } else if constexpr (std::is_same_v<T, HyperellipticCurve>) {
          for (const auto& v : k.f) c.push_back(big_to_json(v));
        } else {
          for (const auto& v : k.coeffs) c.push_back(big_to_json(v));
        }
      },
      curve);
  return {{"type", curve_kind(curve)}, {"coeffs", c}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline CurveModel parse_curve_file(const std::string& path) { return parse_curve(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Jacobian elements and bases.

/// "infinity" (identity), [x, y] (a point, or [P - infinity] in genus 2), or {"u": [...], "v": [...]}.
inline JacobianElementQ parse_element(const json& j, const CurveModel& curve, const std::string& where) {
  RationalJacobian jac(curve);
  if (j.is_string()) {
    if (j.get<std::string>() != "infinity") fail(ErrorKind::ParseError, where + ": unknown point keyword");
    return jac.identity();
  }
  if (j.is_array()) {
    if (j.size() != 2) fail(ErrorKind::ParseError, where + ": point must be [x, y]");
    return jac.point_class(json_to_rational(j[0], where + "[0]"), json_to_rational(j[1], where + "[1]"));
  }
  if (j.is_object()) {
    require_keys(j, {"u", "v"}, where);
    if (jac.is_elliptic()) fail(ErrorKind::ParseError, where + ": Mumford pair given for an elliptic curve");
    auto poly = [&](const char* key) {
      const json& a = require_field(j, key, where);
      if (!a.is_array()) fail(ErrorKind::ParseError, where + "." + key + ": expected an array");
      std::vector<Rational> c;
      for (size_t i = 0; i < a.size(); ++i) c.push_back(json_to_rational(a[i], where + "." + key));
      return Poly<Rational>(Rational(0), std::move(c));
    };
    JacobianElementQ d = RationalDivisor{poly("u"), poly("v")};
    jac.require(d, where);
    return d;
  }
  fail(ErrorKind::ParseError, where + ": unrecognized point format");
}

inline json element_to_json(const JacobianElementQ& e) {
  if (auto* p = std::get_if<RationalECPoint>(&e)) {
    if (p->infinity) return "infinity";
    return json::array({rational_to_json(p->x), rational_to_json(p->y)});
  }
  const auto& d = std::get<RationalDivisor>(e);
  json u = json::array(), v = json::array();
  for (const auto& c : d.u.coeffs()) u.push_back(rational_to_json(c));
  for (const auto& c : d.v.coeffs()) v.push_back(rational_to_json(c));
  return {{"u", u}, {"v", v}};
}

inline MordellWeilBasis parse_basis(const json& j, const CurveModel& curve) {
  require_keys(j, {"torsion", "free", "provenance"}, "basis");
  MordellWeilBasis b;
  if (j.contains("torsion")) {
    const json& t = j.at("torsion");
    if (!t.is_array()) fail(ErrorKind::ParseError, "basis.torsion: expected an array");
    for (size_t i = 0; i < t.size(); ++i) {
      const std::string w = "basis.torsion[" + std::to_string(i) + "]";
      require_keys(t[i], {"point", "order"}, w);
      TorsionGenerator g;
      g.element = parse_element(require_field(t[i], "point", w), curve, w + ".point");
      g.order = json_to_u64(require_field(t[i], "order", w), w + ".order");
      b.torsion.push_back(std::move(g));
    }
  }
  if (j.contains("free")) {
    const json& f = j.at("free");
    if (!f.is_array()) fail(ErrorKind::ParseError, "basis.free: expected an array");
    for (size_t i = 0; i < f.size(); ++i) {
      const std::string w = "basis.free[" + std::to_string(i) + "]";
      require_keys(f[i], {"point"}, w);
      b.free.push_back(parse_element(require_field(f[i], "point", w), curve, w + ".point"));
    }
  }
  if (j.contains("provenance")) {
    if (!j.at("provenance").is_string()) fail(ErrorKind::ParseError, "basis.provenance: expected a string");
    b.provenance = j.at("provenance").get<std::string>();
  }
  b.validate(curve);
  return b;
}

inline json basis_to_json(const MordellWeilBasis& b) {
  json t = json::array(), f = json::array();
  for (const auto& g : b.torsion) t.push_back({{"point", element_to_json(g.element)}, {"order", g.order}});
  for (const auto& g : b.free) f.push_back({{"point", element_to_json(g)}});
  return {{"torsion", t}, {"free", f}, {"provenance", b.provenance}};
}

}  // namespace zcs
