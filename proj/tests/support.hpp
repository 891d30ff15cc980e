#pragma once

#include <random>
#include <string>

#include "zcs/zcs.hpp"

namespace zcs::test {

inline std::string fixture(const std::string& name) { return std::string(ZCS_FIXTURE_DIR) + "/" + name; }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline CurveModel elliptic(long long a, long long b) { return EllipticCurve::make(a, b); }

inline CurveModel hyperelliptic(std::initializer_list<long long> f) {
  IntPoly c;
  for (long long x : f) c.push_back(x);
  return HyperellipticCurve::make(c);
}

inline CurveModel selmer() { return PlaneCubic::make({3, 0, 0, 0, 0, 0, 4, 0, 0, 5}); }

/// Sieve configurations with known rational points.
inline const std::vector<std::string>& pointed_fixtures() {
  static const std::vector<std::string> f{"ell_x3m2.json", "ell_x3p1.json", "g2_x5p1.json", "g2_two_torsion.json",
                                          "g2_case.json"};
  return f;
}

inline SieveConfig load_config(const std::string& name) { return parse_sieve_config(read_json_file(fixture(name))); }

}  // namespace zcs::test
