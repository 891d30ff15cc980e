#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zcs/coset.hpp"
#include "zcs/hash.hpp"
#include "zcs/jacobian.hpp"
#include "zcs/json_io.hpp"
#include "zcs/parallel.hpp"

namespace zcs {

enum class SieveMode { Points, ZeroCycles };

inline std::string to_string(SieveMode m) { return m == SieveMode::Points ? "points" : "zero_cycles"; }

/// A rational point of the curve together with its expression in the basis:
/// [P - base] = sum a_i G_i + sum b_j T_j.
struct KnownPoint {
  json point;
  std::vector<long long> coefficients;
};

struct SieveConfig {
  CurveModel curve = EllipticCurve{0, 1};
  MordellWeilBasis basis;
  /// Class [D0 - infinity] of the degree-1 base divisor D0.
  JacobianElementQ base_offset;
  json base_json = "infinity";
  u64 modulus = 12;
  std::vector<u64> primes;
  std::size_t prime_count = 8;
  SieveMode mode = SieveMode::Points;
  std::vector<KnownPoint> known_points;
};

inline constexpr u64 kMaxPrimeGenus1 = 199;
inline constexpr u64 kMaxPrimeGenus2 = 61;
inline constexpr u64 kMaxModulus = 10000;

inline const std::vector<std::string>& sieve_assumptions() {
  static const std::vector<std::string> a{
      "the supplied basis generates the Mordell-Weil group (independence and saturation not verified)",
      "the Tate-Shafarevich group of the Jacobian is finite",
      "only good primes constrain; the real place is not used"};
  return a;
}

namespace detail {

inline void require_jacobian_model(const CurveModel& curve) {
  if (std::holds_alternative<PlaneCubic>(curve) || std::holds_alternative<Conic>(curve))
    fail(ErrorKind::EmbeddingUnavailable,
         curve_kind(curve) + ": no rational degree-1 class is available to embed the curve in its Jacobian");
  if (auto* h = std::get_if<HyperellipticCurve>(&curve); h && h->degree() != 5)
    fail(ErrorKind::Unsupported, "sieving needs a degree-5 hyperelliptic model");
}

inline JacobianElementQ parse_base(const json& j, const CurveModel& curve) {
  RationalJacobian jac(curve);
  if (j.is_string()) {
    if (j.get<std::string>() != "infinity") fail(ErrorKind::ParseError, "base: expected \"infinity\"");
    return jac.identity();
  }
  require_keys(j, {"point", "class"}, "base");
  if (j.contains("point") == j.contains("class")) fail(ErrorKind::ParseError, "base: give exactly one of point, class");
  if (j.contains("point")) {
    const json& p = j.at("point");
    if (!p.is_array()) fail(ErrorKind::ParseError, "base.point: expected [x, y]");
    return parse_element(p, curve, "base.point");
  }
  return parse_element(j.at("class"), curve, "base.class");
}

}  // namespace detail

inline std::vector<u32> torsion_shape(const SieveConfig& cfg) {
  std::vector<u32> t;
  for (const auto& g : cfg.basis.torsion) t.push_back(static_cast<u32>(std::gcd(g.order, cfg.modulus)));
  return t;
}

inline CosetLattice empty_lattice(const SieveConfig& cfg) {
  return CosetLattice(static_cast<int>(cfg.basis.free.size()), static_cast<u32>(cfg.modulus), torsion_shape(cfg));
}

/// Why p cannot be a sieve prime for this configuration, or nullopt when it can.
inline std::optional<std::string> inadmissibility(const SieveConfig& cfg, u64 p) {
  if (!is_prime(p)) return "not prime";
  if (p < 5) return "primes below 5 are excluded";
  const u64 cap = genus(cfg.curve) == 1 ? kMaxPrimeGenus1 : kMaxPrimeGenus2;
  if (p > cap) return "exceeds the enumeration cap " + std::to_string(cap);
  if (!reduction_type(cfg.curve, p).good) return "bad reduction";
  if (cfg.modulus % p == 0) return "divides the modulus";
  for (const auto& t : cfg.basis.torsion)
    if (t.order % p == 0) return "divides a torsion order";
  auto reducible = [&](const JacobianElementQ& e) {
    if (auto* ec = std::get_if<EllipticCurve>(&cfg.curve)) return EllipticFp(*ec, p).reducible(e);
    return Genus2Fp(std::get<HyperellipticCurve>(cfg.curve), p).reducible(e);
  };
  for (const auto& t : cfg.basis.torsion)
    if (!reducible(t.element)) return "basis not integral";
  for (const auto& g : cfg.basis.free)
    if (!reducible(g)) return "basis not integral";
  if (!reducible(cfg.base_offset)) return "base not integral";
  return std::nullopt;
}

/// Explicit primes are checked and sorted; otherwise the first prime_count admissible primes >= 5.
inline std::vector<u64> resolve_primes(const SieveConfig& cfg) {
  std::vector<u64> out;
  if (!cfg.primes.empty()) {
    for (u64 p : cfg.primes)
      if (auto why = inadmissibility(cfg, p))
        fail(ErrorKind::ConfigError, "prime " + std::to_string(p) + " is not admissible: " + *why);
    out = cfg.primes;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const u64 cap = genus(cfg.curve) == 1 ? kMaxPrimeGenus1 : kMaxPrimeGenus2;
  for (u64 p = 5; p <= cap && out.size() < cfg.prime_count; p = next_prime(p + 1))
    if (!inadmissibility(cfg, p)) out.push_back(p);
  if (out.empty()) fail(ErrorKind::NoAdmissiblePrimes, "no admissible primes below the enumeration cap");
  return out;
}

/// Parses a sieve configuration. Unknown keys are rejected.
inline SieveConfig parse_sieve_config(const json& j) {
  require_keys(j, {"curve", "basis", "base", "modulus", "primes", "prime_count", "mode", "known_points"}, "config");
  SieveConfig cfg;
  cfg.curve = parse_curve(require_field(j, "curve", "config"));
  if (j.contains("mode")) {
    const json& m = j.at("mode");
    if (m == "points") cfg.mode = SieveMode::Points;
    else if (m == "zero_cycles") cfg.mode = SieveMode::ZeroCycles;
    else fail(ErrorKind::ParseError, "config.mode: expected points or zero_cycles");
  }
  detail::require_jacobian_model(cfg.curve);
  cfg.basis = parse_basis(require_field(j, "basis", "config"), cfg.curve);
  if (j.contains("base")) cfg.base_json = j.at("base");
  cfg.base_offset = detail::parse_base(cfg.base_json, cfg.curve);
  if (j.contains("modulus")) cfg.modulus = json_to_u64(j.at("modulus"), "config.modulus");
  if (cfg.modulus < 1 || cfg.modulus > kMaxModulus) fail(ErrorKind::ConfigError, "config.modulus must be in [1, 10000]");
  if (j.contains("primes")) {
    const json& ps = j.at("primes");
    if (!ps.is_array()) fail(ErrorKind::ParseError, "config.primes: expected an array");
    for (size_t i = 0; i < ps.size(); ++i) cfg.primes.push_back(json_to_u64(ps[i], "config.primes"));
  }
  if (j.contains("prime_count")) {
    cfg.prime_count = json_to_u64(j.at("prime_count"), "config.prime_count");
    if (cfg.prime_count < 1 || cfg.prime_count > 64) fail(ErrorKind::ConfigError, "config.prime_count must be in [1, 64]");
  }
  if (j.contains("known_points")) {
    const json& kp = j.at("known_points");
    if (!kp.is_array()) fail(ErrorKind::ParseError, "config.known_points: expected an array");
    for (size_t i = 0; i < kp.size(); ++i) {
      const std::string w = "config.known_points[" + std::to_string(i) + "]";
      require_keys(kp[i], {"point", "coefficients"}, w);
      KnownPoint k;
      k.point = require_field(kp[i], "point", w);
      for (const auto& c : require_field(kp[i], "coefficients", w)) {
        if (!c.is_number_integer()) fail(ErrorKind::ParseError, w + ".coefficients: expected integers");
        k.coefficients.push_back(c.get<long long>());
      }
      cfg.known_points.push_back(std::move(k));
    }
  }
  (void)empty_lattice(cfg);
  return cfg;
}

/// Canonical echo of the resolved configuration; its SHA-256 is the certificate's input hash.
inline json config_echo(const SieveConfig& cfg, const std::vector<u64>& primes) {
  return {{"curve", curve_to_json(cfg.curve)},
          {"basis", basis_to_json(cfg.basis)},
          {"base", cfg.base_json},
          {"modulus", cfg.modulus},
          {"primes", primes},
          {"mode", to_string(cfg.mode)}};
}

inline std::string input_hash(const json& echo) { return sha256_hex(echo.dump()); }

// ---------------------------------------------------------------------------
// Per-prime computation.

struct PrimeStep {
  u64 prime = 0;
  u64 jacobian_order = 0;
  u64 image_size = 0;
  u64 quotient_size = 0;
  CosetLattice admissible;
  CosetLattice running;
};

namespace detail {

template <class Ops>
PrimeStep compute_step(const SieveConfig& cfg, Ops ops) {
  using u32i = std::uint32_t;
  const u64 p = ops.field().p();
  FiniteJacobian<Ops> J(std::move(ops));
  const Ops& o = J.ops();
  QuotientMap<Ops> qm(J, cfg.modulus);
  const size_t n = J.order();

  // Image of C(F_p) under P -> [P - D0]; in zero_cycles mode all of J(F_p).
  std::vector<char> image(n, 0);
  if (cfg.mode == SieveMode::ZeroCycles) {
    std::fill(image.begin(), image.end(), 1);
  } else {
    const auto off = o.neg(o.reduce(cfg.base_offset));
    for (const auto& c : o.point_classes()) image[J.index_of(o.add(c, off))] = 1;
  }
  std::vector<char> label_hit(n, 0);
  u64 image_size = 0;
  for (u32i i = 0; i < n; ++i)
    if (image[i]) {
      ++image_size;
      label_hit[qm.label(i)] = 1;
    }

  CosetLattice lattice = empty_lattice(cfg);
  const auto& radices = lattice.radices();
  std::vector<u32i> gens;
  for (const auto& g : cfg.basis.free) gens.push_back(J.index_of(o.reduce(g)));
  for (const auto& t : cfg.basis.torsion) gens.push_back(J.index_of(o.reduce(t.element)));
  // multiples[i][a] = index of a * gen_i
  std::vector<std::vector<u32i>> multiples(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    multiples[i].push_back(J.index_of(o.identity()));
    for (u32 a = 1; a < radices[i]; ++a) multiples[i].push_back(J.add(multiples[i].back(), gens[i]));
  }

  std::vector<std::uint64_t> members;
  const size_t depth = gens.size();
  // Iterative lexicographic walk so that indices come out ascending.
  std::vector<u32> digit(depth, 0);
  std::vector<u32i> partial(depth + 1);
  partial[0] = J.index_of(o.identity());
  for (size_t i = 0; i < depth; ++i) partial[i + 1] = J.add(partial[i], multiples[i][0]);
  for (std::uint64_t idx = 0;; ++idx) {
    if (label_hit[qm.label(partial[depth])]) members.push_back(idx);
    size_t i = depth;
    while (i > 0 && digit[i - 1] + 1 == radices[i - 1]) --i;
    if (i == 0) break;
    ++digit[i - 1];
    for (size_t k = i; k < depth; ++k) digit[k] = 0;
    for (size_t k = i - 1; k < depth; ++k) partial[k + 1] = J.add(partial[k], multiples[k][digit[k]]);
  }
  lattice.assign_indices(std::move(members));

  PrimeStep s;
  s.prime = p;
  s.jacobian_order = n;
  s.image_size = image_size;
  s.quotient_size = qm.label_count();
  s.admissible = std::move(lattice);
  return s;
}

}  // namespace detail

/// W_p: cosets of A(Q)/B A(Q) whose reduction meets the image of C(F_p) modulo B J(F_p).
inline PrimeStep admissible_step(const SieveConfig& cfg, u64 p) {
  if (auto why = inadmissibility(cfg, p))
    fail(ErrorKind::ConfigError, "prime " + std::to_string(p) + " is not admissible: " + *why);
  if (auto* e = std::get_if<EllipticCurve>(&cfg.curve)) return detail::compute_step(cfg, EllipticFp(*e, p));
  return detail::compute_step(cfg, Genus2Fp(std::get<HyperellipticCurve>(cfg.curve), p));
}

inline CosetLattice admissible_cosets(const SieveConfig& cfg, u64 p) { return admissible_step(cfg, p).admissible; }

struct SieveCertificate {
  json config;
  std::string input_hash;
  std::vector<PrimeStep> steps;
  CosetLattice survivors;

  bool empty() const { return survivors.empty(); }
};

inline json tuples_json(const CosetLattice& l) {
  json a = json::array();
  for (const auto& t : l.tuples()) a.push_back(t);
  return a;
}

inline json certificate_to_json(const SieveCertificate& c) {
  const CosetLattice& shape = c.survivors;
  json steps = json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"prime", s.prime},
                     {"jacobian_order", s.jacobian_order},
                     {"image_size", s.image_size},
                     {"quotient_size", s.quotient_size},
                     {"admissible_count", s.admissible.size()},
                     {"admissible", tuples_json(s.admissible)},
                     {"running_count", s.running.size()},
                     {"running", tuples_json(s.running)}});
  return {{"kind", "zcs-sieve-certificate"},
          {"version", 1},
          {"input_hash", c.input_hash},
          {"config", c.config},
          {"assumptions", sieve_assumptions()},
          {"lattice", {{"rank", shape.rank()}, {"modulus", shape.modulus()}, {"torsion_shape", shape.torsion_shape()}}},
          {"steps", steps},
          {"verdict",
           {{"status", c.empty() ? "empty" : "survivors"},
            {"survivor_count", c.survivors.size()},
            {"survivors", tuples_json(c.survivors)}}}};
}

/// Computes W_p for the given primes (in parallel) and intersects them in the given order.
inline SieveCertificate run_in_order(const SieveConfig& cfg, const std::vector<u64>& order,
                                     const std::vector<u64>& echo_primes, unsigned threads) {
  SieveCertificate cert;
  cert.config = config_echo(cfg, echo_primes);
  cert.input_hash = input_hash(cert.config);
  cert.steps.resize(order.size());
  parallel_for(order.size(), threads, [&](size_t i) { cert.steps[i] = admissible_step(cfg, order[i]); });
  CosetLattice running = CosetLattice::full(static_cast<int>(cfg.basis.free.size()), static_cast<u32>(cfg.modulus),
                                            torsion_shape(cfg));
  for (auto& s : cert.steps) {
    running = intersect_cosets({running, s.admissible});
    s.running = running;
  }
  cert.survivors = running;
  return cert;
}

/// The sieve: primes in ascending order, every prime processed, deterministic for any thread count.
inline SieveCertificate sieve_run(const SieveConfig& cfg, unsigned threads = 1) {
  detail::require_jacobian_model(cfg.curve);
  const auto primes = resolve_primes(cfg);
  return run_in_order(cfg, primes, primes, threads);
}

struct VerifyResult {
  bool ok = false;
  std::string mismatch;
};

namespace detail {

inline std::string first_difference(const json& want, const json& got, const std::string& path) {
  if (want.is_number() && got.is_number()) return want == got ? "" : (path.empty() ? "/" : path);
  if (want.type() != got.type()) return path.empty() ? "/" : path;
  if (want.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) return path + "/" + it.key();
      auto d = first_difference(it.value(), got.at(it.key()), path + "/" + it.key());
      if (!d.empty()) return d;
    }
    for (auto it = got.begin(); it != got.end(); ++it)
      if (!want.contains(it.key())) return path + "/" + it.key();
    return "";
  }
  if (want.is_array()) {
    for (size_t i = 0; i < std::min(want.size(), got.size()); ++i) {
      auto d = first_difference(want[i], got[i], path + "/" + std::to_string(i));
      if (!d.empty()) return d;
    }
    if (want.size() != got.size()) return path + "/" + std::to_string(std::min(want.size(), got.size()));
    return "";
  }
  return want == got ? "" : (path.empty() ? "/" : path);
}

}  // namespace detail

/// Recomputes every W_p from the echoed configuration, replays the intersections in the
/// recorded order, and compares the whole certificate. Never throws.
inline VerifyResult verify_certificate(const json& cert, unsigned threads = 1) {
  try {
    if (!cert.is_object() || !cert.contains("config") || !cert.contains("steps") || !cert.contains("input_hash"))
      return {false, "/"};
    const json& echo = cert.at("config");
    if (!cert.at("input_hash").is_string() || cert.at("input_hash").get<std::string>() != input_hash(echo))
      return {false, "/input_hash"};
    SieveConfig cfg = parse_sieve_config(echo);
    const auto primes = resolve_primes(cfg);
    if (primes.empty() || echo.at("primes") != json(primes)) return {false, "/config/primes"};
    if (config_echo(cfg, primes) != echo) return {false, "/config"};
    const json& steps = cert.at("steps");
    if (!steps.is_array() || steps.size() != primes.size()) return {false, "/steps"};
    std::vector<u64> order;
    for (size_t i = 0; i < steps.size(); ++i) {
      if (!steps[i].is_object() || !steps[i].contains("prime") || !steps[i].at("prime").is_number_unsigned())
        return {false, "/steps/" + std::to_string(i) + "/prime"};
      order.push_back(steps[i].at("prime").get<u64>());
    }
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != primes) return {false, "/steps"};
    const json expected = certificate_to_json(run_in_order(cfg, order, primes, threads));
    auto diff = detail::first_difference(expected, cert, "");
    if (!diff.empty()) return {false, diff};
    return {true, ""};
  } catch (const std::exception& e) {
    return {false, std::string("/ (") + e.what() + ")"};
  }
}

// ---------------------------------------------------------------------------
// Known points.

/// The rational class [P - D0] for a curve point given as JSON.
inline JacobianElementQ known_point_class(const SieveConfig& cfg, const json& point) {
  RationalJacobian jac(cfg.curve);
  JacobianElementQ p = parse_element(point, cfg.curve, "known point");
  return jac.add(p, jac.neg(cfg.base_offset));
}

/// True when sum a_i G_i + sum b_j T_j equals [P - D0] exactly over Q.
inline bool known_point_consistent(const SieveConfig& cfg, const KnownPoint& k) {
  RationalJacobian jac(cfg.curve);
  const size_t r = cfg.basis.free.size(), s = cfg.basis.torsion.size();
  if (k.coefficients.size() != r + s) return false;
  JacobianElementQ acc = jac.identity();
  for (size_t i = 0; i < r; ++i) acc = jac.add(acc, jac.mul(cfg.basis.free[i], k.coefficients[i]));
  for (size_t j = 0; j < s; ++j) acc = jac.add(acc, jac.mul(cfg.basis.torsion[j].element, k.coefficients[r + j]));
  return acc == known_point_class(cfg, k.point);
}

/// Coset tuple of a known point in the lattice of the configuration.
inline CosetLattice::Tuple known_point_coset(const SieveConfig& cfg, const KnownPoint& k) {
  const auto shape = empty_lattice(cfg);
  CosetLattice::Tuple t;
  for (size_t i = 0; i < k.coefficients.size(); ++i) {
    const long long m = shape.radices()[i];
    t.push_back(static_cast<u32>(((k.coefficients[i] % m) + m) % m));
  }
  return t;
}

}  // namespace zcs
