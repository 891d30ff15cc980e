#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace zcs;
using namespace zcs::test;

namespace {

json raw(const std::string& name) { return read_json_file(fixture(name)); }

SieveConfig with(const std::string& name, const json& patch) {
  json j = raw(name);
  j.merge_patch(patch);
  return parse_sieve_config(j);
}

std::set<CosetLattice::Tuple> survivor_set(const SieveCertificate& c) {
  const auto t = c.survivors.tuples();
  return {t.begin(), t.end()};
}

CosetLattice::Tuple project(const CosetLattice::Tuple& t, const CosetLattice& to) {
  CosetLattice::Tuple out;
  for (size_t i = 0; i < t.size(); ++i) out.push_back(t[i] % to.radices()[i]);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::IoError;
}

}  // namespace

TEST(Sieve, EllipticExample) {
  auto cfg = with("ell_x3m2.json", {{"modulus", 2}, {"primes", {5, 11}}});
  auto cert = sieve_run(cfg);
  ASSERT_EQ(cert.steps.size(), 2u);
  EXPECT_EQ(cert.steps[0].prime, 5u);
  EXPECT_EQ(cert.steps[0].jacobian_order, 6u);
  EXPECT_FALSE(cert.empty());
  EXPECT_TRUE(cert.survivors.contains({1}));
  EXPECT_TRUE(cert.survivors.contains({0}));
}

TEST(Sieve, PlaneCubicHasNoJacobianModel) {
  EXPECT_EQ(kind_of([] { parse_sieve_config(raw("selmer_sieve.json")); }), ErrorKind::EmbeddingUnavailable);
}

TEST(Sieve, ImageSizeIsPointCount) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = load_config(name);
    for (u64 p : resolve_primes(cfg)) {
      auto s = admissible_step(cfg, p);
      EXPECT_EQ(s.image_size, count_points(cfg.curve, *ExtField::make(p))) << name << " p=" << p;
      EXPECT_EQ(BigInt(s.jacobian_order), jacobian_order(cfg.curve, p));
      EXPECT_EQ(s.jacobian_order % s.quotient_size, 0u);
    }
  }
}

TEST(Sieve, ZeroCyclesAdmitEverything) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = with(name, {{"mode", "zero_cycles"}});
    auto cert = sieve_run(cfg);
    EXPECT_EQ(cert.survivors.size(), cert.survivors.candidate_count()) << name;
  }
}

TEST(Sieve, KnownPointsAreConsistent) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = load_config(name);
    ASSERT_FALSE(cfg.known_points.empty());
    for (const auto& k : cfg.known_points) EXPECT_TRUE(known_point_consistent(cfg, k)) << name;
    auto wrong = cfg.known_points.back();
    wrong.coefficients[0] += 1;
    EXPECT_FALSE(known_point_consistent(cfg, wrong)) << name;
  }
}

// Every rational point's coset survives, for every modulus.
TEST(Sieve, SoundForKnownPoints) {
  for (const auto& name : pointed_fixtures())
    for (u64 B : {2, 3, 4, 6, 12}) {
      auto cfg = with(name, {{"modulus", B}});
      auto cert = sieve_run(cfg);
      for (const auto& k : cfg.known_points)
        EXPECT_TRUE(cert.survivors.contains(known_point_coset(cfg, k))) << name << " B=" << B;
    }
}

TEST(Sieve, AddingPrimesNeverEnlarges) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = load_config(name);
    const auto primes = resolve_primes(cfg);
    std::set<CosetLattice::Tuple> prev;
    for (size_t n = 1; n <= primes.size(); ++n) {
      std::vector<u64> sub(primes.begin(), primes.begin() + static_cast<long>(n));
      auto c = cfg;
      c.primes = sub;
      auto cur = survivor_set(sieve_run(c));
      if (n > 1) EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) << name;
      prev = cur;
    }
  }
}

TEST(Sieve, RefiningModulusProjectsIntoCoarse) {
  for (const auto& name : pointed_fixtures())
    for (auto [B, Bp] : std::vector<std::pair<u64, u64>>{{2, 4}, {2, 6}, {3, 6}, {6, 12}, {4, 12}}) {
      auto coarse = with(name, {{"modulus", B}});
      auto fine = with(name, {{"modulus", Bp}});
      coarse.primes = fine.primes = resolve_primes(load_config(name));
      auto c = sieve_run(coarse), f = sieve_run(fine);
      for (const auto& t : f.survivors.tuples())
        EXPECT_TRUE(c.survivors.contains(project(t, c.survivors))) << name << " " << B << "|" << Bp;
    }
}

TEST(Sieve, PrimeOrderDoesNotMatter) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = load_config(name);
    const auto primes = resolve_primes(cfg);
    const auto base = sieve_run(cfg).survivors;
    for (int i = 0; i < 5; ++i) {
      auto order = primes;
      std::shuffle(order.begin(), order.end(), rng());
      auto cert = run_in_order(cfg, order, primes, 1);
      EXPECT_EQ(cert.survivors, base) << name;
      EXPECT_TRUE(verify_certificate(certificate_to_json(cert)).ok) << name;
    }
  }
}

TEST(Sieve, DeterministicAcrossThreadCounts) {
  for (const auto& name : pointed_fixtures()) {
    auto cfg = load_config(name);
    const std::string one = certificate_to_json(sieve_run(cfg, 1)).dump();
    for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(certificate_to_json(sieve_run(cfg, t)).dump(), one) << name;
  }
}

TEST(Verify, RoundTrip) {
  for (const auto& name : pointed_fixtures()) {
    const json c = certificate_to_json(sieve_run(load_config(name)));
    EXPECT_EQ(c.at("kind"), "zcs-sieve-certificate");
    auto r = verify_certificate(json::parse(c.dump()));
    EXPECT_TRUE(r.ok) << name << " " << r.mismatch;
  }
  const json empty = certificate_to_json(sieve_run(load_config("g2_x5p1_empty.json")));
  EXPECT_EQ(empty.at("verdict").at("status"), "empty");
  EXPECT_TRUE(verify_certificate(empty).ok);
}

TEST(Verify, TamperingDetected) {
  const json good = certificate_to_json(sieve_run(load_config("ell_x3m2.json")));
  std::vector<json> bad(6, good);
  bad[0]["verdict"]["survivors"] = json::array();
  bad[1]["steps"][0]["jacobian_order"] = good["steps"][0]["jacobian_order"].get<u64>() + 1;
  bad[2]["config"]["modulus"] = 6;
  bad[3]["input_hash"] = std::string(64, '0');
  bad[4]["steps"].erase(bad[4]["steps"].size() - 1);
  bad[5]["steps"][0]["admissible"].push_back(json::array({11}));
  for (size_t i = 0; i < bad.size(); ++i) {
    auto r = verify_certificate(bad[i]);
    EXPECT_FALSE(r.ok) << i;
    EXPECT_FALSE(r.mismatch.empty()) << i;
  }
  EXPECT_FALSE(verify_certificate(json("not a certificate")).ok);
  EXPECT_FALSE(verify_certificate(json::object()).ok);
}

TEST(Verify, SwappedStepsRejected) {
  json c = certificate_to_json(sieve_run(load_config("g2_case.json")));
  ASSERT_GE(c["steps"].size(), 2u);
  std::swap(c["steps"][0], c["steps"][1]);
  EXPECT_FALSE(verify_certificate(c).ok);
}

TEST(SieveConfig, Errors) {
  EXPECT_EQ(kind_of([] { sieve_run(with("ell_x3m2.json", {{"primes", {3}}})); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { sieve_run(with("ell_x3m2.json", {{"primes", {211}}})); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { sieve_run(with("ell_x3m2.json", {{"primes", {5, 15}}})); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { with("ell_x3m2.json", {{"modulus", 0}}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { with("ell_x3m2.json", {{"modulus", 10001}}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { with("ell_x3m2.json", {{"colour", "red"}}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { with("ell_x3p1.json", {{"basis", {{"torsion", {{{"point", {2, 3}}, {"order", 4}}}}}}}); }),
            ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { with("ell_x3m2.json", {{"basis", {{"free", {{{"point", {3, 4}}}}}}}}); }),
            ErrorKind::PointNotOnCurve);

  // Every prime up to the cap is bad, divides the modulus or divides a torsion order.
  const json none = {{"curve", {{"type", "hyperelliptic"}, {"coeffs", {1, 0, 0, 0, 0, 1}}}},
                     {"basis", {{"torsion", {{{"point", "infinity"}, {"order", 7 * 11 * 13 * 17 * 19 * 23}},
                                                {{"point", "infinity"}, {"order", 29 * 31 * 37 * 41}},
                                                {{"point", "infinity"}, {"order", 43 * 47 * 53}}}}}},
                     {"modulus", 59 * 61}};
  EXPECT_EQ(kind_of([&] { sieve_run(parse_sieve_config(none)); }), ErrorKind::NoAdmissiblePrimes);
}
