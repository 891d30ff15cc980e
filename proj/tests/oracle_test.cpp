#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace zcs;
using namespace zcs::test;

namespace {

const std::vector<std::string> kFixtures{"ell_x3m2.json", "ell_x3p1.json",   "g2_x5p1.json",
                                         "g2_two_torsion.json", "g2_case.json", "g2_x5p1_empty.json"};

void compare(const SieveConfig& cfg, const std::string& label) {
  const json cert = certificate_to_json(sieve_run(cfg));
  const auto ref = oracle::sieve(cert.at("config"));
  const json& steps = cert.at("steps");
  ASSERT_EQ(steps.size(), ref.steps.size()) << label;
  for (size_t i = 0; i < ref.steps.size(); ++i) {
    EXPECT_EQ(steps[i].at("prime").get<long long>(), ref.steps[i].prime) << label;
    EXPECT_EQ(steps[i].at("jacobian_order").get<long long>(), ref.steps[i].group_order) << label;
    EXPECT_EQ(steps[i].at("admissible").dump(), json(ref.steps[i].admissible).dump())
        << label << " p=" << ref.steps[i].prime;
  }
  EXPECT_EQ(cert.at("verdict").at("survivors").dump(), json(ref.survivors).dump()) << label;
}

}  // namespace

TEST(Differential, FixturesMatchReference) {
  for (const auto& name : kFixtures) compare(load_config(name), name);
}

TEST(Differential, OtherModuliMatchReference) {
  for (const auto& name : {"ell_x3m2.json", "ell_x3p1.json", "g2_x5p1.json"})
    for (u64 B : {2, 3, 4, 6}) {
      json j = read_json_file(fixture(name));
      j["modulus"] = B;
      j["prime_count"] = 5;
      compare(parse_sieve_config(j), std::string(name) + " B=" + std::to_string(B));
    }
}

TEST(Differential, ZeroCycleModeMatchesReference) {
  json j = read_json_file(fixture("g2_case.json"));
  j["mode"] = "zero_cycles";
  j["prime_count"] = 4;
  compare(parse_sieve_config(j), "g2_case zero_cycles");
}
