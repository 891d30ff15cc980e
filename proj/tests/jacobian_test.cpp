#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "support.hpp"

using namespace zcs;
using namespace zcs::test;

namespace {

template <class Ops>
void check_group_axioms(const Ops& ops, int trials) {
  const auto elems = ops.enumerate();
  auto pick = [&] { return elems[static_cast<size_t>(uniform(0, static_cast<long long>(elems.size()) - 1))]; };
  const auto e = ops.identity();
  for (int i = 0; i < trials; ++i) {
    auto a = pick(), b = pick(), c = pick();
    ASSERT_EQ(ops.add(ops.add(a, b), c), ops.add(a, ops.add(b, c)));
    ASSERT_EQ(ops.add(a, b), ops.add(b, a));
    ASSERT_EQ(ops.add(a, e), a);
    ASSERT_EQ(ops.add(a, ops.neg(a)), e);
    ASSERT_TRUE(ops.contains(ops.add(a, b)));
  }
}

std::vector<CurveModel> genus2_curves() {
  return {hyperelliptic({1, 0, 0, 0, 0, 1}), hyperelliptic({1, -1, 0, 0, 0, 1}), hyperelliptic({0, 4, 0, -5, 0, 1})};
}

}  // namespace

TEST(EcAdd, Examples) {
  auto F = ExtField::make(5);
  EllipticGroup<FieldElement> E(F->from_int(0), F->from_int(1));
  using P = ECPoint<FieldElement>;
  const P a = P::affine(F->from_int(0), F->from_int(1)), b = P::affine(F->from_int(0), F->from_int(4));
  EXPECT_EQ(E.add(a, P::identity()), a);
  EXPECT_EQ(E.add(a, b), P::identity());
  EXPECT_EQ(E.add(a, a), b);
  EXPECT_EQ(E.mul(a, 3), P::identity());
}

TEST(EcAdd, Errors) {
  auto F = ExtField::make(5), G = ExtField::make(7);
  EllipticGroup<FieldElement> E(F->from_int(0), F->from_int(1));
  using P = ECPoint<FieldElement>;
  try {
    E.add(P::affine(F->from_int(1), F->from_int(1)), P::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointNotOnCurve);
  }
  try {
    E.add(P::affine(G->from_int(0), G->from_int(1)), P::affine(F->from_int(0), F->from_int(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
}

TEST(CantorAdd, Examples) {
  Genus2Fp J(std::get<HyperellipticCurve>(hyperelliptic({1, 0, 0, 0, 0, 1})), 3);
  const auto& jac = J.jacobian();
  const auto& F = J.field();
  auto d1 = jac.from_point(F.from_int(0), F.from_int(1));
  auto d2 = jac.from_point(F.from_int(0), F.from_int(2));
  EXPECT_EQ(jac.add(d1, jac.identity()), d1);
  EXPECT_EQ(jac.add(d1, d2), jac.identity());
}

TEST(CantorAdd, InvalidDivisorRejected) {
  Genus2Fp J(std::get<HyperellipticCurve>(hyperelliptic({1, 0, 0, 0, 0, 1})), 7);
  const auto& F = J.field();
  MumfordDivisor<FieldElement> bad{Poly<FieldElement>(F.zero(), {F.from_int(1), F.one()}),
                                   Poly<FieldElement>::constant(F.from_int(3))};
  try {
    J.jacobian().add(bad, J.identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidDivisor);
  }
}

TEST(CantorAdd, GroupOrderAnnihilates) {
  for (const auto& c : genus2_curves()) {
    const auto& h = std::get<HyperellipticCurve>(c);
    for (u64 p : {7, 11, 13}) {
      if (!reduction_type(c, p).good) continue;
      Genus2Fp J(h, p);
      const auto elems = J.enumerate();
      const long long n = static_cast<long long>(jacobian_order(c, p));
      for (int i = 0; i < 100; ++i) {
        const auto& d = elems[static_cast<size_t>(uniform(0, static_cast<long long>(elems.size()) - 1))];
        EXPECT_EQ(J.jacobian().mul(d, n), J.identity());
      }
    }
  }
}

TEST(GroupAxioms, EllipticAllGoodPrimes) {
  for (const CurveModel& c : {elliptic(0, -2), elliptic(0, 1), elliptic(-1, 0)})
    for (u64 p : primes_up_to(199)) {
      if (p < 5 || !reduction_type(c, p).good) continue;
      check_group_axioms(EllipticFp(std::get<EllipticCurve>(c), p), 1000);
    }
}

TEST(GroupAxioms, Genus2GoodPrimes) {
  for (const auto& c : {genus2_curves()[0], genus2_curves()[1]})
    for (u64 p : primes_up_to(61)) {
      if (p < 3 || !reduction_type(c, p).good) continue;
      check_group_axioms(Genus2Fp(std::get<HyperellipticCurve>(c), p), 1000);
    }
}

TEST(JacobianOrder, Examples) {
  EXPECT_EQ(jacobian_order(elliptic(0, 1), 5), 6);
  const BigInt n = jacobian_order(hyperelliptic({1, 0, 0, 0, 0, 1}), 3);
  EXPECT_GE(n, 1);
  EXPECT_LE(n, 55);
  try {
    jacobian_order(elliptic(0, 1), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadReduction);
  }
}

// Zeta against exhaustive (u, v) enumeration by the reference implementation.
TEST(JacobianOrder, ZetaMatchesExhaustiveEnumeration) {
  for (const auto& c : genus2_curves()) {
    const auto& h = std::get<HyperellipticCurve>(c);
    for (u64 p : primes_up_to(13)) {
      if (p < 3 || !reduction_type(c, p).good) continue;
      oracle::Pol f;
      for (const auto& x : h.f) f.push_back(static_cast<long long>(mod_u64(x, p)));
      oracle::PolyOps{oracle::Fp{static_cast<long long>(p)}}.trim(f);
      oracle::Genus2 ref{oracle::Fp{static_cast<long long>(p)}, f};
      const auto all = ref.all();
      EXPECT_EQ(jacobian_order(c, p), BigInt(all.size())) << "p=" << p;
      EXPECT_EQ(FiniteJacobian<Genus2Fp>(Genus2Fp(h, p)).order(), all.size());
      const double sp = std::sqrt(static_cast<double>(p));
      EXPECT_GE(static_cast<double>(all.size()), std::pow(sp - 1, 4) - 1e-9);
      EXPECT_LE(static_cast<double>(all.size()), std::pow(sp + 1, 4) + 1e-9);
    }
  }
}

TEST(ReducePoint, Examples) {
  const auto e = std::get<EllipticCurve>(elliptic(0, -2));
  EllipticFp E5(e, 5);
  RationalJacobian jq(elliptic(0, -2));
  auto r = E5.reduce(jq.point_class(3, 5));
  ASSERT_FALSE(r.infinity);
  EXPECT_EQ(r.x, E5.field().from_int(3));
  EXPECT_TRUE(r.y.is_zero());
  EXPECT_TRUE(E5.reduce(jq.identity()).infinity);

  // The torsion generator (2, 3) of y^2 = x^3 + 1 has order 6; its reductions have order dividing 6.
  RationalJacobian j1(elliptic(0, 1));
  const auto t = j1.point_class(2, 3);
  EXPECT_TRUE(j1.is_identity(j1.mul(t, 6)));
  for (u64 p : {5, 7, 11, 13, 17}) {
    EllipticFp Ep(std::get<EllipticCurve>(elliptic(0, 1)), p);
    EXPECT_TRUE(EllipticFp(std::get<EllipticCurve>(elliptic(0, 1)), p).reduce(j1.mul(t, 6)).infinity);
    auto rt = Ep.reduce(t);
    auto acc = Ep.identity();
    for (int i = 0; i < 6; ++i) acc = Ep.add(acc, rt);
    EXPECT_TRUE(acc.infinity);
  }
}

TEST(ReducePoint, Homomorphism) {
  for (const auto& name : {"ell_x3m2.json", "g2_case.json"}) {
    auto cfg = load_config(name);
    RationalJacobian jq(cfg.curve);
    std::vector<JacobianElementQ> pool{jq.identity()};
    for (const auto& g : cfg.basis.free)
      for (long long n : {-2, -1, 1, 2, 3}) pool.push_back(jq.mul(g, n));
    if (cfg.basis.free.size() == 2) pool.push_back(jq.add(cfg.basis.free[0], cfg.basis.free[1]));
    int checked = 0;
    for (u64 p : {5, 7, 11, 13, 17, 23}) {
      if (!reduction_type(cfg.curve, p).good) continue;
      auto run = [&](const auto& ops) {
        for (int i = 0; i < 30; ++i) {
          const auto& a = pool[static_cast<size_t>(uniform(0, static_cast<long long>(pool.size()) - 1))];
          const auto& b = pool[static_cast<size_t>(uniform(0, static_cast<long long>(pool.size()) - 1))];
          const auto s = jq.add(a, b);
          if (!ops.reducible(a) || !ops.reducible(b) || !ops.reducible(s)) continue;
          EXPECT_EQ(ops.reduce(s), ops.add(ops.reduce(a), ops.reduce(b)));
          ++checked;
        }
      };
      if (auto* e = std::get_if<EllipticCurve>(&cfg.curve)) run(EllipticFp(*e, p));
      else run(Genus2Fp(std::get<HyperellipticCurve>(cfg.curve), p));
    }
    EXPECT_GT(checked, 50) << name;
  }
}

TEST(QuotientMap, Examples) {
  const auto e = std::get<EllipticCurve>(elliptic(0, 1));
  FiniteJacobian<EllipticFp> G(EllipticFp(e, 5));
  ASSERT_EQ(G.order(), 6u);
  EXPECT_EQ(QuotientMap<EllipticFp>(G, 1).label_count(), 1u);
  EXPECT_EQ(QuotientMap<EllipticFp>(G, 5).label_count(), 1u);
  QuotientMap<EllipticFp> Q2(G, 2);
  EXPECT_EQ(Q2.label_count(), 2u);

  // Reference: cosets of 2G counted by brute force.
  std::set<u32> twice;
  for (u32 i = 0; i < G.order(); ++i) twice.insert(G.add(i, i));
  std::set<std::set<u32>> cosets;
  for (u32 i = 0; i < G.order(); ++i) {
    std::set<u32> c;
    for (u32 h : twice) c.insert(G.add(i, h));
    cosets.insert(c);
  }
  EXPECT_EQ(cosets.size(), 2u);
  // Labels are the smallest index in each coset.
  for (u32 i = 0; i < G.order(); ++i)
    for (const auto& c : cosets)
      if (c.count(i)) EXPECT_EQ(Q2.label(i), *c.begin());
}

TEST(QuotientMap, LabelCountIsIndex) {
  for (u64 p : {7, 11, 13, 17}) {
    const auto h = std::get<HyperellipticCurve>(genus2_curves()[1]);
    FiniteJacobian<Genus2Fp> G(Genus2Fp(h, p));
    for (u64 B : {2, 3, 4, 6, 12}) {
      QuotientMap<Genus2Fp> Q(G, B);
      EXPECT_EQ(Q.label_count() * Q.subgroup_size(), G.order());
    }
  }
}

TEST(QuotientMap, ConstantOnCosets) {
  for (u64 p : {11, 13, 29}) {
    const auto e = std::get<EllipticCurve>(elliptic(0, -2));
    FiniteJacobian<EllipticFp> G(EllipticFp(e, p));
    for (u64 B : {2, 3, 6, 12}) {
      QuotientMap<EllipticFp> Q(G, B);
      for (int i = 0; i < 200; ++i) {
        const u32 x = static_cast<u32>(uniform(0, static_cast<long long>(G.order()) - 1));
        const u32 z = static_cast<u32>(uniform(0, static_cast<long long>(G.order()) - 1));
        const u32 y = G.mul(z, B);
        EXPECT_EQ(Q.label(x), Q.label(G.add(x, y)));
      }
    }
  }
  const auto h = std::get<HyperellipticCurve>(genus2_curves()[1]);
  FiniteJacobian<Genus2Fp> G(Genus2Fp(h, 13));
  QuotientMap<Genus2Fp> Q(G, 12);
  for (int i = 0; i < 200; ++i) {
    const u32 x = static_cast<u32>(uniform(0, static_cast<long long>(G.order()) - 1));
    const u32 y = G.mul(static_cast<u32>(uniform(0, static_cast<long long>(G.order()) - 1)), 12);
    EXPECT_EQ(Q.label(x), Q.label(G.add(x, y)));
  }
}
