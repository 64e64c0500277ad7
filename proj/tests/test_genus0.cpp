// Oracles frozen from classical genus-zero intersection theory before the
// implementation existed: the rank table of the boundary presentation
// (1),(1,5,1),(1,16,16,1), Poincare symmetry, the Picard jump of one for each
// point blowup of a smooth surface, strict vanishing of crossing divisor
// products, and the four-point expansions of psi classes.
#include "doctest.h"
#include "testutil.hpp"

#include "logchow/genus0.hpp"

#include <algorithm>

namespace {

using namespace logchow;

template <typename F> bool throwsKind(const char *kind, F &&f) {
  try {
    f();
  } catch (const DomainError &e) {
    return e.kind() == std::string(kind);
  } catch (...) {
    return false;
  }
  return false;
}

ConeStackWithBoundary allInterior(const StackPtr &s) {
  return ConeStackWithBoundary{s, std::vector<char>(
                                      static_cast<size_t>(s->numObjects()), 1)};
}

StrictPP D(int n, const std::vector<int> &A) { return divisorClassPP(n, A); }

StableGraph divisorGraph(int n, const std::vector<int> &A) {
  std::vector<int> legVertex(static_cast<size_t>(n), 1);
  for (int m : A)
    legVertex[static_cast<size_t>(m - 1)] = 0;
  return makeGraph({0, 0}, {{0, 1}}, legVertex);
}

StrataElem divisorElem(int n, const std::vector<int> &A) {
  StableGraph G = divisorGraph(n, A);
  return strataTerm(0, n, G, trivialDecoration(G), Rat(1));
}

int nonzeroCount(const std::vector<Rat> &v) {
  int c = 0;
  for (const Rat &x : v)
    if (!x.isZero())
      ++c;
  return c;
}

} // namespace

TEST_SUITE("genus0") {

TEST_CASE("four point relations expand into boundary divisor sums") {
  auto g4 = wdvvGenerators(4);
  REQUIRE(g4.size() == 3);
  CHECK(g4[0].quad == std::array<int, 4>{1, 2, 3, 4});
  CHECK(g4[1].quad == std::array<int, 4>{1, 3, 2, 4});
  CHECK(g4[2].quad == std::array<int, 4>{1, 4, 2, 3});
  CHECK(samePP(g4[0].cls, add(D(4, {1, 2}), scale(D(4, {1, 3}), Rat(-1)))));
  // swapping the partner of the smallest marking flips the sign
  CHECK(samePP(g4[1].cls, scale(g4[0].cls, Rat(-1))));
  CHECK(samePP(g4[2].cls, add(D(4, {1, 4}), scale(D(4, {1, 2}), Rat(-1)))));
  for (const auto &g : g4)
    CHECK(validateStrict(g.cls).empty());

  auto g5 = wdvvGenerators(5);
  REQUIRE(g5.size() == 15);
  bool found = false;
  for (const auto &g : g5)
    if (g.quad == std::array<int, 4>{1, 2, 3, 4}) {
      found = true;
      StrictPP want = add(D(5, {1, 2}), D(5, {1, 2, 5}));
      want = add(want, scale(add(D(5, {1, 3}), D(5, {1, 3, 5})), Rat(-1)));
      CHECK(samePP(g.cls, want));
    }
  CHECK(found);
  for (const auto &g : g5)
    CHECK(validateStrict(g.cls).empty());

  CHECK(throwsKind(errkind::Unstable, [] { wdvvGenerators(3); }));
  CHECK(throwsKind(errkind::Unstable, [] { divisorClassPP(5, {1}); }));
  CHECK(throwsKind(errkind::Unstable, [] { divisorClassPP(5, {1, 2, 3, 4}); }));
}

TEST_CASE("crossing divisors multiply to zero strictly") {
  // two edge cuts of one tree are always nested or disjoint, so products of
  // incompatible side sets vanish identically, with nothing imposed
  const auto &ms = moduliRegistry(0, 5);
  StrictPP zero = zeroPP(allInterior(ms.stack));
  CHECK(samePP(mul(D(5, {1, 2}), D(5, {1, 3})), zero));
  CHECK(samePP(mul(D(5, {1, 2}), D(5, {2, 3})), zero));
  CHECK(samePP(mul(D(5, {1, 2, 3}), D(5, {2, 3, 4})), zero));
  CHECK(!samePP(mul(D(5, {1, 2}), D(5, {4, 5})), zero));
  CHECK(!samePP(mul(D(5, {1, 2}), D(5, {1, 2, 3})), zero));
  CHECK(!samePP(mul(D(5, {1, 2}), D(5, {1, 2})), zero));
}

TEST_CASE("monomial spanning sets count cones and round-trip coordinates") {
  const auto &ms = moduliRegistry(0, 5);
  Subdivision triv = trivialSubdivision(ms.stack);
  auto b0 = monomialBasis(triv, 0);
  auto b1 = monomialBasis(triv, 1);
  auto b2 = monomialBasis(triv, 2);
  CHECK(b0.entries.size() == 1);
  CHECK(b1.entries.size() == 10); // one per boundary divisor
  CHECK(b2.entries.size() == 25); // squares plus one per two-edge chain

  const auto &m4 = moduliRegistry(0, 4);
  Subdivision t4 = trivialSubdivision(m4.stack);
  CHECK(monomialBasis(t4, 1).entries.size() == 3);
  CHECK(monomialBasis(t4, 2).entries.size() == 3); // no two-dimensional cones

  // ray functions and their products hit single spanning monomials
  auto v = monomialCoords(classOf(D(5, {1, 2})), b1);
  CHECK(nonzeroCount(v) == 1);
  CHECK(*std::find_if(v.begin(), v.end(),
                      [](const Rat &x) { return !x.isZero(); }) == Rat(1));
  auto sq = monomialCoords(classOf(mul(D(5, {1, 2}), D(5, {1, 2}))), b2);
  CHECK(nonzeroCount(sq) == 1);
  auto ch = monomialCoords(classOf(mul(D(5, {1, 2}), D(5, {4, 5}))), b2);
  CHECK(nonzeroCount(ch) == 1);

  for (size_t i = 0; i < b1.entries.size(); ++i)
    CHECK(validateClass(monomialClass(b1, static_cast<int>(i))).empty());
  for (size_t i = 0; i < b2.entries.size(); ++i)
    CHECK(validateClass(monomialClass(b2, static_cast<int>(i))).empty());
  CHECK(classEqual(monomialClass(b0, 0),
                   classOf(constantPP(allInterior(ms.stack), Rat(1)))));

  // coordinates invert random combinations, so the monomials are independent
  testutil::Rng rng(testutil::kSeed ^ 0x9e01);
  for (int round = 0; round < 12; ++round) {
    std::vector<Rat> want(b2.entries.size());
    PPClass f = scale(monomialClass(b2, 0), Rat(0));
    for (int t = 0; t < 4; ++t) {
      int i = static_cast<int>(rng() % b2.entries.size());
      Rat c = testutil::randomRat(rng, 5);
      want[static_cast<size_t>(i)] += c;
      f = add(f, scale(monomialClass(b2, i), c));
    }
    CHECK(monomialCoords(f, b2) == want);
  }
}

TEST_CASE("quotient ranks match the classical genus zero table") {
  CHECK(keelRank(3, 0) == 1);
  CHECK(keelRank(4, 0) == 1);
  CHECK(keelRank(4, 1) == 1);
  CHECK(keelRank(5, 0) == 1);
  CHECK(keelRank(5, 1) == 5);
  CHECK(keelRank(5, 2) == 1);
  CHECK(keelRank(6, 0) == 1);
  CHECK(keelRank(6, 1) == 16);
  CHECK(keelRank(6, 2) == 16);
  CHECK(keelRank(6, 3) == 1);
  CHECK(wdvvGenerators(6).size() == 45);
  // Poincare symmetry of the rank table
  for (int n = 3; n <= 6; ++n)
    for (int d = 0; d <= n - 3; ++d)
      CHECK(keelRank(n, d) == keelRank(n, n - 3 - d));
}

TEST_CASE("blowup ranks jump by one per stellar center") {
  const auto &ms = moduliRegistry(0, 5);
  StableGraph chain = makeGraph({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 0, 1, 2, 2});
  int oStar = ms.objectOf(chain);
  REQUIRE(oStar >= 0);
  Subdivision triv = trivialSubdivision(ms.stack);
  CHECK(logChowRank(5, 1, triv) == 5);
  CHECK(logChowRank(5, 0, triv) == 1);

  Subdivision sub1 = stellarAt(triv, oStar, fullOrthant(2), {1, 1});
  CHECK(validateSubdivision(sub1).empty());
  auto b1 = monomialBasis(sub1, 1);
  CHECK(b1.entries.size() == 11);
  CHECK(monomialBasis(sub1, 2).entries.size() == 27);
  CHECK(logChowRank(5, 0, sub1) == 1);
  CHECK(logChowRank(5, 1, sub1) == 6);
  CHECK(logChowRank(5, 2, sub1) == 1);

  // the one monomial homed at the subdivided object is the exceptional ray,
  // and it equals the minimum of the two edge coordinates there
  int exc = -1;
  for (size_t i = 0; i < b1.entries.size(); ++i)
    if (b1.entries[i].obj == oStar) {
      CHECK(exc == -1);
      exc = static_cast<int>(i);
    }
  REQUIRE(exc >= 0);
  PPClass excCls = monomialClass(b1, exc);
  for (int o = 0; o < ms.stack->numObjects(); ++o) {
    for (size_t mc = 0; mc < excCls.values[static_cast<size_t>(o)].size();
         ++mc) {
      const Poly &val = excCls.values[static_cast<size_t>(o)][mc];
      if (o != oStar) {
        CHECK(val.isZero());
        continue;
      }
      // linear on each chart, interpolating min of the edge coordinates at
      // the chart generators (0 at old rays, 1 at the barycenter)
      CHECK(val.isHomogeneousOfDegree(1));
      for (const IVec &g :
           sub1.maxCones[static_cast<size_t>(o)][mc].gens) {
        std::vector<Rat> pt;
        for (long long x : g)
          pt.push_back(Rat(static_cast<long>(x)));
        CHECK(val.evaluate(pt) == std::min(Rat(static_cast<long>(g[0])),
                                           Rat(static_cast<long>(g[1]))));
      }
    }
  }

  // a second stellar inside the first exceptional chart
  const Cone &car = sub1.maxCones[static_cast<size_t>(oStar)][0];
  IVec p2(2, 0);
  for (const auto &g : car.gens) {
    p2[0] += g[0];
    p2[1] += g[1];
  }
  Subdivision sub2 = stellarAt(sub1, oStar, car, p2);
  CHECK(logChowRank(5, 1, sub2) == 7);

  // blowing up along a one-dimensional stratum of the six marking space: the
  // orbit spreads through every maximal cone containing the face
  const auto &m6 = moduliRegistry(0, 6);
  StableGraph ch6 =
      makeGraph({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 0, 1, 2, 2, 2});
  int o2 = m6.objectOf(ch6);
  REQUIRE(o2 >= 0);
  Subdivision t6 = trivialSubdivision(m6.stack);
  Subdivision s6 = stellarAt(t6, o2, fullOrthant(2), {1, 1});
  CHECK(validateSubdivision(s6).empty());
  CHECK(monomialBasis(s6, 1).entries.size() == 26);
  CHECK(logChowRank(6, 1, s6) == 17);
}

TEST_CASE("quotient equality is relation membership") {
  CHECK(logChowEqual(4, classOf(D(4, {1, 2})), classOf(D(4, {1, 3})), 1));
  CHECK(logChowEqual(4, classOf(D(4, {1, 2})), classOf(D(4, {1, 2})), 1));
  CHECK(!logChowEqual(5, classOf(D(5, {1, 2})), classOf(D(5, {1, 3})), 1));

  const auto &ms = moduliRegistry(0, 5);
  PPClass zero5 = classOf(zeroPP(allInterior(ms.stack)));
  auto g5 = wdvvGenerators(5);
  CHECK(logChowEqual(5, classOf(g5[0].cls), zero5, 1));
  // generator times a divisor stays in the ideal one degree up
  CHECK(logChowEqual(5, classOf(mul(g5[0].cls, D(5, {1, 2}))), zero5, 2));

  // constants only agree with themselves
  PPClass c2 = classOf(constantPP(allInterior(ms.stack), Rat(2)));
  PPClass c3 = classOf(constantPP(allInterior(ms.stack), Rat(3)));
  CHECK(logChowEqual(5, c2, c2, 0));
  CHECK(!logChowEqual(5, c2, c3, 0));

  // psi expansions with different avoided pairs agree in the quotient
  auto psiPP = [](int n, int i, int j, int k) {
    return classOf(strataToKeelPP(psiAsBoundary(n, i, j, k)));
  };
  CHECK(logChowEqual(4, psiPP(4, 1, 2, 3), psiPP(4, 1, 2, 4), 1));
  CHECK(logChowEqual(4, psiPP(4, 1, 2, 3), psiPP(4, 1, 3, 4), 1));
  CHECK(logChowEqual(5, psiPP(5, 1, 2, 3), psiPP(5, 1, 4, 5), 1));
  CHECK(logChowEqual(5, psiPP(5, 1, 2, 3), psiPP(5, 1, 2, 4), 1));
  CHECK(logChowEqual(5, psiPP(5, 2, 1, 3), psiPP(5, 2, 4, 5), 1));
  CHECK(logChowEqual(6, psiPP(6, 1, 2, 3), psiPP(6, 1, 5, 6), 1));

  // refined and unrefined presentations of one class still compare
  StableGraph chain = makeGraph({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 0, 1, 2, 2});
  int oA = ms.objectOf(chain);
  StableGraph chainB = makeGraph({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 2, 1, 0, 2});
  int oB = ms.objectOf(chainB);
  REQUIRE(oA >= 0);
  REQUIRE(oB >= 0);
  REQUIRE(oA != oB);
  Subdivision triv = trivialSubdivision(ms.stack);
  Subdivision subA = stellarAt(triv, oA, fullOrthant(2), {1, 1});
  Subdivision subB = stellarAt(triv, oB, fullOrthant(2), {1, 1});
  PPClass ra = restrictTo(classOf(D(5, {1, 2})), subA);
  CHECK(logChowEqual(5, ra, classOf(D(5, {1, 2})), 1));
  CHECK(!logChowEqual(5, ra, classOf(D(5, {1, 3})), 1));
  PPClass rb = restrictTo(classOf(D(5, {1, 3})), subB);
  CHECK(throwsKind(errkind::HistoryMismatch,
                   [&] { logChowEqual(5, ra, rb, 1); }));
}

TEST_CASE("four point relations restrict to ray spans of random subdivisions") {
  const auto &ms = moduliRegistry(0, 5);
  ConeStackWithBoundary wb = allInterior(ms.stack);
  auto gens = wdvvGenerators(5);
  std::vector<int> twoDim;
  for (int o = 0; o < ms.stack->numObjects(); ++o)
    if (ms.stack->object(o).dim() == 2)
      twoDim.push_back(o);
  REQUIRE(twoDim.size() == 15);

  testutil::Rng rng(testutil::kSeed ^ 0x9e02);
  for (int c = 0; c < 200; ++c) {
    Subdivision sub = trivialSubdivision(ms.stack);
    int depth = 1 + static_cast<int>(rng() % 2);
    for (int s = 0; s < depth; ++s) {
      int o = twoDim[rng() % twoDim.size()];
      const auto &mcs = sub.maxCones[static_cast<size_t>(o)];
      const Cone car = mcs[rng() % mcs.size()];
      IVec p(2, 0);
      for (const auto &g : car.gens) {
        p[0] += g[0];
        p[1] += g[1];
      }
      sub = stellarAt(sub, o, car, p);
    }
    auto b1 = monomialBasis(sub, 1);
    const auto &g = gens[rng() % gens.size()];
    PPClass r = restrictTo(classOf(g.cls), sub);
    auto v = monomialCoords(r, b1);
    PPClass rec = restrictTo(classOf(zeroPP(wb)), sub);
    for (size_t i = 0; i < v.size(); ++i)
      if (!v[i].isZero())
        rec = add(rec, scale(monomialClass(b1, static_cast<int>(i)), v[i]));
    CHECK(classEqual(rec, r));
  }
}

TEST_CASE("undecorated strata map to divisor products") {
  const auto &ms = moduliRegistry(0, 5);
  ConeStackWithBoundary wb = allInterior(ms.stack);
  CHECK(samePP(strataToKeelPP(divisorElem(5, {1, 2})), D(5, {1, 2})));
  CHECK(samePP(strataToKeelPP(strataUnit(0, 5)), constantPP(wb, Rat(1))));
  CHECK(samePP(strataToKeelPP(strataZero(0, 5)), zeroPP(wb)));

  StableGraph chain = makeGraph({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 0, 1, 2, 2});
  StrataElem chainElem = strataTerm(0, 5, chain, trivialDecoration(chain), Rat(1));
  CHECK(samePP(strataToKeelPP(chainElem), mul(D(5, {1, 2}), D(5, {4, 5}))));

  StrataElem lin = add(scale(divisorElem(5, {1, 2}), Rat(2)),
                       scale(divisorElem(5, {3, 4}), Rat(-3)));
  CHECK(samePP(strataToKeelPP(lin),
               add(scale(D(5, {1, 2}), Rat(2)), scale(D(5, {3, 4}), Rat(-3)))));

  StableGraph dg = divisorGraph(5, {1, 2});
  Decoration dec = trivialDecoration(dg);
  dec.psi[6] = 1; // one power at the node half on the four-valent side
  StrataElem decorated = strataTerm(0, 5, dg, dec, Rat(1));
  CHECK(throwsKind(errkind::DecorationNotTrivial,
                   [&] { strataToKeelPP(decorated); }));
  Decoration kdec = trivialDecoration(dg);
  kdec.kappa[1] = {{1, 1}};
  StrataElem kap = strataTerm(0, 5, dg, kdec, Rat(1));
  CHECK(throwsKind(errkind::DecorationNotTrivial, [&] { strataToKeelPP(kap); }));
}

} // TEST_SUITE
