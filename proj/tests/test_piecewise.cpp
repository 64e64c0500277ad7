// Piecewise polynomial suite.  Hand-computed Brion pushforwards, min
// functions, quotient pushforwards and degree bases are frozen here; generic
// behavior is certified by a restriction oracle (a coarsened value must agree
// with every cone value on that cone) and randomized compatibility laws.
#include "doctest.h"

#include "logchow/error.hpp"
#include "logchow/modulistack.hpp"
#include "logchow/piecewise.hpp"

#include "testutil.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

using namespace logchow;
using testutil::kSeed;
using testutil::Rng;

namespace {

bool throwsKind(const char *kind, const std::function<void()> &f) {
  try {
    f();
  } catch (const DomainError &e) {
    return e.kind() == kind;
  }
  return false;
}

ConeStackWithBoundary allInterior(const StackPtr &s) {
  return {s, std::vector<char>(static_cast<size_t>(s->numObjects()), 1)};
}

// Strict pp determined by one value on a chosen object: every other object
// pulls back along its first arrow into that object, no-arrow objects get 0.
StrictPP strictFromTop(const ConeStackWithBoundary &st, int top,
                       const Poly &val) {
  const ConeStack &s = *st.stack;
  StrictPP f{st, {}};
  for (int o = 0; o < s.numObjects(); ++o) {
    if (o == top) {
      f.values.push_back(val.withVars(rayVars(s, o)));
      continue;
    }
    auto arrows = s.arrowsBetween(o, top);
    if (arrows.empty())
      f.values.push_back(Poly(rayVars(s, o)));
    else
      f.values.push_back(
          pullbackLinear(val, arrowMatrix(s, arrows.front()), rayVars(s, o)));
  }
  return f;
}

Poly randomPoly(const std::vector<std::string> &vars, int maxDeg, Rng &rng) {
  Poly p(vars);
  if (vars.empty())
    return p;
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    Exp e(vars.size(), 0);
    int deg = static_cast<int>(rng() % static_cast<unsigned>(maxDeg + 1));
    for (int k = 0; k < deg; ++k)
      e[rng() % vars.size()] += 1;
    long c = static_cast<long>(rng() % 5) - 2;
    p.addTerm(e, Rat(c == 0 ? 1 : c));
  }
  return p;
}

// Coordinates of p in the generator basis of a full-dimensional cone, solved
// by plain Gaussian elimination; independent of the library's linear algebra.
std::optional<std::vector<Rat>> solveInBasis(const std::vector<IVec> &gens,
                                             const IVec &p) {
  int n = static_cast<int>(gens.size());
  std::vector<std::vector<Rat>> a(static_cast<size_t>(n),
                                  std::vector<Rat>(static_cast<size_t>(n) + 1));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c)
      a[r][c] = Rat(static_cast<long>(gens[c][r]));
    a[r][static_cast<size_t>(n)] = Rat(static_cast<long>(p[r]));
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n && piv < 0; ++r)
      if (!a[r][col].isZero())
        piv = r;
    if (piv < 0)
      return std::nullopt;
    std::swap(a[col], a[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].isZero())
        continue;
      Rat f = a[r][col] / a[col][col];
      for (int j = col; j <= n; ++j)
        a[r][j] -= f * a[col][j];
    }
  }
  std::vector<Rat> x(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r)
    x[r] = a[r][static_cast<size_t>(n)] / a[r][static_cast<size_t>(r)];
  return x;
}

// Independent certificate for Brion pushforwards: P is the pushforward of the
// class exactly when the rational function sum over maximal cones of
// (value - P) / (product of dual coordinates) vanishes.  Checked by exact
// evaluation at generic points, away from the hyperplanes where a dual
// coordinate dies.
bool brionOracle(const PPClass &f, const StrictPP &g, Rng &rng) {
  if (!validateStrict(g).empty())
    return false;
  const ConeStack &s = *f.sub.stack;
  for (int o = 0; o < s.numObjects(); ++o) {
    int d = s.object(o).dim();
    if (d == 0) {
      if (g.values[o] != f.values[o][0])
        return false;
      continue;
    }
    int checked = 0;
    for (int attempt = 0; attempt < 60 && checked < 6; ++attempt) {
      IVec p(static_cast<size_t>(d));
      for (auto &x : p)
        x = 1 + static_cast<long long>(rng() % 97);
      std::vector<Rat> pt;
      for (long long x : p)
        pt.push_back(Rat(static_cast<long>(x)));
      Rat total(0);
      bool ok = true;
      for (size_t k = 0; k < f.sub.maxCones[o].size() && ok; ++k) {
        auto coords = solveInBasis(f.sub.maxCones[o][k].gens, p);
        if (!coords) {
          ok = false;
          break;
        }
        Rat phi(1);
        for (const Rat &c : *coords) {
          if (c.isZero()) {
            ok = false;
            break;
          }
          phi *= c;
        }
        if (!ok)
          break;
        total += (f.values[o][k].evaluate(pt) - g.values[o].evaluate(pt)) / phi;
      }
      if (!ok)
        continue;
      if (!total.isZero())
        return false;
      ++checked;
    }
    if (checked < 6)
      return false;
  }
  return true;
}

struct QuotientFixture {
  ConeStackWithBoundary src;      // faces of the plane orthant
  ConeStackWithBoundary dst;      // orthant modulo the coordinate swap
  StackMorphism pi;
  int fullObj, xObj, yObj, emptyObj, sigmaObj, rhoObj, zeroObj;
};

// The plane orthant mapping onto its swap quotient; both ray objects land on
// the single quotient ray.
QuotientFixture quotientFixture() {
  QuotientFixture q;
  q.src = facesStack({"x", "y"});
  StackPtr t = a2z2Stack();
  q.dst = {t, {0, 0, 1}};
  const ConeStack &s = *q.src.stack;
  q.emptyObj = facesObjectIndex(s, {});
  q.xObj = facesObjectIndex(s, {0});
  q.yObj = facesObjectIndex(s, {1});
  q.fullObj = facesObjectIndex(s, {0, 1});
  q.zeroObj = t->objectIndexOrThrow("0");
  q.rhoObj = t->objectIndexOrThrow("rho");
  q.sigmaObj = t->objectIndexOrThrow("sigma");
  std::vector<int> objMap(static_cast<size_t>(s.numObjects()), -1);
  objMap[q.emptyObj] = q.zeroObj;
  objMap[q.xObj] = q.rhoObj;
  objMap[q.yObj] = q.rhoObj;
  objMap[q.fullObj] = q.sigmaObj;
  std::vector<int> arrMap;
  std::vector<IMat> lattice;
  for (int a = 0; a < s.numArrows(); ++a) {
    const StackArrow &ar = s.arrow(a);
    int im = t->findArrow(objMap[ar.src], objMap[ar.dst], ar.rayMap, "");
    REQUIRE(im >= 0);
    arrMap.push_back(im);
  }
  for (int o = 0; o < s.numObjects(); ++o)
    lattice.push_back(identityIMat(s.object(o).dim()));
  q.pi = StackMorphism{q.src.stack, t, objMap, arrMap, lattice};
  return q;
}

// Swap-invariant strict pp on the quotient from a symmetric top value.
StrictPP symmetricOnQuotient(const QuotientFixture &q, const Poly &top) {
  Poly sym = top + pullbackLinear(top, IMat{{0, 1}, {1, 0}}, top.vars());
  return strictFromTop(q.dst, q.sigmaObj, sym);
}

Subdivision barycentric(const ConeStackWithBoundary &st, int full) {
  return stellarAt(trivialSubdivision(st.stack), full, fullOrthant(2), {1, 1});
}

// Face category of the orthant on the given rays, with objects and arrows
// inserted in a caller-chosen order; used to certify presentation
// independence of the degree bases.
ConeStackWithBoundary shuffledFaces(const std::vector<std::string> &rays,
                                    Rng &rng) {
  int n = static_cast<int>(rays.size());
  std::vector<int> masks;
  for (int m = 0; m < (1 << n); ++m)
    masks.push_back(m);
  for (size_t i = masks.size(); i > 1; --i)
    std::swap(masks[i - 1], masks[rng() % i]);
  auto s = std::make_shared<ConeStack>();
  std::vector<int> objOf(static_cast<size_t>(1) << n, -1);
  for (int m : masks) {
    std::string id;
    std::vector<std::string> sub;
    for (int i = 0; i < n; ++i)
      if (m & (1 << i)) {
        id += rays[i] + "|";
        sub.push_back(rays[i]);
      }
    objOf[m] = s->addObject(id.empty() ? "o" : id, sub);
  }
  std::vector<std::pair<int, int>> incl;
  for (int a = 0; a < (1 << n); ++a)
    for (int b = 0; b < (1 << n); ++b)
      if ((a & b) == a)
        incl.emplace_back(a, b);
  for (size_t i = incl.size(); i > 1; --i)
    std::swap(incl[i - 1], incl[rng() % i]);
  for (auto [a, b] : incl) {
    std::vector<int> rayMap;
    for (int i = 0; i < n; ++i)
      if (a & (1 << i)) {
        int pos = 0;
        for (int j = 0; j < i; ++j)
          if (b & (1 << j))
            ++pos;
        rayMap.push_back(pos);
      }
    s->addArrow(objOf[a], objOf[b], rayMap);
  }
  s->finalize();
  ConeStackWithBoundary out{s, std::vector<char>(objOf.size(), 0)};
  out.interior[objOf[(1 << n) - 1]] = 1;
  return out;
}

} // namespace

TEST_SUITE("piecewise") {

TEST_CASE("strict validation and ring operations on face stacks") {
  auto st = facesStack({"x", "y"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1});
  int xr = facesObjectIndex(s, {0});
  auto vars = rayVars(s, full);
  StrictPP f = strictFromTop(st, full, Poly::parse("x^2 + 3*x*y", vars));
  CHECK(validateStrict(f).empty());
  CHECK(f.values[xr] == Poly::parse("x^2", {"x"}));

  StrictPP g = strictFromTop(st, full, Poly::parse("x - y", vars));
  CHECK(validateStrict(g).empty());
  StrictPP sum = add(f, g);
  StrictPP prod = mul(f, g);
  StrictPP half = scale(g, Rat(1) / Rat(2));
  CHECK(validateStrict(sum).empty());
  CHECK(validateStrict(prod).empty());
  CHECK(sum.values[full] == Poly::parse("x^2 + 3*x*y + x - y", vars));
  CHECK(prod.values[full] == Poly::parse("x^3 + 2*x^2*y - 3*x*y^2", vars));
  CHECK(half.values[full] == Poly::parse("1/2*x - 1/2*y", vars));
  CHECK(samePP(add(f, g), add(g, f)));
  CHECK_FALSE(samePP(f, g));

  auto other = facesStack({"x", "y", "z"});
  StrictPP h = zeroPP(other);
  CHECK(throwsKind(errkind::StackMismatch, [&] { add(f, h); }));
  CHECK(throwsKind(errkind::StackMismatch, [&] { mul(f, h); }));

  StrictPP bad = f;
  bad.values[xr] += Poly::constant({"x"}, 1);
  CHECK_FALSE(validateStrict(bad).empty());
}

TEST_CASE("homological means vanishing on the boundary") {
  auto st = facesStack({"x", "y"});
  int full = facesObjectIndex(*st.stack, {0, 1});
  auto vars = rayVars(*st.stack, full);
  StrictPP hom = strictFromTop(st, full, Poly::parse("x*y", vars));
  CHECK(validateHom(hom).empty());
  HomPP h = asHom(hom);
  CHECK(samePP(h.pp, hom));

  StrictPP notHom = strictFromTop(st, full, Poly::parse("x", vars));
  CHECK(validateStrict(notHom).empty());
  CHECK_FALSE(validateHom(notHom).empty());
  CHECK(throwsKind(errkind::TypeMismatch, [&] { asHom(notHom); }));

  StrictPP c = constantPP(st, 7);
  CHECK(validateStrict(c).empty());
  CHECK_FALSE(validateHom(c).empty());
}

TEST_CASE("pullback along the quotient morphism") {
  QuotientFixture q = quotientFixture();
  CHECK(validateMorphism(q.pi).empty());
  StrictPP g =
      symmetricOnQuotient(q, Poly::parse("x^2 + 5*x*y", {"x", "y"}));
  CHECK(validateStrict(g).empty());
  StrictPP back = pullbackPP(g, q.pi, q.src);
  CHECK(validateStrict(back).empty());
  CHECK(back.values[q.fullObj] ==
        Poly::parse("x^2 + y^2 + 10*x*y", rayVars(*q.src.stack, q.fullObj)));
  CHECK(back.values[q.xObj] == g.values[q.rhoObj].withVars({"x"}));
  CHECK(back.values[q.yObj] == g.values[q.rhoObj].withVars({"y"}));
}

TEST_CASE("coarsening pushforward matches hand-computed Brion sums") {
  Rng rng(kSeed ^ 0xb10);
  auto st = facesStack({"x", "y"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1});
  auto vars = rayVars(s, full);
  Subdivision bar = barycentric(st, full);
  REQUIRE(bar.maxCones[full].size() == 2);
  int kx = maxConeContaining(bar, full, {2, 1}); // side where x >= y
  int ky = maxConeContaining(bar, full, {1, 2});
  REQUIRE(kx >= 0);
  REQUIRE(ky >= 0);
  REQUIRE(kx != ky);

  auto classWithFullValues = [&](const Poly &onX, const Poly &onY) {
    PPClass f{bar, st.interior, {}};
    for (int o = 0; o < s.numObjects(); ++o)
      f.values.emplace_back(bar.maxCones[o].size(), Poly(rayVars(s, o)));
    f.values[full][static_cast<size_t>(kx)] = onX;
    f.values[full][static_cast<size_t>(ky)] = onY;
    return f;
  };

  // The two dual-form products regroup to twice the coordinate product.
  PPClass dual = classWithFullValues(Poly::parse("y*x - y^2", vars),
                                     Poly::parse("x*y - x^2", vars));
  CHECK(validateClass(dual).empty());
  StrictPP pushed = pushforwardCoarsen(dual);
  CHECK(pushed.values[full] == Poly::parse("2*x*y", vars));
  CHECK(validateHom(pushed).empty());
  CHECK(brionOracle(dual, pushed, rng));

  // min pushes to zero, its square to minus the coordinate product.
  PPClass m = minFn(st, full, {0, 1});
  CHECK(samePP(pushforwardCoarsen(m), zeroPP(st)));
  StrictPP msq = pushforwardCoarsen(mul(m, m));
  CHECK(msq.values[full] == Poly::parse("-x*y", vars));
  CHECK(brionOracle(mul(m, m), msq, rng));

  // (x - y) * min also pushes to zero.
  StrictPP diff = strictFromTop(st, full, Poly::parse("x - y", vars));
  PPClass diffMin = mul(restrictTo(classOf(diff), bar), m);
  CHECK(samePP(pushforwardCoarsen(diffMin), zeroPP(st)));

  // Trivial subdivision is the identity.
  StrictPP f = strictFromTop(st, full, Poly::parse("x^2 - 4*x*y", vars));
  CHECK(samePP(pushforwardCoarsen(classOf(f)), f));

  // A discontinuous assignment is not piecewise polynomial.
  PPClass discont = classWithFullValues(Poly::parse("x", vars), Poly(vars));
  CHECK_FALSE(validateClass(discont).empty());
  CHECK(throwsKind(errkind::NotDivisible,
                   [&] { pushforwardCoarsen(discont); }));
}

TEST_CASE("min functions on planar and spatial orthants") {
  auto st2 = facesStack({"x", "y"});
  const ConeStack &s2 = *st2.stack;
  int full2 = facesObjectIndex(s2, {0, 1});
  int xr = facesObjectIndex(s2, {0});
  int yr = facesObjectIndex(s2, {1});

  PPClass single = minFn(st2, full2, {0});
  CHECK(isTrivial(single.sub));
  CHECK(validateClass(single).empty());
  CHECK(single.values[full2][0] == Poly::parse("x", rayVars(s2, full2)));
  CHECK(single.values[xr][0] == Poly::parse("x", {"x"}));
  CHECK(single.values[yr][0].isZero()); // the x coordinate dies on the y ray

  PPClass m2 = minFn(st2, full2, {0, 1});
  CHECK(validateClass(m2).empty());
  CHECK(m2.sub.maxCones[full2].size() == 2);
  CHECK(classEval(m2, full2, {2, 1}) == Rat(1));
  CHECK(classEval(m2, full2, {1, 2}) == Rat(1));
  CHECK(classEval(m2, full2, {1, 1}) == Rat(1));
  CHECK(classEval(m2, full2, {3, 0}) == Rat(0));
  CHECK(classEval(m2, xr, {5}) == Rat(0));

  auto st3 = facesStack({"x", "y", "z"});
  const ConeStack &s3 = *st3.stack;
  int full3 = facesObjectIndex(s3, {0, 1, 2});
  PPClass m3 = minFn(st3, full3, {0, 1, 2});
  CHECK(validateClass(m3).empty());
  CHECK(m3.sub.maxCones[full3].size() == 3);
  CHECK(classEval(m3, full3, {1, 1, 1}) == Rat(1));
  CHECK(classEval(m3, full3, {1, 0, 0}) == Rat(0));
  CHECK(classEval(m3, full3, {0, 1, 0}) == Rat(0));
  CHECK(classEval(m3, full3, {0, 0, 1}) == Rat(0));
  CHECK(classEval(m3, full3, {2, 3, 5}) == Rat(2));

  // min over a proper face splits only the cones meeting that face.
  PPClass mxy = minFn(st3, full3, {0, 1});
  CHECK(validateClass(mxy).empty());
  CHECK(mxy.sub.maxCones[full3].size() == 2);
  CHECK(classEval(mxy, full3, {5, 1, 7}) == Rat(1));
  CHECK(classEval(mxy, full3, {1, 5, 0}) == Rat(1));
  int fxy = facesObjectIndex(s3, {0, 1});
  CHECK(mxy.sub.maxCones[fxy].size() == 2); // orbit reaches the face object
  CHECK(classEval(mxy, fxy, {3, 4}) == Rat(3));
}

TEST_CASE("restriction, class arithmetic and incompatible histories") {
  auto st = facesStack({"x", "y"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1});
  auto vars = rayVars(s, full);
  Subdivision bar = barycentric(st, full);

  StrictPP h = strictFromTop(st, full, Poly::parse("x^2 + x*y", vars));
  PPClass c = classOf(h);
  PPClass fine = restrictTo(c, bar);
  CHECK(fine.values[full].size() == 2);
  CHECK(fine.values[full][0] == h.values[full]);
  CHECK(fine.values[full][1] == h.values[full]);
  CHECK(classEqual(c, fine));
  CHECK_FALSE(classEqual(c, mul(fine, fine)));

  // Arithmetic restricts to the common refinement automatically.
  PPClass m = minFn(st, full, {0, 1});
  PPClass total = add(m, c);
  CHECK(validateClass(total).empty());
  CHECK(classEval(total, full, {2, 1}) ==
        classEval(m, full, {2, 1}) + Rat(4 + 2));
  CHECK(classEqual(scale(add(m, m), Rat(1) / Rat(2)), m));

  CHECK(throwsKind(errkind::HistoryMismatch, [&] { restrictTo(fine, c.sub); }));

  auto st3 = facesStack({"x", "y", "z"});
  int full3 = facesObjectIndex(*st3.stack, {0, 1, 2});
  Subdivision a =
      stellarAt(trivialSubdivision(st3.stack), full3, fullOrthant(3), {1, 1, 1});
  Subdivision b = minFn(st3, full3, {0, 1}).sub;
  StrictPP one3 = constantPP(st3, 1);
  PPClass ca = restrictTo(classOf(one3), a);
  PPClass cb = restrictTo(classOf(one3), b);
  CHECK(throwsKind(errkind::HistoryMismatch, [&] { add(ca, cb); }));
  CHECK(throwsKind(errkind::HistoryMismatch, [&] { classEqual(ca, cb); }));
}

TEST_CASE("quotient pushforward doubles, symmetrizes and weights by "
          "automorphisms") {
  QuotientFixture q = quotientFixture();
  const ConeStack &s = *q.src.stack;
  auto vars = rayVars(s, q.fullObj);
  auto dvars = rayVars(*q.dst.stack, q.sigmaObj);

  StrictPP x = strictFromTop(q.src, q.fullObj, Poly::parse("x", vars));
  StrictPP y = strictFromTop(q.src, q.fullObj, Poly::parse("y", vars));
  StrictPP px = pushforwardMorphism(x, q.pi, q.dst);
  StrictPP py = pushforwardMorphism(y, q.pi, q.dst);
  CHECK(validateStrict(px).empty());
  CHECK(px.values[q.sigmaObj] == Poly::parse("x + y", dvars));
  CHECK(px.values[q.rhoObj] == Poly::parse("r", {"r"}));
  CHECK(samePP(px, py));

  HomPP xy = asHom(strictFromTop(q.src, q.fullObj, Poly::parse("x*y", vars)));
  HomPP pxy = pushforwardMorphism(xy, q.pi, q.dst);
  CHECK(pxy.pp.values[q.sigmaObj] == Poly::parse("2*x*y", dvars));
  CHECK(pxy.pp.values[q.rhoObj].isZero());

  // A point with one extra flip pushes the constant 1 to 1/2.
  auto flip = std::make_shared<ConeStack>();
  int p = flip->addObject("pt", {});
  int idA = flip->addArrow(p, p, {}, "");
  int tau = flip->addArrow(p, p, {}, "z2");
  flip->setComposite(tau, tau, idA);
  flip->finalize();
  auto point = std::make_shared<ConeStack>();
  point->addObject("pt", {});
  point->finalize();
  StackPtr flipPtr = flip, pointPtr = point;
  StackMorphism collapse{flipPtr, pointPtr, {0},
                         std::vector<int>(static_cast<size_t>(flip->numArrows()),
                                          point->identity(0)),
                         {IMat{}}};
  CHECK(validateMorphism(collapse).empty());
  StrictPP one = constantPP(allInterior(flipPtr), 1);
  StrictPP half = pushforwardMorphism(one, collapse, allInterior(pointPtr));
  CHECK(half.values[0] == Poly::constant({}, Rat(1) / Rat(2)));

  // Collapsing a whole orthant to a point drops dimension.
  StackMorphism squash{pointPtr, q.src.stack, {q.fullObj},
                       {q.src.stack->identity(q.fullObj)}, {IMat{}}};
  StrictPP onePt = constantPP(allInterior(pointPtr), 1);
  CHECK(throwsKind(errkind::NotRelDimZero, [&] {
    pushforwardMorphism(onePt, squash, q.src);
  }));

  // Lifting: the quotient map lifts every face arrow, the partial inclusion
  // of the ray object does not.
  CHECK(pushforwardLiftingReport(q.pi).empty());
  auto ray = facesStack({"t"});
  const ConeStack &rs = *ray.stack;
  int re = facesObjectIndex(rs, {});
  int rt = facesObjectIndex(rs, {0});
  std::vector<int> objMap(2);
  objMap[re] = q.zeroObj;
  objMap[rt] = q.rhoObj;
  std::vector<int> arrMap;
  for (int a = 0; a < rs.numArrows(); ++a) {
    const StackArrow &ar = rs.arrow(a);
    arrMap.push_back(q.pi.dst->findArrow(objMap[ar.src], objMap[ar.dst],
                                         ar.rayMap, ""));
    REQUIRE(arrMap.back() >= 0);
  }
  std::vector<IMat> ilat(2);
  ilat[re] = IMat{};
  ilat[rt] = identityIMat(1);
  StackMorphism incl{ray.stack, q.pi.dst, objMap, arrMap, ilat};
  CHECK(validateMorphism(incl).empty());
  CHECK_FALSE(pushforwardLiftingReport(incl).empty());
}

TEST_CASE("degree bases have the expected dimensions and spans") {
  auto st = facesStack({"x", "y"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1});
  auto vars = rayVars(s, full);

  auto b1 = degreeBasis(st, 1, false);
  auto b2 = degreeBasis(st, 2, false);
  CHECK(b1.size() == 2);
  CHECK(b2.size() == 3);
  for (const auto &f : b1) {
    CHECK(validateStrict(f).empty());
    CHECK(f.values[full].isHomogeneousOfDegree(1));
  }
  auto h2 = degreeBasis(st, 2, true);
  REQUIRE(h2.size() == 1);
  CHECK(h2[0].values[full] == Poly::parse("x*y", vars));

  // Vanishing on the one-skeleton of the three-dimensional orthant leaves
  // exactly the three products of coordinate pairs.
  auto tri = facesStack({"x", "y", "z"});
  ConeStackWithBoundary axes{tri.stack, {}};
  for (int o = 0; o < tri.stack->numObjects(); ++o)
    axes.interior.push_back(tri.stack->object(o).dim() >= 2 ? 1 : 0);
  auto basis = degreeBasis(axes, 2, true);
  REQUIRE(basis.size() == 3);
  int full3 = facesObjectIndex(*tri.stack, {0, 1, 2});
  auto tvars = rayVars(*tri.stack, full3);
  std::set<std::string> tops;
  for (const auto &f : basis) {
    CHECK(validateHom(f).empty());
    tops.insert(f.values[full3].str());
  }
  std::set<std::string> expect{Poly::parse("x*y", tvars).str(),
                               Poly::parse("x*z", tvars).str(),
                               Poly::parse("y*z", tvars).str()};
  CHECK(tops == expect);

  // Moduli stacks: one divisor function per one-edge graph.
  ModuliStack m04 = moduliConeStack(0, 4);
  auto b04 = degreeBasis(allInterior(m04.stack), 1, false);
  CHECK(b04.size() == 3);
  ModuliStack m05 = moduliConeStack(0, 5);
  auto b05 = degreeBasis(allInterior(m05.stack), 1, false);
  CHECK(b05.size() == 10);
  for (const auto &f : b05)
    CHECK(validateStrict(f).empty());

  // Deterministic output.
  auto again = degreeBasis(st, 2, false);
  REQUIRE(again.size() == b2.size());
  for (size_t i = 0; i < again.size(); ++i)
    CHECK(samePP(again[i], b2[i]));
}

TEST_CASE("property: compatibility violations are detected") {
  auto st = facesStack({"x", "y", "z"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1, 2});
  auto vars = rayVars(s, full);
  Rng rng(kSeed ^ 0x9e11);
  for (int iter = 0; iter < 200; ++iter) {
    StrictPP f = strictFromTop(st, full, randomPoly(vars, 3, rng));
    REQUIRE(validateStrict(f).empty());
    int o = static_cast<int>(rng() % static_cast<unsigned>(s.numObjects()));
    while (o == full)
      o = static_cast<int>(rng() % static_cast<unsigned>(s.numObjects()));
    StrictPP bad = f;
    bad.values[o] += Poly::constant(rayVars(s, o), 1);
    CHECK_FALSE(validateStrict(bad).empty());

    PPClass cls = restrictTo(classOf(f), minFn(st, full, {0, 1, 2}).sub);
    REQUIRE(validateClass(cls).empty());
    size_t k = rng() % cls.values[full].size();
    cls.values[full][k] += Poly::constant(vars, 1);
    CHECK_FALSE(validateClass(cls).empty());
  }
}

TEST_CASE("property: coarsening pushforward is linear, projects and inverts "
          "restriction") {
  auto st = facesStack({"x", "y"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1});
  auto vars = rayVars(s, full);
  Subdivision bar = barycentric(st, full);
  PPClass m = minFn(st, full, {0, 1});
  Rng rng(kSeed ^ 0x51ab);
  for (int iter = 0; iter < 200; ++iter) {
    StrictPP g = strictFromTop(st, full, randomPoly(vars, 2, rng));
    StrictPP h = strictFromTop(st, full, randomPoly(vars, 2, rng));
    PPClass f = add(restrictTo(classOf(h), bar), mul(m, restrictTo(classOf(g), bar)));
    StrictPP pf = pushforwardCoarsen(f);
    CHECK(brionOracle(f, pf, rng));

    // Round trip on strict inputs.
    CHECK(samePP(pushforwardCoarsen(restrictTo(classOf(h), bar)), h));

    // Linearity and the projection formula.
    PPClass f2 = mul(m, m);
    CHECK(samePP(pushforwardCoarsen(add(f, f2)),
                 add(pf, pushforwardCoarsen(f2))));
    CHECK(samePP(pushforwardCoarsen(mul(restrictTo(classOf(g), bar), f)),
                 mul(g, pf)));
  }
}

TEST_CASE("property: quotient pushforward satisfies the projection formula") {
  QuotientFixture q = quotientFixture();
  const ConeStack &s = *q.src.stack;
  auto vars = rayVars(s, q.fullObj);
  Poly xy = Poly::parse("x*y", vars);
  Rng rng(kSeed ^ 0x77aa);
  for (int iter = 0; iter < 200; ++iter) {
    HomPP f = asHom(strictFromTop(q.src, q.fullObj, xy * randomPoly(vars, 2, rng)));
    HomPP f2 = asHom(strictFromTop(q.src, q.fullObj, xy * randomPoly(vars, 2, rng)));
    StrictPP g = symmetricOnQuotient(q, randomPoly(vars, 2, rng));
    REQUIRE(validateStrict(g).empty());

    HomPP pf = pushforwardMorphism(f, q.pi, q.dst);
    CHECK(validateHom(pf.pp).empty());
    CHECK(samePP(pushforwardMorphism(asHom(add(f.pp, f2.pp)), q.pi, q.dst).pp,
                 add(pf.pp, pushforwardMorphism(f2, q.pi, q.dst).pp)));
    StrictPP lhs = pushforwardMorphism(
        mul(pullbackPP(g, q.pi, q.src), f.pp), q.pi, q.dst);
    CHECK(samePP(lhs, mul(g, pf.pp)));
  }
}

TEST_CASE("property: strict times homological stays homological") {
  auto st = facesStack({"x", "y", "z"});
  const ConeStack &s = *st.stack;
  int full = facesObjectIndex(s, {0, 1, 2});
  auto vars = rayVars(s, full);
  Poly xyz = Poly::parse("x*y*z", vars);
  Rng rng(kSeed ^ 0xbead);
  for (int iter = 0; iter < 200; ++iter) {
    StrictPP g = strictFromTop(st, full, randomPoly(vars, 3, rng));
    HomPP f = asHom(strictFromTop(st, full, xyz * randomPoly(vars, 2, rng)));
    CHECK(validateHom(mul(g, f.pp)).empty());
  }
}

TEST_CASE("property: degree basis dimensions ignore the presentation order") {
  Rng rng(kSeed ^ 0xf00d);
  std::vector<std::string> rays{"x", "y", "z"};
  auto reference = shuffledFaces(rays, rng);
  size_t s1 = degreeBasis(reference, 1, false).size();
  size_t s2 = degreeBasis(reference, 2, false).size();
  size_t h3 = degreeBasis(reference, 3, true).size();
  CHECK(s1 == 3);
  CHECK(s2 == 6);
  CHECK(h3 == 1); // only the full coordinate product vanishes on all faces
  for (int iter = 0; iter < 200; ++iter) {
    auto st = shuffledFaces(rays, rng);
    CHECK(degreeBasis(st, 1, false).size() == s1);
    CHECK(degreeBasis(st, 2, false).size() == s2);
    CHECK(degreeBasis(st, 3, true).size() == h3);
  }
}

} // TEST_SUITE
