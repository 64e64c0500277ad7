// Strict and subdivided piecewise polynomials.  Both pushforwards run the
// same Brion scheme: express each piece through its dual-basis linear forms,
// sum over a common denominator, clear against the coordinate product of the
// target object and divide exactly.
#include "logchow/piecewise.hpp"

#include "logchow/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace logchow {

namespace {

// Inverse over Rat of the square integer matrix with the given rows; empty
// optional when singular.
std::optional<std::vector<std::vector<Rat>>>
invertRows(const std::vector<IVec> &rows) {
  int n = static_cast<int>(rows.size());
  std::vector<std::vector<Rat>> a(
      static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(rows[i].size()) == n, "square matrix expected");
    for (int j = 0; j < n; ++j)
      a[i][j] = Rat(static_cast<long>(rows[i][j]));
    a[i][static_cast<size_t>(n + i)] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n && piv < 0; ++r)
      if (!a[r][col].isZero())
        piv = r;
    if (piv < 0)
      return std::nullopt;
    std::swap(a[col], a[piv]);
    Rat inv = inverse(a[col][col]);
    for (int j = 0; j < 2 * n; ++j)
      a[col][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].isZero())
        continue;
      Rat c = a[r][col];
      for (int j = 0; j < 2 * n; ++j)
        a[r][j] -= c * a[col][j];
    }
  }
  std::vector<std::vector<Rat>> out(static_cast<size_t>(n),
                                    std::vector<Rat>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i][j] = a[i][static_cast<size_t>(n + j)];
  return out;
}

Poly linearForm(const std::vector<Rat> &coeffs,
                const std::vector<std::string> &vars) {
  Poly p(vars);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].isZero())
      continue;
    Exp e(vars.size(), 0);
    e[k] = 1;
    p.addTerm(e, coeffs[k]);
  }
  return p;
}

// Dual-basis linear forms of a full-dimensional cone given by generator rows:
// form i evaluates to 1 on generator i and to 0 on the others.
std::optional<std::vector<Poly>>
dualForms(const std::vector<IVec> &gens,
          const std::vector<std::string> &vars) {
  auto inv = invertRows(gens);
  if (!inv)
    return std::nullopt;
  int n = static_cast<int>(gens.size());
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> c(vars.size());
    for (int k = 0; k < n; ++k)
      c[static_cast<size_t>(k)] = (*inv)[static_cast<size_t>(k)]
                                        [static_cast<size_t>(i)];
    out.push_back(linearForm(c, vars));
  }
  return out;
}

// Brion sum: sum of value/(product of dual forms) over the pieces, cleared
// against the coordinate product of the ambient object.
Poly brionSum(const std::vector<std::pair<Poly, std::vector<Poly>>> &terms,
              const std::vector<std::string> &vars) {
  if (terms.empty())
    return Poly(vars);
  Poly phiObj = Poly::constant(vars, 1);
  for (size_t k = 0; k < vars.size(); ++k)
    phiObj *= Poly::variable(vars, static_cast<int>(k));
  std::vector<Poly> phis;
  for (const auto &t : terms) {
    Poly ph = Poly::constant(vars, 1);
    for (const Poly &f : t.second)
      ph *= f;
    phis.push_back(ph);
  }
  Poly den = Poly::constant(vars, 1);
  for (const Poly &ph : phis)
    den *= ph;
  Poly num(vars);
  for (size_t i = 0; i < terms.size(); ++i) {
    Poly t = terms[i].first;
    for (size_t j = 0; j < terms.size(); ++j)
      if (j != i)
        t *= phis[j];
    num += t;
  }
  return exactDivide(num * phiObj, den);
}

void checkSameStack(const StrictPP &a, const StrictPP &b) {
  if (a.stack.stack != b.stack.stack)
    fail(errkind::StackMismatch,
         "operands live on different cone stacks");
}

void checkShape(const StrictPP &f) {
  require(f.stack.stack != nullptr, "piecewise polynomial without a stack");
  require(static_cast<int>(f.values.size()) == f.stack.stack->numObjects(),
          "one value per object expected");
}

} // namespace

std::vector<std::string> rayVars(const ConeStack &s, int obj) {
  return s.object(obj).rays;
}

StrictPP zeroPP(const ConeStackWithBoundary &stack) {
  return constantPP(stack, Rat(0));
}

StrictPP constantPP(const ConeStackWithBoundary &stack, const Rat &c) {
  StrictPP f{stack, {}};
  for (int o = 0; o < stack.stack->numObjects(); ++o)
    f.values.push_back(Poly::constant(rayVars(*stack.stack, o), c));
  return f;
}

std::vector<std::string> validateStrict(const StrictPP &f) {
  std::vector<std::string> rep;
  if (!f.stack.stack) {
    rep.push_back("missing stack");
    return rep;
  }
  const ConeStack &s = *f.stack.stack;
  if (static_cast<int>(f.values.size()) != s.numObjects()) {
    rep.push_back("value count does not match the object count");
    return rep;
  }
  for (int o = 0; o < s.numObjects(); ++o)
    if (f.values[o].numVars() != s.object(o).dim())
      rep.push_back("object " + s.object(o).id +
                    ": value has the wrong number of variables");
  if (!rep.empty())
    return rep;
  for (int a = 0; a < s.numArrows(); ++a) {
    const StackArrow &ar = s.arrow(a);
    Poly pulled = pullbackLinear(f.values[ar.dst], arrowMatrix(s, a),
                                 f.values[ar.src].vars());
    if (pulled != f.values[ar.src])
      rep.push_back("arrow " + std::to_string(a) + " (" + s.object(ar.src).id +
                    " -> " + s.object(ar.dst).id +
                    "): values are not compatible");
  }
  return rep;
}

std::vector<std::string> validateHom(const StrictPP &f) {
  std::vector<std::string> rep = validateStrict(f);
  if (!rep.empty())
    return rep;
  const ConeStack &s = *f.stack.stack;
  require(f.stack.interior.size() == static_cast<size_t>(s.numObjects()),
          "boundary flags per object expected");
  for (int o = 0; o < s.numObjects(); ++o)
    if (!f.stack.isInterior(o) && !f.values[o].isZero())
      rep.push_back("object " + s.object(o).id +
                    ": nonzero value on a boundary object");
  return rep;
}

HomPP asHom(const StrictPP &f) {
  auto rep = validateHom(f);
  if (!rep.empty())
    fail(errkind::TypeMismatch,
         "not a homological piecewise polynomial: " + rep.front());
  return HomPP{f};
}

StrictPP add(const StrictPP &a, const StrictPP &b) {
  checkShape(a);
  checkShape(b);
  checkSameStack(a, b);
  StrictPP out = a;
  for (size_t o = 0; o < out.values.size(); ++o)
    out.values[o] += b.values[o];
  return out;
}

StrictPP mul(const StrictPP &a, const StrictPP &b) {
  checkShape(a);
  checkShape(b);
  checkSameStack(a, b);
  StrictPP out = a;
  for (size_t o = 0; o < out.values.size(); ++o)
    out.values[o] *= b.values[o];
  return out;
}

StrictPP scale(const StrictPP &a, const Rat &c) {
  StrictPP out = a;
  for (auto &v : out.values)
    v = v.scaled(c);
  return out;
}

bool samePP(const StrictPP &a, const StrictPP &b) {
  return a.stack.stack == b.stack.stack && a.values == b.values;
}

StrictPP pullbackPP(const StrictPP &f, const StackMorphism &m,
                    const ConeStackWithBoundary &src) {
  checkShape(f);
  if (m.dst != f.stack.stack || m.src != src.stack)
    fail(errkind::StackMismatch, "morphism endpoints do not match the data");
  StrictPP out{src, {}};
  const ConeStack &s = *src.stack;
  for (int o = 0; o < s.numObjects(); ++o)
    out.values.push_back(
        pullbackLinear(f.values[m.objMap[o]], m.lattice[o], rayVars(s, o)));
  return out;
}

PPClass classOf(const StrictPP &f) {
  checkShape(f);
  PPClass out{trivialSubdivision(f.stack.stack), f.stack.interior, {}};
  for (const Poly &v : f.values)
    out.values.push_back({v});
  return out;
}

PPClass restrictTo(const PPClass &f, const Subdivision &finer) {
  if (!sameBase(f.sub, finer))
    fail(errkind::StackMismatch, "subdivisions of different stacks");
  if (!refines(finer, f.sub))
    fail(errkind::HistoryMismatch,
         "restriction target does not refine the carrier subdivision");
  const ConeStack &s = *f.sub.stack;
  PPClass out{finer, f.interior, {}};
  for (int o = 0; o < s.numObjects(); ++o) {
    std::vector<Poly> row;
    for (const Cone &c : finer.maxCones[o]) {
      int hit = -1;
      for (size_t k = 0; k < f.sub.maxCones[o].size() && hit < 0; ++k)
        if (coneContainsCone(c, f.sub.maxCones[o][k]))
          hit = static_cast<int>(k);
      require(hit >= 0, "refinement cone not covered");
      row.push_back(f.values[o][static_cast<size_t>(hit)]);
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

PPClass add(const PPClass &a, const PPClass &b) {
  if (!sameBase(a.sub, b.sub))
    fail(errkind::StackMismatch, "operands live on different cone stacks");
  Subdivision r = commonRefinement(a.sub, b.sub);
  PPClass ra = restrictTo(a, r);
  PPClass rb = restrictTo(b, r);
  for (size_t o = 0; o < ra.values.size(); ++o)
    for (size_t k = 0; k < ra.values[o].size(); ++k)
      ra.values[o][k] += rb.values[o][k];
  return ra;
}

PPClass mul(const PPClass &a, const PPClass &b) {
  if (!sameBase(a.sub, b.sub))
    fail(errkind::StackMismatch, "operands live on different cone stacks");
  Subdivision r = commonRefinement(a.sub, b.sub);
  PPClass ra = restrictTo(a, r);
  PPClass rb = restrictTo(b, r);
  for (size_t o = 0; o < ra.values.size(); ++o)
    for (size_t k = 0; k < ra.values[o].size(); ++k)
      ra.values[o][k] *= rb.values[o][k];
  return ra;
}

PPClass scale(const PPClass &a, const Rat &c) {
  PPClass out = a;
  for (auto &row : out.values)
    for (auto &v : row)
      v = v.scaled(c);
  return out;
}

bool classEqual(const PPClass &a, const PPClass &b) {
  if (!sameBase(a.sub, b.sub))
    fail(errkind::StackMismatch, "operands live on different cone stacks");
  Subdivision r = commonRefinement(a.sub, b.sub);
  return restrictTo(a, r).values == restrictTo(b, r).values;
}

Rat classEval(const PPClass &f, int obj, const IVec &p) {
  const ConeStack &s = *f.sub.stack;
  if (obj < 0 || obj >= s.numObjects())
    fail(errkind::UnknownObject, "object index out of range");
  int k = maxConeContaining(f.sub, obj, p);
  require(k >= 0, "evaluation point outside the object cone");
  std::vector<Rat> pt;
  for (long long x : p)
    pt.push_back(Rat(static_cast<long>(x)));
  return f.values[obj][static_cast<size_t>(k)].evaluate(pt);
}

std::vector<std::string> validateClass(const PPClass &f) {
  std::vector<std::string> rep;
  const ConeStack &s = *f.sub.stack;
  if (f.values.size() != static_cast<size_t>(s.numObjects())) {
    rep.push_back("value rows do not match the object count");
    return rep;
  }
  for (int o = 0; o < s.numObjects(); ++o) {
    if (f.values[o].size() != f.sub.maxCones[o].size()) {
      rep.push_back("object " + s.object(o).id +
                    ": one value per maximal cone expected");
      return rep;
    }
    for (const Poly &v : f.values[o])
      if (v.numVars() != s.object(o).dim()) {
        rep.push_back("object " + s.object(o).id +
                      ": value has the wrong number of variables");
        return rep;
      }
  }
  // Neighboring maximal cones agree on the face spanned by their shared
  // generators.
  for (int o = 0; o < s.numObjects(); ++o) {
    const auto &cones = f.sub.maxCones[o];
    for (size_t i = 0; i < cones.size(); ++i)
      for (size_t j = i + 1; j < cones.size(); ++j) {
        std::set<IVec> left(cones[i].gens.begin(), cones[i].gens.end());
        std::vector<IVec> shared;
        for (const IVec &g : cones[j].gens)
          if (left.count(g))
            shared.push_back(g);
        if (shared.empty())
          continue;
        auto tvars = makeVarNames("t", static_cast<int>(shared.size()));
        if (pullbackLinear(f.values[o][i], shared, tvars) !=
            pullbackLinear(f.values[o][j], shared, tvars))
          rep.push_back("object " + s.object(o).id + ": cones " +
                        std::to_string(i) + " and " + std::to_string(j) +
                        " disagree on their shared face");
      }
  }
  // Arrows carry cone values into each other.
  for (int a = 0; a < s.numArrows(); ++a) {
    const StackArrow &ar = s.arrow(a);
    for (size_t k = 0; k < f.sub.maxCones[ar.src].size(); ++k) {
      Cone img = arrowImageCone(s, a, f.sub.maxCones[ar.src][k]);
      int hit = -1;
      for (size_t k2 = 0; k2 < f.sub.maxCones[ar.dst].size() && hit < 0; ++k2)
        if (coneContainsCone(img, f.sub.maxCones[ar.dst][k2]))
          hit = static_cast<int>(k2);
      if (hit < 0) {
        rep.push_back("arrow " + std::to_string(a) +
                      ": image cone not covered by the target subdivision");
        continue;
      }
      Poly pulled =
          pullbackLinear(f.values[ar.dst][static_cast<size_t>(hit)],
                         arrowMatrix(s, a), f.values[ar.src][k].vars());
      if (pulled != f.values[ar.src][k])
        rep.push_back("arrow " + std::to_string(a) + ": cone " +
                      std::to_string(k) + " value incompatible");
    }
  }
  return rep;
}

StrictPP pushforwardCoarsen(const PPClass &f) {
  const ConeStack &s = *f.sub.stack;
  require(f.values.size() == static_cast<size_t>(s.numObjects()),
          "value rows per object expected");
  StrictPP out{{f.sub.stack, f.interior}, {}};
  for (int o = 0; o < s.numObjects(); ++o) {
    auto vars = rayVars(s, o);
    std::vector<std::pair<Poly, std::vector<Poly>>> terms;
    for (size_t k = 0; k < f.sub.maxCones[o].size(); ++k) {
      auto forms = dualForms(f.sub.maxCones[o][k].gens, vars);
      require(forms.has_value(), "maximal cone is full dimensional");
      terms.emplace_back(f.values[o][k], *forms);
    }
    out.values.push_back(brionSum(terms, vars));
  }
  return out;
}

StrictPP pushforwardMorphism(const StrictPP &f, const StackMorphism &pi,
                             const ConeStackWithBoundary &target) {
  checkShape(f);
  if (pi.src != f.stack.stack || pi.dst != target.stack)
    fail(errkind::StackMismatch, "morphism endpoints do not match the data");
  const ConeStack &S = *pi.src;
  const ConeStack &D = *pi.dst;
  for (int o = 0; o < S.numObjects(); ++o)
    if (D.object(pi.objMap[o]).dim() != S.object(o).dim())
      fail(errkind::NotRelDimZero,
           "object " + S.object(o).id + " changes dimension");

  StrictPP out{target, {}};
  for (int t = 0; t < D.numObjects(); ++t) {
    auto vars = rayVars(D, t);
    // Fiber over t: source objects with an invertible arrow from their image.
    std::vector<std::pair<int, int>> pairs; // (source object, arrow in D)
    std::map<std::pair<int, int>, int> indexOf;
    for (int o = 0; o < S.numObjects(); ++o)
      for (int u : D.arrowsBetween(pi.objMap[o], t))
        if (D.isInvertible(u)) {
          indexOf[{o, u}] = static_cast<int>(pairs.size());
          pairs.emplace_back(o, u);
        }
    // Group under transport along invertibles upstairs.
    std::vector<int> cls(pairs.size(), -1);
    int numClasses = 0;
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (cls[i] >= 0)
        continue;
      std::vector<int> todo{static_cast<int>(i)};
      cls[i] = numClasses;
      while (!todo.empty()) {
        int j = todo.back();
        todo.pop_back();
        auto [o, u] = pairs[static_cast<size_t>(j)];
        for (int w : S.arrowsFrom(o)) {
          if (!S.isInvertible(w))
            continue;
          int piw = pi.arrMap[w];
          int transported = D.compose(D.inverseArrow(piw), u);
          auto it = indexOf.find({S.arrow(w).dst, transported});
          require(it != indexOf.end(), "fiber closed under transport");
          if (cls[static_cast<size_t>(it->second)] < 0) {
            cls[static_cast<size_t>(it->second)] = numClasses;
            todo.push_back(it->second);
          }
        }
      }
      ++numClasses;
    }
    std::vector<std::pair<Poly, std::vector<Poly>>> terms;
    for (int c = 0; c < numClasses; ++c) {
      int rep = -1;
      for (size_t i = 0; i < pairs.size() && rep < 0; ++i)
        if (cls[i] == c)
          rep = static_cast<int>(i);
      auto [o, u] = pairs[static_cast<size_t>(rep)];
      long aut = 0;
      for (int w : S.arrowsBetween(o, o))
        if (S.isInvertible(w) && D.compose(pi.arrMap[w], u) == u)
          ++aut;
      require(aut > 0, "identity stabilizes every factorization");
      IMat gens = matMul(arrowMatrix(D, u), pi.lattice[o],
                         D.object(t).dim());
      auto forms = dualForms(gens, vars);
      if (!forms)
        fail(errkind::NotRelDimZero,
             "cone of " + S.object(o).id + " degenerates over " +
                 D.object(t).id);
      Poly value = f.values[o].substitute(*forms, vars).scaled(
          Rat(1) / Rat(aut));
      terms.emplace_back(std::move(value), *forms);
    }
    out.values.push_back(brionSum(terms, vars));
  }
  return out;
}

HomPP pushforwardMorphism(const HomPP &f, const StackMorphism &pi,
                          const ConeStackWithBoundary &target) {
  return asHom(pushforwardMorphism(f.pp, pi, target));
}

std::vector<std::string> pushforwardLiftingReport(const StackMorphism &pi) {
  std::vector<std::string> rep;
  const ConeStack &S = *pi.src;
  const ConeStack &D = *pi.dst;
  for (int o = 0; o < S.numObjects(); ++o) {
    for (int v : D.arrowsFrom(pi.objMap[o])) {
      bool found = false;
      for (int w : S.arrowsFrom(o)) {
        int piw = pi.arrMap[w];
        for (int i : D.arrowsBetween(D.arrow(piw).dst, D.arrow(v).dst)) {
          if (D.isInvertible(i) && D.compose(piw, i) == v) {
            found = true;
            break;
          }
        }
        if (found)
          break;
      }
      if (!found)
        rep.push_back("object " + S.object(o).id + ": arrow " +
                      std::to_string(v) + " out of its image has no lift");
    }
  }
  return rep;
}

PPClass minFn(const ConeStackWithBoundary &stack, int obj,
              const std::vector<int> &rayIdx) {
  const ConeStack &s = *stack.stack;
  if (obj < 0 || obj >= s.numObjects())
    fail(errkind::UnknownObject, "object index out of range");
  require(!rayIdx.empty(), "minimum over at least one ray");
  int dim = s.object(obj).dim();
  std::vector<int> idx = rayIdx;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int i : idx)
    require(i >= 0 && i < dim, "ray index out of range");
  std::vector<std::string> names;
  for (int i : idx)
    names.push_back(s.object(obj).rays[static_cast<size_t>(i)]);

  Subdivision sub = trivialSubdivision(stack.stack);
  if (idx.size() >= 2) {
    Cone carrier = faceSpannedBy(fullOrthant(dim), idx);
    IVec b(static_cast<size_t>(dim), 0);
    for (int i : idx)
      b[static_cast<size_t>(i)] = 1;
    sub = stellarAt(sub, obj, carrier, b);
  }

  PPClass out{sub, stack.interior, {}};
  for (int o = 0; o < s.numObjects(); ++o) {
    const auto &rays = s.object(o).rays;
    std::vector<int> pos;
    bool all = true;
    for (const std::string &nm : names) {
      auto it = std::find(rays.begin(), rays.end(), nm);
      if (it == rays.end())
        all = false;
      else
        pos.push_back(static_cast<int>(it - rays.begin()));
    }
    auto vars = rayVars(s, o);
    auto minAt = [&](const IVec &p) {
      Rat m = Rat(static_cast<long>(p[static_cast<size_t>(pos[0])]));
      for (int q : pos) {
        Rat v = Rat(static_cast<long>(p[static_cast<size_t>(q)]));
        if (v < m)
          m = v;
      }
      return m;
    };
    std::vector<Poly> row;
    for (const Cone &c : sub.maxCones[o]) {
      if (!all) {
        row.push_back(Poly(vars));
        continue;
      }
      std::vector<Rat> mv;
      for (const IVec &g : c.gens)
        mv.push_back(minAt(g));
      auto inv = invertRows(c.gens);
      require(inv.has_value(), "maximal cone is full dimensional");
      std::vector<Rat> coeff(vars.size());
      for (size_t k = 0; k < coeff.size(); ++k)
        for (size_t i = 0; i < mv.size(); ++i)
          coeff[k] += (*inv)[k][i] * mv[i];
      // The interpolation is only valid when the minimum is linear on the
      // cone; the generator sum is a certificate for concave functions.
      IVec tot(static_cast<size_t>(c.ambient), 0);
      Rat sumv(0);
      for (size_t i = 0; i < c.gens.size(); ++i) {
        for (size_t k = 0; k < tot.size(); ++k)
          tot[k] += c.gens[i][k];
        sumv += mv[i];
      }
      require(minAt(tot) == sumv, "minimum linear on each subdivision cone");
      row.push_back(linearForm(coeff, vars));
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

std::vector<StrictPP> degreeBasis(const ConeStackWithBoundary &stack, int d,
                                  bool homological) {
  const ConeStack &s = *stack.stack;
  require(d >= 0, "nonnegative degree expected");
  require(stack.interior.size() == static_cast<size_t>(s.numObjects()),
          "boundary flags per object expected");
  int n = s.numObjects();
  std::vector<std::vector<Exp>> monos(static_cast<size_t>(n));
  std::vector<int> base(static_cast<size_t>(n) + 1, 0);
  for (int o = 0; o < n; ++o) {
    if (!homological || stack.isInterior(o))
      monos[o] = monomialsOfDegree(s.object(o).dim(), d);
    base[o + 1] = base[o] + static_cast<int>(monos[o].size());
  }
  int cols = base[static_cast<size_t>(n)];
  if (cols == 0)
    return {};

  std::vector<std::vector<Rat>> rows;
  for (int a = 0; a < s.numArrows(); ++a) {
    const StackArrow &ar = s.arrow(a);
    auto srcMonos = monomialsOfDegree(s.object(ar.src).dim(), d);
    if (srcMonos.empty())
      continue;
    std::map<Exp, int> posOf;
    for (size_t t = 0; t < srcMonos.size(); ++t)
      posOf[srcMonos[t]] = static_cast<int>(t);
    std::vector<std::vector<Rat>> local(
        srcMonos.size(), std::vector<Rat>(static_cast<size_t>(cols)));
    if (!monos[ar.src].empty())
      for (size_t t = 0; t < srcMonos.size(); ++t)
        local[t][static_cast<size_t>(base[ar.src]) + t] += Rat(1);
    auto srcVars = rayVars(s, ar.src);
    auto dstVars = rayVars(s, ar.dst);
    IMat mat = arrowMatrix(s, a);
    for (size_t j = 0; j < monos[ar.dst].size(); ++j) {
      Poly mono(dstVars);
      mono.addTerm(monos[ar.dst][j], Rat(1));
      Poly pb = pullbackLinear(mono, mat, srcVars);
      for (const auto &[e, c] : pb.terms()) {
        auto it = posOf.find(e);
        require(it != posOf.end(), "pullback stays in the graded piece");
        local[static_cast<size_t>(it->second)]
             [static_cast<size_t>(base[ar.dst]) + j] -= c;
      }
    }
    for (auto &r : local) {
      bool any = false;
      for (const Rat &x : r)
        if (!x.isZero()) {
          any = true;
          break;
        }
      if (any)
        rows.push_back(std::move(r));
    }
  }

  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c)
      m.at(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
  auto kernel = kernelBasis(m);

  std::vector<StrictPP> out;
  for (const auto &v : kernel) {
    StrictPP f{stack, {}};
    for (int o = 0; o < n; ++o) {
      Poly p(rayVars(s, o));
      for (size_t j = 0; j < monos[o].size(); ++j) {
        const Rat &c = v[static_cast<size_t>(base[o]) + j];
        if (!c.isZero())
          p.addTerm(monos[o][j], c);
      }
      f.values.push_back(std::move(p));
    }
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace logchow
