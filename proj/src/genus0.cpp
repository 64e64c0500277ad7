// Genus-zero quotient ring machinery: divisor ray functions, the lifted
// four-point relations, cone-supported monomial spanning sets on stellar
// subdivisions, and rank or membership decisions against the relation ideal
// by exact elimination.
#include "logchow/genus0.hpp"

#include "logchow/error.hpp"
#include "logchow/matrix.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace logchow {

namespace {

ConeStackWithBoundary allInterior(const StackPtr &s) {
  return ConeStackWithBoundary{
      s, std::vector<char>(static_cast<size_t>(s->numObjects()), 1)};
}

// Per object and ray, the one-dimensional object carrying that ray class.
std::vector<std::vector<int>> rayDivisorTable(const ModuliStack &ms) {
  const ConeStack &S = *ms.stack;
  std::vector<std::vector<int>> t(static_cast<size_t>(S.numObjects()));
  for (int o = 0; o < S.numObjects(); ++o) {
    t[static_cast<size_t>(o)].assign(
        static_cast<size_t>(S.object(o).dim()), -1);
    if (S.object(o).dim() == 1)
      t[static_cast<size_t>(o)][0] = o;
  }
  for (int a = 0; a < S.numArrows(); ++a) {
    const StackArrow &ar = S.arrow(a);
    if (S.object(ar.src).dim() != 1)
      continue;
    int &slot = t[static_cast<size_t>(ar.dst)]
                 [static_cast<size_t>(ar.rayMap[0])];
    require(slot == -1 || slot == ar.src, "ray with two divisor classes");
    slot = ar.src;
  }
  for (const auto &row : t)
    for (int v : row)
      require(v >= 0, "ray not covered by a divisor arrow");
  return t;
}

StrictPP divisorPPByObject(const ModuliStack &ms,
                           const std::vector<std::vector<int>> &table,
                           int dv) {
  const ConeStack &S = *ms.stack;
  StrictPP f = zeroPP(allInterior(ms.stack));
  for (int o = 0; o < S.numObjects(); ++o) {
    std::vector<std::string> vars = rayVars(S, o);
    Poly p(vars);
    for (int r = 0; r < S.object(o).dim(); ++r)
      if (table[static_cast<size_t>(o)][static_cast<size_t>(r)] == dv)
        p += Poly::variable(vars, r);
    f.values[static_cast<size_t>(o)] = p;
  }
  return f;
}

int divisorObjectOf(const ModuliStack &ms, int n, unsigned mask) {
  std::vector<int> legVertex(static_cast<size_t>(n), 1);
  for (int m = 1; m <= n; ++m)
    if (mask & (1u << (m - 1)))
      legVertex[static_cast<size_t>(m - 1)] = 0;
  StableGraph G = makeGraph({0, 0}, {{0, 1}}, legVertex);
  int o = ms.objectOf(G);
  require(o >= 0, "divisor graph missing from the stack");
  return o;
}

// Home of a subcone: the object whose orthant is spanned by the coordinate
// support, the cone rewritten there with sorted generators, and for each
// sorted generator its index in the input list.
struct FaceHome {
  int obj = -1;
  Cone cone;
  std::vector<int> order;
};

FaceHome faceHome(const ConeStack &S, int obj, const std::vector<IVec> &gens) {
  int dim = S.object(obj).dim();
  std::vector<char> used(static_cast<size_t>(dim), 0);
  for (const IVec &g : gens)
    for (int i = 0; i < dim; ++i)
      if (g[static_cast<size_t>(i)] != 0)
        used[static_cast<size_t>(i)] = 1;
  std::vector<int> supp;
  for (int i = 0; i < dim; ++i)
    if (used[static_cast<size_t>(i)])
      supp.push_back(i);

  int arrowIdx = -1;
  for (int a : S.arrowsTo(obj)) {
    const StackArrow &ar = S.arrow(a);
    if (S.object(ar.src).dim() != static_cast<int>(supp.size()))
      continue;
    std::vector<int> im(ar.rayMap);
    std::sort(im.begin(), im.end());
    if (im != supp)
      continue;
    require(arrowIdx == -1, "coordinate face reached by two arrows");
    arrowIdx = a;
  }
  require(arrowIdx >= 0, "coordinate face not covered by an arrow");
  const StackArrow &ar = S.arrow(arrowIdx);

  int k = static_cast<int>(supp.size());
  std::vector<IVec> local(gens.size(), IVec(static_cast<size_t>(k), 0));
  for (size_t j = 0; j < gens.size(); ++j)
    for (int t = 0; t < k; ++t)
      local[j][static_cast<size_t>(t)] =
          gens[j][static_cast<size_t>(ar.rayMap[static_cast<size_t>(t)])];

  std::vector<int> idx(gens.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int x, int y) { return local[static_cast<size_t>(x)] <
                                       local[static_cast<size_t>(y)]; });
  FaceHome fh;
  fh.obj = ar.src;
  fh.cone.ambient = k;
  for (int t : idx)
    fh.cone.gens.push_back(local[static_cast<size_t>(t)]);
  fh.order = idx;
  return fh;
}

void forEachPositiveComposition(int d, int k,
                                const std::function<void(
                                    const std::vector<int> &)> &fn) {
  if (k == 0) {
    if (d == 0)
      fn({});
    return;
  }
  std::vector<int> parts(static_cast<size_t>(k), 1);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot + 1 == k) {
      parts[static_cast<size_t>(slot)] = left;
      fn(parts);
      return;
    }
    for (int take = 1; take <= left - (k - slot - 1); ++take) {
      parts[static_cast<size_t>(slot)] = take;
      rec(slot + 1, left - take);
    }
  };
  if (d < k)
    return;
  rec(0, d);
}

std::string entryKey(const FaceHome &fh, const std::vector<int> &exps) {
  std::ostringstream os;
  os << fh.obj << "|" << coneKey(fh.cone) << "|";
  for (int e : exps)
    os << e << ",";
  return os.str();
}

// Integer inverse of the column matrix of a smooth full-dimensional cone.
IMat inverseColumns(const std::vector<IVec> &gens) {
  int k = static_cast<int>(gens.size());
  std::vector<std::vector<Rat>> m(static_cast<size_t>(k),
                                  std::vector<Rat>(static_cast<size_t>(2 * k)));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c)
      m[static_cast<size_t>(r)][static_cast<size_t>(c)] = Rat(
          static_cast<long>(gens[static_cast<size_t>(c)][static_cast<size_t>(r)]));
    m[static_cast<size_t>(r)][static_cast<size_t>(k + r)] = Rat(1);
  }
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].isZero()) {
        piv = r;
        break;
      }
    require(piv >= 0, "cone basis is singular");
    std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(col)]);
    Rat lead = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int c = 0; c < 2 * k; ++c)
      m[static_cast<size_t>(col)][static_cast<size_t>(c)] /= lead;
    for (int r = 0; r < k; ++r) {
      if (r == col)
        continue;
      Rat f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.isZero())
        continue;
      for (int c = 0; c < 2 * k; ++c)
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            f * m[static_cast<size_t>(col)][static_cast<size_t>(c)];
    }
  }
  IMat inv(static_cast<size_t>(k), IVec(static_cast<size_t>(k), 0));
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < k; ++r) {
      const Rat &x = m[static_cast<size_t>(r)][static_cast<size_t>(k + i)];
      require(x.isInteger(), "smooth cone basis has a non-integer inverse");
      inv[static_cast<size_t>(i)][static_cast<size_t>(r)] = x.num().get_si();
    }
  return inv;
}

std::vector<std::vector<Rat>> relationRows(int n, const MonomialBasis &bd,
                                           const MonomialBasis &blow) {
  auto gens = wdvvGenerators(n);
  std::vector<PPClass> rg;
  rg.reserve(gens.size());
  for (const auto &g : gens)
    rg.push_back(restrictTo(classOf(g.cls), bd.sub));
  std::vector<PPClass> mono;
  mono.reserve(blow.entries.size());
  for (size_t i = 0; i < blow.entries.size(); ++i)
    mono.push_back(monomialClass(blow, static_cast<int>(i)));

  int nm = static_cast<int>(mono.size());
  int total = static_cast<int>(rg.size()) * nm;
  std::vector<std::vector<Rat>> rows(static_cast<size_t>(total));
  std::exception_ptr err;
  std::mutex mu;
  parallelFor(
      total,
      [&](int i) {
        try {
          PPClass prod = mul(rg[static_cast<size_t>(i / nm)],
                             mono[static_cast<size_t>(i % nm)]);
          rows[static_cast<size_t>(i)] = monomialCoords(prod, bd);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err)
            err = std::current_exception();
        }
      },
      defaultExec());
  if (err)
    std::rethrow_exception(err);

  std::vector<std::vector<Rat>> out;
  for (auto &r : rows) {
    bool zero = true;
    for (const Rat &x : r)
      if (!x.isZero()) {
        zero = false;
        break;
      }
    if (!zero)
      out.push_back(std::move(r));
  }
  return out;
}

long rowsRank(const std::vector<std::vector<Rat>> &rows, int cols) {
  if (rows.empty() || cols == 0)
    return 0;
  RatMatrix M(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c)
      M.at(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
  return rank(M, defaultExec());
}

} // namespace

StrictPP divisorClassPP(int n, const std::vector<int> &A) {
  if (n < 4)
    fail(errkind::Unstable, "divisor classes need at least four markings");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int m : A) {
    if (m < 1 || m > n)
      fail(errkind::Unstable, "marking out of range");
    if (seen[static_cast<size_t>(m - 1)])
      fail(errkind::Unstable, "repeated marking in the side set");
    seen[static_cast<size_t>(m - 1)] = 1;
  }
  if (static_cast<int>(A.size()) < 2 || static_cast<int>(A.size()) > n - 2)
    fail(errkind::Unstable, "side set must leave two markings on each side");
  const ModuliStack &ms = moduliRegistry(0, n);
  unsigned mask = 0;
  for (int m : A)
    mask |= 1u << (m - 1);
  auto table = rayDivisorTable(ms);
  return divisorPPByObject(ms, table, divisorObjectOf(ms, n, mask));
}

std::vector<WdvvGenerator> wdvvGenerators(int n) {
  if (n < 4)
    fail(errkind::Unstable,
         "four point relations need at least four markings");
  const ModuliStack &ms = moduliRegistry(0, n);
  auto table = rayDivisorTable(ms);
  std::map<int, StrictPP> ppCache;
  auto divisorPP = [&](int dv) -> const StrictPP & {
    auto it = ppCache.find(dv);
    if (it == ppCache.end())
      it = ppCache.emplace(dv, divisorPPByObject(ms, table, dv)).first;
    return it->second;
  };
  auto splitSum = [&](int i, int j, int k, int l) {
    StrictPP acc = zeroPP(allInterior(ms.stack));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (!(mask & (1u << (i - 1))) || !(mask & (1u << (j - 1))) ||
          (mask & (1u << (k - 1))) || (mask & (1u << (l - 1))))
        continue;
      acc = add(acc, divisorPP(divisorObjectOf(ms, n, mask)));
    }
    return acc;
  };
  std::vector<WdvvGenerator> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          std::array<std::array<int, 4>, 3> pats = {
              {{a, b, c, d}, {a, c, b, d}, {a, d, b, c}}};
          for (const auto &p : pats) {
            WdvvGenerator g;
            g.n = n;
            g.quad = p;
            g.cls = add(splitSum(p[0], p[1], p[2], p[3]),
                        scale(splitSum(p[0], p[2], p[1], p[3]), Rat(-1)));
            out.push_back(std::move(g));
          }
        }
  return out;
}

MonomialBasis monomialBasis(const Subdivision &sub, int d) {
  require(d >= 0, "monomial degree must be nonnegative");
  const ConeStack &S = *sub.stack;
  for (int o = 0; o < S.numObjects(); ++o)
    require(S.autArrows(o).size() == 1,
            "monomial spanning sets need a multiplicity-free stack");
  MonomialBasis out;
  out.sub = sub;
  out.degree = d;
  for (int o = 0; o < S.numObjects(); ++o) {
    const auto &cones = sub.maxCones[static_cast<size_t>(o)];
    for (size_t mc = 0; mc < cones.size(); ++mc) {
      const Cone &C = cones[mc];
      int k = C.dim();
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int sz = __builtin_popcount(mask);
        if (sz > d || (sz == 0 && d > 0))
          continue;
        std::vector<IVec> gens;
        std::vector<int> T;
        for (int t = 0; t < k; ++t)
          if (mask & (1u << t)) {
            gens.push_back(C.gens[static_cast<size_t>(t)]);
            T.push_back(t);
          }
        FaceHome fh = faceHome(S, o, gens);
        forEachPositiveComposition(d, sz, [&](const std::vector<int> &exps) {
          std::string key = entryKey(fh, exps);
          if (out.pos.count(key))
            return;
          ConeMonomial m;
          m.obj = fh.obj;
          m.cone = fh.cone;
          m.exps = exps;
          m.witnessObj = o;
          m.witnessMax = static_cast<int>(mc);
          for (int t : fh.order)
            m.witnessGens.push_back(T[static_cast<size_t>(t)]);
          out.pos.emplace(std::move(key),
                          static_cast<int>(out.entries.size()));
          out.entries.push_back(std::move(m));
        });
      }
    }
  }
  return out;
}

std::vector<Rat> monomialCoords(const PPClass &f, const MonomialBasis &basis) {
  require(sameBase(f.sub, basis.sub) &&
              f.values.size() == basis.sub.maxCones.size(),
          "class and basis live on different subdivisions");
  std::vector<Rat> v(basis.entries.size());
  std::map<std::pair<int, int>, Poly> cache;
  for (size_t i = 0; i < basis.entries.size(); ++i) {
    const ConeMonomial &E = basis.entries[i];
    const Poly &val = f.values[static_cast<size_t>(E.witnessObj)]
                              [static_cast<size_t>(E.witnessMax)];
    if (val.isZero())
      continue;
    require(val.isHomogeneousOfDegree(basis.degree),
            "coordinates need a homogeneous class of the basis degree");
    auto key = std::make_pair(E.witnessObj, E.witnessMax);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const Cone &C = basis.sub.maxCones[static_cast<size_t>(E.witnessObj)]
                                        [static_cast<size_t>(E.witnessMax)];
      Poly q = pullbackLinear(val, C.gens, makeVarNames("y", C.dim()));
      it = cache.emplace(key, std::move(q)).first;
    }
    Exp e(static_cast<size_t>(it->second.numVars()), 0);
    for (size_t t = 0; t < E.witnessGens.size(); ++t)
      e[static_cast<size_t>(E.witnessGens[t])] = E.exps[t];
    v[i] = it->second.coeff(e);
  }
  return v;
}

PPClass monomialClass(const MonomialBasis &basis, int entry) {
  require(entry >= 0 && entry < static_cast<int>(basis.entries.size()),
          "monomial index out of range");
  const ConeMonomial &E = basis.entries[static_cast<size_t>(entry)];
  const ConeStack &S = *basis.sub.stack;
  int edim = E.cone.dim();
  PPClass out;
  out.sub = basis.sub;
  out.interior.assign(static_cast<size_t>(S.numObjects()), 1);
  out.values.resize(static_cast<size_t>(S.numObjects()));
  for (int o = 0; o < S.numObjects(); ++o) {
    std::vector<std::string> vars = rayVars(S, o);
    const auto &cones = basis.sub.maxCones[static_cast<size_t>(o)];
    for (const Cone &C : cones) {
      int k = C.dim();
      Poly value(vars);
      if (edim <= k) {
        IMat inv = inverseColumns(C.gens);
        std::vector<std::string> yv = makeVarNames("y", k);
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
          if (__builtin_popcount(mask) != edim)
            continue;
          std::vector<IVec> gens;
          std::vector<int> T;
          for (int t = 0; t < k; ++t)
            if (mask & (1u << t)) {
              gens.push_back(C.gens[static_cast<size_t>(t)]);
              T.push_back(t);
            }
          FaceHome fh = faceHome(S, o, gens);
          if (fh.obj != E.obj || !(fh.cone == E.cone))
            continue;
          Exp e(static_cast<size_t>(k), 0);
          for (size_t t = 0; t < fh.order.size(); ++t)
            e[static_cast<size_t>(T[static_cast<size_t>(fh.order[t])])] =
                E.exps[t];
          Poly mono(yv);
          mono.addTerm(e, Rat(1));
          value += pullbackLinear(mono, inv, vars);
        }
      }
      out.values[static_cast<size_t>(o)].push_back(value);
    }
  }
  return out;
}

int logChowRank(int n, int d, const Subdivision &sub) {
  require(n >= 3 && d >= 0, "rank needs a stable type and nonnegative degree");
  const ModuliStack &ms = moduliRegistry(0, n);
  require(sameBase(trivialSubdivision(ms.stack), sub),
          "subdivision must live on the stack of the requested type");
  if (d == 0)
    return 1;
  MonomialBasis bd = monomialBasis(sub, d);
  if (bd.entries.empty())
    return 0;
  if (n < 4)
    return static_cast<int>(bd.entries.size());
  MonomialBasis blow = monomialBasis(sub, d - 1);
  auto rows = relationRows(n, bd, blow);
  return static_cast<int>(bd.entries.size()) -
         static_cast<int>(rowsRank(rows, static_cast<int>(bd.entries.size())));
}

int keelRank(int n, int d) {
  static std::map<std::pair<int, int>, int> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, d});
    if (it != cache.end())
      return it->second;
  }
  const ModuliStack &ms = moduliRegistry(0, n);
  int v = logChowRank(n, d, trivialSubdivision(ms.stack));
  std::lock_guard<std::mutex> lock(mu);
  cache[{n, d}] = v;
  return v;
}

bool logChowEqual(int n, const PPClass &a, const PPClass &b, int d) {
  require(n >= 3 && d >= 0,
          "equality needs a stable type and nonnegative degree");
  const ModuliStack &ms = moduliRegistry(0, n);
  Subdivision triv = trivialSubdivision(ms.stack);
  require(sameBase(triv, a.sub) && sameBase(triv, b.sub),
          "classes must live on the stack of the requested type");
  PPClass diff = add(a, scale(b, Rat(-1)));
  MonomialBasis bd = monomialBasis(diff.sub, d);
  std::vector<Rat> v = monomialCoords(diff, bd);
  bool zero = true;
  for (const Rat &x : v)
    if (!x.isZero()) {
      zero = false;
      break;
    }
  if (d == 0 || n < 4 || zero)
    return zero;
  MonomialBasis blow = monomialBasis(diff.sub, d - 1);
  auto rows = relationRows(n, bd, blow);
  RowSpan span(static_cast<int>(bd.entries.size()));
  for (auto &r : rows)
    span.add(std::move(r));
  return span.contains(v);
}

StrictPP strataToKeelPP(const StrataElem &a) {
  require(a.g == 0, "side-set divisor classes exist in genus zero only");
  const ModuliStack &ms = moduliRegistry(0, a.n);
  auto table = rayDivisorTable(ms);
  std::map<int, StrictPP> ppCache;
  auto divisorPP = [&](int dv) -> const StrictPP & {
    auto it = ppCache.find(dv);
    if (it == ppCache.end())
      it = ppCache.emplace(dv, divisorPPByObject(ms, table, dv)).first;
    return it->second;
  };
  ConeStackWithBoundary wb = allInterior(ms.stack);
  StrictPP out = zeroPP(wb);
  for (const auto &[key, tc] : a.terms) {
    const DecStratum &s = tc.first;
    if (!decorationTrivial(s.decoration))
      fail(errkind::DecorationNotTrivial,
           "only undecorated strata map to divisor products");
    int o = ms.objectOf(s.graph);
    require(o >= 0, "term graph outside the moduli type");
    StrictPP term = constantPP(wb, Rat(1));
    for (int r = 0; r < ms.stack->object(o).dim(); ++r)
      term = mul(term,
                 divisorPP(table[static_cast<size_t>(o)][static_cast<size_t>(r)]));
    out = add(out, scale(term, tc.second));
  }
  return out;
}

} // namespace logchow
