// Decorated strata algebra: canonical kappa/psi decorations, the product as
// a stabilizer-weighted sum over generic contraction diagrams with psi
// excess on shared edges, and the split/graft maps along one gluing level.
#include "logchow/strata.hpp"

#include "logchow/error.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

namespace logchow {

namespace {

bool sameGraphData(const StableGraph &a, const StableGraph &b) {
  return a.genus == b.genus && a.vertexOf == b.vertexOf &&
         a.involution == b.involution && a.markingOf == b.markingOf;
}

void addKappa(std::vector<std::pair<int, int>> &list, int a, int e) {
  for (auto &p : list)
    if (p.first == a) {
      p.second += e;
      return;
    }
  list.push_back({a, e});
  std::sort(list.begin(), list.end());
}

Decoration mergeDecorations(const Decoration &a, const Decoration &b) {
  Decoration out = a;
  for (size_t v = 0; v < b.kappa.size(); ++v)
    for (auto [ka, ke] : b.kappa[v])
      addKappa(out.kappa[v], ka, ke);
  for (size_t h = 0; h < b.psi.size(); ++h)
    out.psi[h] += b.psi[h];
  return out;
}

void checkDecorationShape(const StableGraph &G, const Decoration &d) {
  require(d.kappa.size() == static_cast<size_t>(G.numVertices()) &&
              d.psi.size() == static_cast<size_t>(G.numHalfEdges()),
          "decoration shape must match the graph");
  for (const auto &list : d.kappa)
    for (size_t i = 0; i < list.size(); ++i) {
      require(list[i].first >= 1 && list[i].second >= 1,
              "kappa entries need positive index and exponent");
      require(i == 0 || list[i - 1].first < list[i].first,
              "kappa entries must be sorted by index");
    }
  for (int e : d.psi)
    require(e >= 0, "psi exponents must be nonnegative");
}

// Weighted decoration sums, used for pullbacks and excess expansions.
using DecSum = std::vector<std::pair<Decoration, Rat>>;

void forEachComposition(int e, int k,
                        const std::function<void(const std::vector<int> &,
                                                 long long)> &f) {
  require(e <= 16, "decoration exponent out of supported range");
  std::vector<int> comp(static_cast<size_t>(k), 0);
  // multinomial built incrementally as a product of binomials
  std::function<void(int, int, long long)> rec = [&](int slot, int left,
                                                     long long mult) {
    if (slot + 1 == k) {
      comp[static_cast<size_t>(slot)] = left;
      f(comp, mult);
      return;
    }
    long long binom = 1;
    for (int take = 0; take <= left; ++take) {
      comp[static_cast<size_t>(slot)] = take;
      rec(slot + 1, left - take, mult * binom);
      binom = binom * (left - take) / (take + 1);
    }
  };
  if (k == 0) {
    require(e == 0, "cannot distribute over an empty preimage");
    f(comp, 1);
    return;
  }
  rec(0, e, 1);
}

// Pull a decoration back along a contraction of the bigger graph: psi moves
// to the unique surviving half, kappa distributes over the vertex preimage.
DecSum pullbackDecoration(const StableGraph &big, const Decoration &dec,
                          const GraphContraction &c) {
  Decoration base = trivialDecoration(big);
  std::vector<int> inv(dec.psi.size(), -1);
  for (size_t h = 0; h < c.hmap.size(); ++h)
    if (c.hmap[h] >= 0)
      inv[static_cast<size_t>(c.hmap[h])] = static_cast<int>(h);
  for (size_t h = 0; h < dec.psi.size(); ++h)
    if (dec.psi[h] > 0) {
      require(inv[h] >= 0, "half-edge lost by the contraction");
      base.psi[static_cast<size_t>(inv[h])] += dec.psi[h];
    }
  DecSum terms{{base, Rat(1)}};
  for (size_t v = 0; v < dec.kappa.size(); ++v) {
    if (dec.kappa[v].empty())
      continue;
    std::vector<int> pre;
    for (size_t w = 0; w < c.vmap.size(); ++w)
      if (c.vmap[w] == static_cast<int>(v))
        pre.push_back(static_cast<int>(w));
    require(!pre.empty(), "vertex without preimage");
    for (auto [ka, ke] : dec.kappa[v]) {
      DecSum next;
      for (const auto &[dcur, rcur] : terms)
        forEachComposition(ke, static_cast<int>(pre.size()),
                           [&](const std::vector<int> &comp, long long mult) {
                             Decoration dd = dcur;
                             for (size_t i = 0; i < comp.size(); ++i)
                               if (comp[i] > 0)
                                 addKappa(dd.kappa[static_cast<size_t>(
                                              pre[i])],
                                          ka, comp[i]);
                             next.push_back({dd, rcur * Rat(mult)});
                           });
      terms = std::move(next);
    }
  }
  return terms;
}

// Expanded product of (-psi - psi') over the edges surviving on both sides.
DecSum excessFactors(const StableGraph &G, const GraphContraction &c1,
                     const GraphContraction &c2) {
  DecSum terms{{trivialDecoration(G), Rat(1)}};
  for (auto [h, h2] : G.edges()) {
    if (c1.hmap[static_cast<size_t>(h)] < 0 ||
        c2.hmap[static_cast<size_t>(h)] < 0)
      continue;
    DecSum next;
    for (const auto &[dcur, rcur] : terms)
      for (int pick : {h, h2}) {
        Decoration dd = dcur;
        dd.psi[static_cast<size_t>(pick)] += 1;
        next.push_back({dd, rcur * Rat(-1)});
      }
    terms = std::move(next);
  }
  return terms;
}

std::vector<std::vector<int>> halvesAtVertices(const StableGraph &G) {
  std::vector<std::vector<int>> at(static_cast<size_t>(G.numVertices()));
  for (int h = 0; h < G.numHalfEdges(); ++h)
    at[static_cast<size_t>(G.vertexOf[static_cast<size_t>(h)])].push_back(h);
  return at; // ascending within each vertex by construction
}

StrataElem elemOfStratum(const DecStratum &s) {
  StrataElem out = strataZero(s.graph.totalGenus(), s.graph.numLegs());
  accumulate(out, s, Rat(1));
  return out;
}

// How a contraction of the bigger graph splits it into one factor per base
// vertex.  Factor legs follow the half order at the base vertex; contracted
// edges stay internal.
struct SplitLayout {
  std::vector<StableGraph> factor;
  std::vector<int> vOf, vLocal; // big vertex -> base vertex, local index
  std::vector<int> hOf, hLocal; // big half -> base vertex, local half index
};

SplitLayout makeSplit(const StableGraph &big, const GraphContraction &c,
                      const StableGraph &base) {
  SplitLayout L;
  int nb = base.numVertices();
  L.vOf.assign(static_cast<size_t>(big.numVertices()), -1);
  L.vLocal.assign(static_cast<size_t>(big.numVertices()), -1);
  L.hOf.assign(static_cast<size_t>(big.numHalfEdges()), -1);
  L.hLocal.assign(static_cast<size_t>(big.numHalfEdges()), -1);
  std::vector<std::vector<int>> verts(static_cast<size_t>(nb));
  for (int w = 0; w < big.numVertices(); ++w) {
    int v = c.vmap[static_cast<size_t>(w)];
    L.vOf[static_cast<size_t>(w)] = v;
    L.vLocal[static_cast<size_t>(w)] =
        static_cast<int>(verts[static_cast<size_t>(v)].size());
    verts[static_cast<size_t>(v)].push_back(w);
  }
  auto atV = halvesAtVertices(base);
  std::vector<int> rank(static_cast<size_t>(base.numHalfEdges()), -1);
  for (int v = 0; v < nb; ++v)
    for (size_t j = 0; j < atV[static_cast<size_t>(v)].size(); ++j)
      rank[static_cast<size_t>(atV[static_cast<size_t>(v)][j])] =
          static_cast<int>(j);

  std::vector<std::vector<int>> legVertex(static_cast<size_t>(nb));
  std::vector<std::vector<std::pair<int, int>>> edgeList(
      static_cast<size_t>(nb));
  for (int v = 0; v < nb; ++v)
    legVertex[static_cast<size_t>(v)].assign(
        atV[static_cast<size_t>(v)].size(), -1);
  for (int h = 0; h < big.numHalfEdges(); ++h) {
    int H = c.hmap[static_cast<size_t>(h)];
    if (H < 0)
      continue;
    int v = base.vertexOf[static_cast<size_t>(H)];
    int j = rank[static_cast<size_t>(H)];
    require(L.vOf[static_cast<size_t>(
                big.vertexOf[static_cast<size_t>(h)])] == v,
            "contraction maps a half away from its vertex image");
    require(legVertex[static_cast<size_t>(v)][static_cast<size_t>(j)] == -1,
            "two halves over one base half");
    legVertex[static_cast<size_t>(v)][static_cast<size_t>(j)] =
        L.vLocal[static_cast<size_t>(big.vertexOf[static_cast<size_t>(h)])];
    L.hOf[static_cast<size_t>(h)] = v;
    L.hLocal[static_cast<size_t>(h)] = j;
  }
  for (auto [h, h2] : big.edges()) {
    if (c.hmap[static_cast<size_t>(h)] >= 0)
      continue; // surviving edge, halves handled above
    int v = L.vOf[static_cast<size_t>(big.vertexOf[static_cast<size_t>(h)])];
    require(v ==
                L.vOf[static_cast<size_t>(
                    big.vertexOf[static_cast<size_t>(h2)])],
            "contracted edge must stay inside one base vertex");
    int nv = static_cast<int>(atV[static_cast<size_t>(v)].size());
    int k = static_cast<int>(edgeList[static_cast<size_t>(v)].size());
    edgeList[static_cast<size_t>(v)].push_back(
        {L.vLocal[static_cast<size_t>(big.vertexOf[static_cast<size_t>(h)])],
         L.vLocal[static_cast<size_t>(
             big.vertexOf[static_cast<size_t>(h2)])]});
    L.hOf[static_cast<size_t>(h)] = v;
    L.hLocal[static_cast<size_t>(h)] = nv + 2 * k;
    L.hOf[static_cast<size_t>(h2)] = v;
    L.hLocal[static_cast<size_t>(h2)] = nv + 2 * k + 1;
  }
  for (int v = 0; v < nb; ++v) {
    std::vector<int> genus;
    for (int w : verts[static_cast<size_t>(v)])
      genus.push_back(big.genus[static_cast<size_t>(w)]);
    for (int lv : legVertex[static_cast<size_t>(v)])
      require(lv >= 0, "base half without a preimage");
    L.factor.push_back(makeGraph(genus, edgeList[static_cast<size_t>(v)],
                                 legVertex[static_cast<size_t>(v)]));
  }
  return L;
}

std::optional<VertexTuple> splitDecoration(const SplitLayout &L,
                                           const Decoration &d) {
  std::vector<Decoration> fd;
  for (const auto &F : L.factor)
    fd.push_back(trivialDecoration(F));
  for (size_t w = 0; w < d.kappa.size(); ++w)
    fd[static_cast<size_t>(L.vOf[w])]
        .kappa[static_cast<size_t>(L.vLocal[w])] = d.kappa[w];
  for (size_t h = 0; h < d.psi.size(); ++h)
    if (d.psi[h] > 0)
      fd[static_cast<size_t>(L.hOf[h])]
          .psi[static_cast<size_t>(L.hLocal[h])] += d.psi[h];
  VertexTuple t;
  for (size_t v = 0; v < L.factor.size(); ++v) {
    auto s = makeDecStratum(L.factor[v], fd[v]);
    if (!s)
      return std::nullopt;
    t.factor.push_back(*s);
  }
  return t;
}

void checkTupleShape(const StableGraph &base, const VertexTuple &t) {
  require(t.factor.size() == static_cast<size_t>(base.numVertices()),
          "tuple needs one factor per base vertex");
  for (int v = 0; v < base.numVertices(); ++v) {
    const StableGraph &F = t.factor[static_cast<size_t>(v)].graph;
    require(F.numLegs() == base.valence(v) &&
                F.totalGenus() == base.genus[static_cast<size_t>(v)],
            "factor type must match its base vertex");
  }
}

} // namespace

Decoration trivialDecoration(const StableGraph &G) {
  Decoration d;
  d.kappa.resize(static_cast<size_t>(G.numVertices()));
  d.psi.assign(static_cast<size_t>(G.numHalfEdges()), 0);
  return d;
}

bool decorationTrivial(const Decoration &d) {
  for (const auto &list : d.kappa)
    if (!list.empty())
      return false;
  for (int e : d.psi)
    if (e != 0)
      return false;
  return true;
}

int decorationDegreeAt(const StableGraph &G, const Decoration &d, int v) {
  int deg = 0;
  for (auto [a, e] : d.kappa[static_cast<size_t>(v)])
    deg += a * e;
  for (int h = 0; h < G.numHalfEdges(); ++h)
    if (G.vertexOf[static_cast<size_t>(h)] == v)
      deg += d.psi[static_cast<size_t>(h)];
  return deg;
}

int decorationDegree(const StableGraph &G, const Decoration &d) {
  int deg = 0;
  for (int v = 0; v < G.numVertices(); ++v)
    deg += decorationDegreeAt(G, d, v);
  return deg;
}

bool withinDimensionBounds(const StableGraph &G, const Decoration &d) {
  for (int v = 0; v < G.numVertices(); ++v)
    if (decorationDegreeAt(G, d, v) >
        3 * G.genus[static_cast<size_t>(v)] - 3 + G.valence(v))
      return false;
  return true;
}

Decoration transportDecoration(const StableGraph &src, const Decoration &d,
                               const GraphIso &iso) {
  require(d.kappa.size() == static_cast<size_t>(src.numVertices()) &&
              d.psi.size() == static_cast<size_t>(src.numHalfEdges()),
          "decoration shape must match the source graph");
  Decoration out;
  out.kappa.resize(d.kappa.size());
  out.psi.assign(d.psi.size(), 0);
  for (size_t v = 0; v < d.kappa.size(); ++v)
    out.kappa[static_cast<size_t>(iso.vmap[v])] = d.kappa[v];
  for (size_t h = 0; h < d.psi.size(); ++h)
    out.psi[static_cast<size_t>(iso.hmap[h])] = d.psi[h];
  return out;
}

std::string decorationKey(const Decoration &d) {
  std::ostringstream os;
  for (size_t v = 0; v < d.kappa.size(); ++v)
    for (auto [a, e] : d.kappa[v])
      os << "k" << v << ":" << a << "^" << e << ";";
  for (size_t h = 0; h < d.psi.size(); ++h)
    if (d.psi[h] > 0)
      os << "p" << h << "^" << d.psi[h] << ";";
  return os.str();
}

std::optional<DecStratum> makeDecStratum(const StableGraph &G,
                                         const Decoration &d) {
  checkDecorationShape(G, d);
  if (!withinDimensionBounds(G, d))
    return std::nullopt;
  CanonicalForm cf = canonicalize(G);
  Decoration dc = transportDecoration(G, d, cf.toCanon);
  Decoration best = dc;
  std::string bestKey = decorationKey(dc);
  for (const GraphIso &iso : automorphisms(cf.graph)) {
    Decoration cand = transportDecoration(cf.graph, dc, iso);
    std::string k = decorationKey(cand);
    if (k < bestKey) {
      bestKey = k;
      best = cand;
    }
  }
  DecStratum out;
  out.graph = cf.graph;
  out.decoration = best;
  out.key = cf.key + "#" + bestKey;
  out.degree = G.numEdges() + decorationDegree(G, d);
  return out;
}

DecStratum trivialStratum(int g, int n) {
  StableGraph G = trivialGraph(g, n);
  return *makeDecStratum(G, trivialDecoration(G));
}

StrataElem strataZero(int g, int n) { return StrataElem{g, n, {}}; }

StrataElem strataUnit(int g, int n) {
  StrataElem out = strataZero(g, n);
  accumulate(out, trivialStratum(g, n), Rat(1));
  return out;
}

StrataElem strataTerm(int g, int n, const StableGraph &G, const Decoration &d,
                      const Rat &c) {
  require(G.totalGenus() == g && G.numLegs() == n,
          "graph type must match the element type");
  StrataElem out = strataZero(g, n);
  if (c.isZero())
    return out;
  if (auto s = makeDecStratum(G, d))
    accumulate(out, *s, c);
  return out;
}

void accumulate(StrataElem &e, const DecStratum &s, const Rat &c) {
  if (c.isZero())
    return;
  auto it = e.terms.find(s.key);
  if (it == e.terms.end()) {
    e.terms.emplace(s.key, std::make_pair(s, c));
    return;
  }
  it->second.second += c;
  if (it->second.second.isZero())
    e.terms.erase(it);
}

StrataElem add(const StrataElem &a, const StrataElem &b) {
  require(a.g == b.g && a.n == b.n, "cannot add across types");
  StrataElem out = a;
  for (const auto &[k, tc] : b.terms)
    accumulate(out, tc.first, tc.second);
  return out;
}

StrataElem scale(const StrataElem &a, const Rat &c) {
  StrataElem out = strataZero(a.g, a.n);
  for (const auto &[k, tc] : a.terms)
    accumulate(out, tc.first, tc.second * c);
  return out;
}

bool sameElem(const StrataElem &a, const StrataElem &b) {
  if (a.g != b.g || a.n != b.n || a.terms.size() != b.terms.size())
    return false;
  for (const auto &[k, tc] : a.terms) {
    auto it = b.terms.find(k);
    if (it == b.terms.end() || it->second.second != tc.second)
      return false;
  }
  return true;
}

std::vector<int> degreesOf(const StrataElem &a) {
  std::vector<int> out;
  for (const auto &[k, tc] : a.terms)
    out.push_back(tc.first.degree);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string strataStr(const StrataElem &a) {
  if (a.terms.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, tc] : a.terms) {
    if (!first)
      os << " + ";
    first = false;
    const DecStratum &s = tc.first;
    os << tc.second.str() << "*[" << graphKey(s.graph) << "; ";
    if (decorationTrivial(s.decoration)) {
      os << "1";
    } else {
      bool space = false;
      for (size_t v = 0; v < s.decoration.kappa.size(); ++v)
        for (auto [ka, ke] : s.decoration.kappa[v]) {
          if (space)
            os << " ";
          space = true;
          os << "kappa(" << v << "," << ka << ")";
          if (ke > 1)
            os << "^" << ke;
        }
      for (size_t h = 0; h < s.decoration.psi.size(); ++h)
        if (s.decoration.psi[h] > 0) {
          if (space)
            os << " ";
          space = true;
          os << "psi(" << h << ")";
          if (s.decoration.psi[h] > 1)
            os << "^" << s.decoration.psi[h];
        }
    }
    os << "]";
  }
  return os.str();
}

const ModuliStack &moduliRegistry(int g, int n) {
  static std::map<std::pair<int, int>, std::unique_ptr<ModuliStack>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache
             .emplace(key,
                      std::make_unique<ModuliStack>(moduliConeStack(g, n)))
             .first;
  return *it->second;
}

StrataElem strataProduct(const StrataElem &a, const StrataElem &b) {
  if (a.g != b.g || a.n != b.n)
    fail(errkind::TypeMismatch, "strata product across different types");
  const ModuliStack &ms = moduliRegistry(a.g, a.n);
  StrataElem out = strataZero(a.g, a.n);
  for (const auto &[ka, ta] : a.terms)
    for (const auto &[kb, tb] : b.terms) {
      int o1 = ms.objectOf(ta.first.graph);
      int o2 = ms.objectOf(tb.first.graph);
      require(o1 >= 0 && o2 >= 0, "term graph outside the moduli type");
      require(sameGraphData(ta.first.graph, ms.graphs[static_cast<size_t>(o1)]),
              "canonical representatives out of sync");
      for (const GenericStructure &gs :
           genericGraphStructures(ms, o1, o2)) {
        const StableGraph &G = ms.graphs[static_cast<size_t>(gs.obj)];
        const GraphContraction &c1 =
            ms.contraction[static_cast<size_t>(gs.phi1)];
        const GraphContraction &c2 =
            ms.contraction[static_cast<size_t>(gs.phi2)];
        DecSum l1 = pullbackDecoration(G, ta.first.decoration, c1);
        DecSum l2 = pullbackDecoration(G, tb.first.decoration, c2);
        DecSum exc = excessFactors(G, c1, c2);
        Rat w = ta.second * tb.second / Rat(gs.autOrder);
        for (const auto &[d1, r1] : l1)
          for (const auto &[d2, r2] : l2)
            for (const auto &[de, re] : exc) {
              Decoration d = mergeDecorations(mergeDecorations(d1, d2), de);
              if (auto s = makeDecStratum(G, d))
                accumulate(out, *s, w * r1 * r2 * re);
            }
      }
    }
  return out;
}

std::string tupleKey(const VertexTuple &t) {
  std::string out;
  for (const auto &s : t.factor) {
    out += s.key;
    out += '\x1f';
  }
  return out;
}

GluedElem gluedZero(const StableGraph &base) {
  base.check();
  return GluedElem{base, {}};
}

GluedElem gluedUnit(const StableGraph &base) {
  GluedElem out = gluedZero(base);
  VertexTuple t;
  for (int v = 0; v < base.numVertices(); ++v)
    t.factor.push_back(
        trivialStratum(base.genus[static_cast<size_t>(v)], base.valence(v)));
  accumulateGlued(out, t, Rat(1));
  return out;
}

GluedElem gluedTerm(const StableGraph &base, const VertexTuple &t,
                    const Rat &c) {
  GluedElem out = gluedZero(base);
  accumulateGlued(out, t, c);
  return out;
}

void accumulateGlued(GluedElem &e, const VertexTuple &t, const Rat &c) {
  checkTupleShape(e.base, t);
  if (c.isZero())
    return;
  std::string k = tupleKey(t);
  auto it = e.terms.find(k);
  if (it == e.terms.end()) {
    e.terms.emplace(std::move(k), std::make_pair(t, c));
    return;
  }
  it->second.second += c;
  if (it->second.second.isZero())
    e.terms.erase(it);
}

GluedElem gluedAdd(const GluedElem &a, const GluedElem &b) {
  if (!sameGraphData(a.base, b.base))
    fail(errkind::TypeMismatch, "glued elements over different bases");
  GluedElem out = a;
  for (const auto &[k, tc] : b.terms)
    accumulateGlued(out, tc.first, tc.second);
  return out;
}

GluedElem gluedScale(const GluedElem &a, const Rat &c) {
  GluedElem out = gluedZero(a.base);
  for (const auto &[k, tc] : a.terms)
    accumulateGlued(out, tc.first, tc.second * c);
  return out;
}

bool sameGlued(const GluedElem &a, const GluedElem &b) {
  if (!sameGraphData(a.base, b.base) || a.terms.size() != b.terms.size())
    return false;
  for (const auto &[k, tc] : a.terms) {
    auto it = b.terms.find(k);
    if (it == b.terms.end() || it->second.second != tc.second)
      return false;
  }
  return true;
}

GluedElem gluedProduct(const GluedElem &a, const GluedElem &b) {
  if (!sameGraphData(a.base, b.base))
    fail(errkind::TypeMismatch, "glued elements over different bases");
  GluedElem out = gluedZero(a.base);
  int nb = a.base.numVertices();
  for (const auto &[ka, ta] : a.terms)
    for (const auto &[kb, tb] : b.terms) {
      std::vector<std::pair<VertexTuple, Rat>> acc{
          {VertexTuple{}, ta.second * tb.second}};
      for (int v = 0; v < nb; ++v) {
        StrataElem pv =
            strataProduct(elemOfStratum(ta.first.factor[static_cast<size_t>(v)]),
                          elemOfStratum(tb.first.factor[static_cast<size_t>(v)]));
        std::vector<std::pair<VertexTuple, Rat>> next;
        for (const auto &[tcur, rcur] : acc)
          for (const auto &[kp, tp] : pv.terms) {
            VertexTuple tt = tcur;
            tt.factor.push_back(tp.first);
            next.push_back({tt, rcur * tp.second});
          }
        acc = std::move(next);
      }
      for (const auto &[tt, rr] : acc)
        accumulateGlued(out, tt, rr);
    }
  return out;
}

GluedElem gluingPullback(const StrataElem &a, const StableGraph &base) {
  base.check();
  if (a.g != base.totalGenus() || a.n != base.numLegs())
    fail(errkind::TypeMismatch, "base graph has a different type");
  const ModuliStack &ms = moduliRegistry(a.g, a.n);
  int o2 = ms.objectOf(base);
  require(o2 >= 0, "base graph outside the moduli type");
  CanonicalForm cf = canonicalize(base);
  GraphContraction isoC = contractionFromIso(inverseIso(cf.toCanon));
  GluedElem out = gluedZero(base);
  for (const auto &[ka, ta] : a.terms) {
    int o1 = ms.objectOf(ta.first.graph);
    require(o1 >= 0, "term graph outside the moduli type");
    for (const GenericStructure &gs : genericGraphStructures(ms, o1, o2)) {
      const StableGraph &G = ms.graphs[static_cast<size_t>(gs.obj)];
      const GraphContraction &c1 =
          ms.contraction[static_cast<size_t>(gs.phi1)];
      GraphContraction cU = composeContractions(
          G, ms.contraction[static_cast<size_t>(gs.phi2)], isoC);
      SplitLayout lay = makeSplit(G, cU, base);
      DecSum l1 = pullbackDecoration(G, ta.first.decoration, c1);
      DecSum exc = excessFactors(G, c1, cU);
      Rat w = ta.second / Rat(gs.autOrder);
      for (const auto &[d1, r1] : l1)
        for (const auto &[de, re] : exc) {
          auto t = splitDecoration(lay, mergeDecorations(d1, de));
          if (t)
            accumulateGlued(out, *t, w * r1 * re);
        }
    }
  }
  return out;
}

StrataElem gluingPushforward(const GluedElem &t) {
  const StableGraph &B = t.base;
  int g = B.totalGenus(), n = B.numLegs();
  StrataElem out = strataZero(g, n);
  auto atV = halvesAtVertices(B);
  std::vector<int> rank(static_cast<size_t>(B.numHalfEdges()), -1);
  for (size_t v = 0; v < atV.size(); ++v)
    for (size_t j = 0; j < atV[v].size(); ++j)
      rank[static_cast<size_t>(atV[v][j])] = static_cast<int>(j);
  for (const auto &[key, tc] : t.terms) {
    const VertexTuple &tup = tc.first;
    int nb = B.numVertices();
    std::vector<int> vOff(static_cast<size_t>(nb), 0),
        hOff(static_cast<size_t>(nb), 0);
    for (int v = 1; v < nb; ++v) {
      vOff[static_cast<size_t>(v)] =
          vOff[static_cast<size_t>(v - 1)] +
          tup.factor[static_cast<size_t>(v - 1)].graph.numVertices();
      hOff[static_cast<size_t>(v)] =
          hOff[static_cast<size_t>(v - 1)] +
          tup.factor[static_cast<size_t>(v - 1)].graph.numHalfEdges();
    }
    StableGraph G;
    int totH = hOff[static_cast<size_t>(nb - 1)] +
               tup.factor[static_cast<size_t>(nb - 1)].graph.numHalfEdges();
    G.vertexOf.assign(static_cast<size_t>(totH), -1);
    G.involution.assign(static_cast<size_t>(totH), -1);
    G.markingOf.assign(static_cast<size_t>(totH), 0);
    Decoration dec;
    dec.psi.assign(static_cast<size_t>(totH), 0);
    for (int v = 0; v < nb; ++v) {
      const DecStratum &fs = tup.factor[static_cast<size_t>(v)];
      const StableGraph &F = fs.graph;
      for (int w = 0; w < F.numVertices(); ++w) {
        G.genus.push_back(F.genus[static_cast<size_t>(w)]);
        dec.kappa.push_back(fs.decoration.kappa[static_cast<size_t>(w)]);
      }
      for (int lh = 0; lh < F.numHalfEdges(); ++lh) {
        int gid = hOff[static_cast<size_t>(v)] + lh;
        G.vertexOf[static_cast<size_t>(gid)] =
            vOff[static_cast<size_t>(v)] + F.vertexOf[static_cast<size_t>(lh)];
        dec.psi[static_cast<size_t>(gid)] =
            fs.decoration.psi[static_cast<size_t>(lh)];
        if (F.involution[static_cast<size_t>(lh)] != lh) {
          G.involution[static_cast<size_t>(gid)] =
              hOff[static_cast<size_t>(v)] +
              F.involution[static_cast<size_t>(lh)];
          continue;
        }
        int j = F.markingOf[static_cast<size_t>(lh)];
        int H = atV[static_cast<size_t>(v)][static_cast<size_t>(j - 1)];
        if (B.involution[static_cast<size_t>(H)] == H) {
          G.involution[static_cast<size_t>(gid)] = gid;
          G.markingOf[static_cast<size_t>(gid)] =
              B.markingOf[static_cast<size_t>(H)];
          continue;
        }
        int H2 = B.involution[static_cast<size_t>(H)];
        int v2 = B.vertexOf[static_cast<size_t>(H2)];
        int j2 = rank[static_cast<size_t>(H2)] + 1;
        int ph = tup.factor[static_cast<size_t>(v2)].graph.legHalf(j2);
        G.involution[static_cast<size_t>(gid)] =
            hOff[static_cast<size_t>(v2)] + ph;
      }
    }
    G.check();
    auto s = makeDecStratum(G, dec);
    require(s.has_value(), "grafted decoration exceeds a vertex bound");
    accumulate(out, *s, tc.second);
  }
  return out;
}

StrataElem psiAsBoundary(int n, int i, int j, int k) {
  if (n < 4)
    fail(errkind::Unstable, "psi expansion needs at least four markings");
  if (i < 1 || j < 1 || k < 1 || i > n || j > n || k > n || i == j ||
      i == k || j == k)
    fail(errkind::Unstable, "markings must be distinct and in range");
  require(n <= 24, "marking count out of supported range");
  StrataElem out = strataZero(0, n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << (i - 1))) || (mask & (1u << (j - 1))) ||
        (mask & (1u << (k - 1))))
      continue;
    int size = __builtin_popcount(mask);
    if (size < 2 || n - size < 2)
      continue;
    std::vector<int> legVertex(static_cast<size_t>(n), 1);
    for (int m = 1; m <= n; ++m)
      if (mask & (1u << (m - 1)))
        legVertex[static_cast<size_t>(m - 1)] = 0;
    StableGraph G = makeGraph({0, 0}, {{0, 1}}, legVertex);
    out = add(out, strataTerm(0, n, G, trivialDecoration(G), Rat(1)));
  }
  return out;
}

} // namespace logchow
