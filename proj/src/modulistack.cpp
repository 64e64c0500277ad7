// Moduli cone stacks of stable graphs and stars of graph cones.  Arrows of
// the moduli stack carry explicit contraction data; stars are products of
// vertex moduli stacks with the faces of the edge orthant, glued into the
// ambient stack by regluing vertex graphs along center edges.
#include "logchow/modulistack.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

namespace logchow {

namespace {

std::string joinInts(const std::vector<int> &xs) {
  std::ostringstream os;
  for (size_t i = 0; i < xs.size(); ++i)
    os << (i ? "," : "") << xs[i];
  return os.str();
}

std::string tagOf(const GraphContraction &c) {
  return isIdentityContraction(c) ? "" : contractionTag(c);
}

// out with out ∘ q = c; well defined because q is surjective and kills only
// edges killed by c.
GraphContraction factorThrough(const StableGraph &A, const GraphContraction &q,
                               const StableGraph &Q, const GraphContraction &c) {
  GraphContraction out;
  out.vmap.assign(Q.numVertices(), -1);
  for (int x = 0; x < A.numVertices(); ++x) {
    int &slot = out.vmap[q.vmap[x]];
    require(slot == -1 || slot == c.vmap[x],
            "contraction does not factor on vertices");
    slot = c.vmap[x];
  }
  for (int v : out.vmap)
    require(v >= 0, "quotient vertex not covered");
  out.hmap.assign(Q.numHalfEdges(), -1);
  std::vector<char> seen(Q.numHalfEdges(), 0);
  for (int h = 0; h < A.numHalfEdges(); ++h)
    if (q.hmap[h] >= 0) {
      require(!seen[q.hmap[h]] || out.hmap[q.hmap[h]] == c.hmap[h],
              "contraction does not factor on half-edges");
      seen[q.hmap[h]] = 1;
      out.hmap[q.hmap[h]] = c.hmap[h];
    }
  for (char s : seen)
    require(s != 0, "quotient half-edge not covered");
  auto qe = Q.edges();
  for (int e = 0; e < static_cast<int>(qe.size()); ++e)
    if (out.hmap[qe[e].first] < 0)
      out.contracted.push_back(e);
  return out;
}

} // namespace

int ModuliStack::objectOf(const StableGraph &G) const {
  G.check();
  if (G.totalGenus() != g || G.numLegs() != n)
    return -1;
  return stack->objectIndex(graphKey(G));
}

ModuliStack moduliConeStack(int g, int n) {
  ModuliStack ms;
  ms.g = g;
  ms.n = n;
  ms.graphs = enumerateStableGraphs(g, n);
  int N = static_cast<int>(ms.graphs.size());
  auto st = std::make_shared<ConeStack>();
  for (const auto &G : ms.graphs) {
    std::vector<std::string> rays;
    for (int e = 0; e < G.numEdges(); ++e)
      rays.push_back("e" + std::to_string(e));
    st->addObject(graphKey(G), std::move(rays));
  }

  std::vector<std::vector<GraphIso>> autCache(N);
  for (int i = 0; i < N; ++i)
    autCache[i] = automorphisms(ms.graphs[i]);

  // One arrow i -> j per pair (edge subset S of the graph at j whose
  // contraction is isomorphic to the graph at i, automorphism of that graph).
  for (int j = 0; j < N; ++j) {
    const StableGraph &Gj = ms.graphs[j];
    int E = Gj.numEdges();
    for (int mask = 0; mask < (1 << E); ++mask) {
      std::vector<int> S;
      for (int e = 0; e < E; ++e)
        if (mask & (1 << e))
          S.push_back(e);
      auto [Q, c0] = contractEdges(Gj, S);
      auto cf = canonicalize(Q);
      int i = st->objectIndex(cf.key);
      require(i >= 0, "contraction left the enumerated family");
      GraphContraction base =
          composeContractions(Gj, c0, contractionFromIso(cf.toCanon));
      for (const auto &alpha : autCache[i]) {
        GraphContraction full =
            composeContractions(Gj, base, contractionFromIso(alpha));
        int a = st->addArrow(i, j, contractionRayMap(Gj, full, ms.graphs[i]),
                             tagOf(full));
        require(a == static_cast<int>(ms.contraction.size()),
                "arrow bookkeeping out of step");
        ms.contraction.push_back(std::move(full));
      }
    }
  }

  // Ray maps do not separate parallel arrows (loop flips), so the whole
  // composition table is registered explicitly from the contraction data.
  for (int a = 0; a < st->numArrows(); ++a) {
    int mid = st->arrow(a).dst;
    for (int b : st->arrowsFrom(mid)) {
      const StableGraph &big = ms.graphs[st->arrow(b).dst];
      GraphContraction comp =
          composeContractions(big, ms.contraction[b], ms.contraction[a]);
      int src = st->arrow(a).src;
      int c = st->findArrow(src, st->arrow(b).dst,
                            contractionRayMap(big, comp, ms.graphs[src]),
                            tagOf(comp));
      require(c >= 0, "composite contraction missing from the arrow set");
      st->setComposite(a, b, c);
    }
  }
  st->finalize();
  require(ms.contraction.size() == static_cast<size_t>(st->numArrows()),
          "finalize added arrows unexpectedly");
  ms.stack = st;
  return ms;
}

GraphStarResult graphStar(const ModuliStack &ambient, const StableGraph &G) {
  G.check();
  if (G.totalGenus() != ambient.g || G.numLegs() != ambient.n)
    fail(errkind::TypeMismatch,
         "graph of type (" + std::to_string(G.totalGenus()) + "," +
             std::to_string(G.numLegs()) + ") in a stack of type (" +
             std::to_string(ambient.g) + "," + std::to_string(ambient.n) +
             ")");
  auto cf0 = canonicalize(G);
  const StableGraph Gamma = cf0.graph;
  require(ambient.stack->objectIndex(cf0.key) >= 0,
          "center graph missing from the ambient stack");

  int V = Gamma.numVertices();
  int E = Gamma.numEdges();
  auto gEdges = Gamma.edges();

  // Marking p of the vertex factor at v is glued to the p-th smallest half of
  // Gamma at v.
  std::vector<std::vector<int>> halvesAt(V);
  for (int h = 0; h < Gamma.numHalfEdges(); ++h)
    halvesAt[Gamma.vertexOf[h]].push_back(h);
  std::vector<int> posOfHalf(Gamma.numHalfEdges(), -1);
  for (int v = 0; v < V; ++v)
    for (size_t p = 0; p < halvesAt[v].size(); ++p)
      posOfHalf[halvesAt[v][p]] = static_cast<int>(p);

  GraphStarResult res;
  for (int v = 0; v < V; ++v)
    res.vertexModuli.push_back(
        moduliConeStack(Gamma.genus[v], Gamma.valence(v)));

  std::vector<int> factorCount(V);
  long tuples = 1;
  for (int v = 0; v < V; ++v) {
    factorCount[v] = static_cast<int>(res.vertexModuli[v].graphs.size());
    tuples *= factorCount[v];
  }
  int fullMask = (1 << E) - 1;
  long numObj = tuples << E;

  auto tupleOf = [&](long idx) {
    std::vector<int> t(V);
    for (int v = V - 1; v >= 0; --v) {
      t[v] = static_cast<int>(idx % factorCount[v]);
      idx /= factorCount[v];
    }
    return t;
  };
  auto idxOfTuple = [&](const std::vector<int> &t) {
    long idx = 0;
    for (int v = 0; v < V; ++v)
      idx = idx * factorCount[v] + t[v];
    return idx;
  };
  auto objIdx = [&](const std::vector<int> &t, int fmask) {
    return static_cast<int>((idxOfTuple(t) << E) | fmask);
  };

  // Glue the chosen vertex graphs along all center edges; the object with
  // kept-edge set F then contracts the center edges outside F.
  struct FullData {
    StableGraph full;
    std::vector<int> voff, hoff;
    std::vector<int> centerHalf; // glued half on the lower side of each edge
  };
  std::vector<FullData> fullOf(tuples);
  for (long ti = 0; ti < tuples; ++ti) {
    auto t = tupleOf(ti);
    FullData fd;
    fd.voff.assign(V, 0);
    fd.hoff.assign(V, 0);
    for (int v = 1; v < V; ++v) {
      const StableGraph &prev = res.vertexModuli[v - 1].graphs[t[v - 1]];
      fd.voff[v] = fd.voff[v - 1] + prev.numVertices();
      fd.hoff[v] = fd.hoff[v - 1] + prev.numHalfEdges();
    }
    StableGraph full;
    for (int v = 0; v < V; ++v) {
      const StableGraph &comp = res.vertexModuli[v].graphs[t[v]];
      for (int gv : comp.genus)
        full.genus.push_back(gv);
      for (int h = 0; h < comp.numHalfEdges(); ++h) {
        full.vertexOf.push_back(fd.voff[v] + comp.vertexOf[h]);
        full.involution.push_back(fd.hoff[v] + comp.involution[h]);
        full.markingOf.push_back(0);
      }
    }
    auto glueHalf = [&](int gammaHalf) {
      int v = Gamma.vertexOf[gammaHalf];
      const StableGraph &comp = res.vertexModuli[v].graphs[t[v]];
      return fd.hoff[v] + comp.legHalf(posOfHalf[gammaHalf] + 1);
    };
    for (int e = 0; e < E; ++e) {
      int a = glueHalf(gEdges[e].first), b = glueHalf(gEdges[e].second);
      full.involution[a] = b;
      full.involution[b] = a;
      fd.centerHalf.push_back(a);
    }
    for (int h = 0; h < Gamma.numHalfEdges(); ++h)
      if (Gamma.involution[h] == h)
        full.markingOf[glueHalf(h)] = Gamma.markingOf[h];
    full.check();
    require(full.totalGenus() == ambient.g && full.numLegs() == ambient.n,
            "glued graph has the wrong type");
    fd.full = std::move(full);
    fullOf[ti] = std::move(fd);
  }

  // Star objects and their images under the gluing.
  auto st = std::make_shared<ConeStack>();
  res.factorObj.resize(numObj);
  res.edgeSet.resize(numObj);
  std::vector<char> interior(numObj, 0);
  std::vector<int> objMap(numObj, -1);
  std::vector<IMat> lattice(numObj);
  std::vector<GraphContraction> fullToCanon(numObj);
  std::vector<StableGraph> canonAt(numObj);
  for (long ti = 0; ti < tuples; ++ti) {
    auto t = tupleOf(ti);
    const FullData &fd = fullOf[ti];
    for (int fmask = 0; fmask <= fullMask; ++fmask) {
      std::vector<std::string> rays;
      for (int v = 0; v < V; ++v) {
        int d = res.vertexModuli[v].graphs[t[v]].numEdges();
        for (int j = 0; j < d; ++j)
          rays.push_back("v" + std::to_string(v) + "e" + std::to_string(j));
      }
      std::string fbits;
      for (int e = 0; e < E; ++e)
        fbits += (fmask >> e) & 1 ? '1' : '0';
      for (int e = 0; e < E; ++e)
        if ((fmask >> e) & 1)
          rays.push_back("E" + std::to_string(e));
      int o = st->addObject("s[" + joinInts(t) + "|" + fbits + "]",
                            std::move(rays));
      require(o == objIdx(t, fmask), "object order out of step");
      res.factorObj[o] = t;
      res.edgeSet[o].assign(E, 0);
      for (int e = 0; e < E; ++e)
        res.edgeSet[o][e] = static_cast<char>((fmask >> e) & 1);
      interior[o] = fmask == fullMask ? 1 : 0;

      std::vector<int> drop;
      for (int e = 0; e < E; ++e)
        if (!((fmask >> e) & 1))
          drop.push_back(fd.full.edgeOfHalf(fd.centerHalf[e]));
      auto [Q, c0] = contractEdges(fd.full, drop);
      auto cfF = canonicalize(Q);
      objMap[o] = ambient.stack->objectIndex(cfF.key);
      require(objMap[o] >= 0, "glued graph missing from the ambient stack");
      fullToCanon[o] =
          composeContractions(fd.full, c0, contractionFromIso(cfF.toCanon));
      canonAt[o] = cfF.graph;

      // Rays map to distinct edges of the image graph: a permutation lattice.
      IMat mat;
      int targetDim = canonAt[o].numEdges();
      auto pushRow = [&](int srcHalf) {
        int img = fullToCanon[o].hmap[srcHalf];
        require(img >= 0, "kept ray collapsed by the gluing");
        int edge = canonAt[o].edgeOfHalf(img);
        require(edge >= 0, "kept ray landed on a leg");
        std::vector<long long> row(targetDim, 0);
        row[edge] = 1;
        mat.push_back(std::move(row));
      };
      for (int v = 0; v < V; ++v) {
        const StableGraph &comp = res.vertexModuli[v].graphs[t[v]];
        auto ce = comp.edges();
        for (const auto &pr : ce)
          pushRow(fd.hoff[v] + pr.first);
      }
      for (int e = 0; e < E; ++e)
        if ((fmask >> e) & 1)
          pushRow(fd.centerHalf[e]);
      lattice[o] = std::move(mat);
    }
  }

  // Arrows: one per tuple of factor arrows and pair of nested edge sets.
  std::vector<std::vector<int>> compArrows;
  std::map<std::tuple<int, int, std::vector<int>>, int> arrowByComps;
  long combos = 1;
  for (int v = 0; v < V; ++v)
    combos *= res.vertexModuli[v].stack->numArrows();
  for (long ci = 0; ci < combos; ++ci) {
    std::vector<int> comp(V);
    long rest = ci;
    for (int v = V - 1; v >= 0; --v) {
      comp[v] = static_cast<int>(rest % res.vertexModuli[v].stack->numArrows());
      rest /= res.vertexModuli[v].stack->numArrows();
    }
    std::vector<int> srcT(V), dstT(V);
    bool allIdentity = true;
    for (int v = 0; v < V; ++v) {
      const StackArrow &fa = res.vertexModuli[v].stack->arrow(comp[v]);
      srcT[v] = fa.src;
      dstT[v] = fa.dst;
      if (comp[v] != res.vertexModuli[v].stack->identity(fa.src))
        allIdentity = false;
    }
    std::vector<int> dstDim(V), dstOff(V, 0);
    int centerBase = 0;
    for (int v = 0; v < V; ++v) {
      dstDim[v] = res.vertexModuli[v].graphs[dstT[v]].numEdges();
      if (v)
        dstOff[v] = dstOff[v - 1] + dstDim[v - 1];
      centerBase += dstDim[v];
    }
    for (int f2 = 0; f2 <= fullMask; ++f2) {
      std::vector<int> posInF2(E, -1);
      int rank = 0;
      for (int e = 0; e < E; ++e)
        if ((f2 >> e) & 1)
          posInF2[e] = rank++;
      for (int f1 = f2;; f1 = (f1 - 1) & f2) {
        std::vector<int> rayMap;
        for (int v = 0; v < V; ++v)
          for (int r : res.vertexModuli[v].stack->arrow(comp[v]).rayMap)
            rayMap.push_back(dstOff[v] + r);
        for (int e = 0; e < E; ++e)
          if ((f1 >> e) & 1)
            rayMap.push_back(centerBase + posInF2[e]);
        int o1 = objIdx(srcT, f1), o2 = objIdx(dstT, f2);
        std::string tag =
            allIdentity && f1 == f2 ? "" : "a[" + joinInts(comp) + "]";
        int a = st->addArrow(o1, o2, std::move(rayMap), std::move(tag));
        require(a == static_cast<int>(compArrows.size()),
                "arrow bookkeeping out of step");
        compArrows.push_back(comp);
        arrowByComps[{o1, o2, comp}] = a;
        if (f1 == 0)
          break;
      }
    }
  }

  // Composition is componentwise in the factors and by inclusion on edge
  // sets.
  for (int a = 0; a < st->numArrows(); ++a)
    for (int b : st->arrowsFrom(st->arrow(a).dst)) {
      std::vector<int> comp(V);
      for (int v = 0; v < V; ++v)
        comp[v] =
            res.vertexModuli[v].stack->compose(compArrows[a][v],
                                               compArrows[b][v]);
      auto it = arrowByComps.find({st->arrow(a).src, st->arrow(b).dst, comp});
      require(it != arrowByComps.end(), "composite star arrow missing");
      st->setComposite(a, b, it->second);
    }
  st->finalize();
  require(st->numArrows() == static_cast<int>(compArrows.size()),
          "finalize added arrows unexpectedly");

  // The gluing on arrows: assemble the factor contractions over the glued
  // graphs and push them through the canonical forms.
  std::vector<int> arrMap(st->numArrows(), -1);
  for (int a = 0; a < st->numArrows(); ++a) {
    int o1 = st->arrow(a).src, o2 = st->arrow(a).dst;
    const FullData &fd1 = fullOf[o1 >> E];
    const FullData &fd2 = fullOf[o2 >> E];
    GraphContraction cFull;
    cFull.vmap.assign(fd2.full.numVertices(), -1);
    cFull.hmap.assign(fd2.full.numHalfEdges(), -1);
    for (int v = 0; v < V; ++v) {
      const GraphContraction &cv =
          res.vertexModuli[v].contraction[compArrows[a][v]];
      for (size_t x = 0; x < cv.vmap.size(); ++x)
        cFull.vmap[fd2.voff[v] + x] = fd1.voff[v] + cv.vmap[x];
      for (size_t h = 0; h < cv.hmap.size(); ++h)
        cFull.hmap[fd2.hoff[v] + h] =
            cv.hmap[h] < 0 ? -1 : fd1.hoff[v] + cv.hmap[h];
    }
    auto f2e = fd2.full.edges();
    for (int e = 0; e < static_cast<int>(f2e.size()); ++e)
      if (cFull.hmap[f2e[e].first] < 0)
        cFull.contracted.push_back(e);
    GraphContraction K =
        composeContractions(fd2.full, cFull, fullToCanon[o1]);
    GraphContraction cbar =
        factorThrough(fd2.full, fullToCanon[o2], canonAt[o2], K);
    arrMap[a] = ambient.stack->findArrow(
        objMap[o1], objMap[o2],
        contractionRayMap(canonAt[o2], cbar, canonAt[o1]), tagOf(cbar));
    require(arrMap[a] >= 0, "glued arrow missing from the ambient stack");
  }

  res.star.stack = st;
  res.star.interior = std::move(interior);
  res.glue.src = st;
  res.glue.dst = ambient.stack;
  res.glue.objMap = std::move(objMap);
  res.glue.arrMap = std::move(arrMap);
  res.glue.lattice = std::move(lattice);
  return res;
}

std::vector<GenericStructure> genericGraphStructures(const ModuliStack &ambient,
                                                     int o1, int o2) {
  require(o1 >= 0 && o1 < ambient.stack->numObjects() && o2 >= 0 &&
              o2 < ambient.stack->numObjects(),
          "object out of range");
  return genericStructures(ambient.stack, o1, o2);
}

} // namespace logchow
