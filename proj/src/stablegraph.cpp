// Stable graph core: canonical forms via refinement coloring plus class-wise
// backtracking, automorphisms enumerated as vertex symmetry, parallel-edge
// assignment, and loop flips, contractions as total maps, and enumeration by
// edge count with stability pruning.
#include "logchow/stablegraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace logchow {

namespace {

std::string joinInts(const std::vector<int> &xs) {
  std::ostringstream os;
  for (size_t i = 0; i < xs.size(); ++i)
    os << (i ? "," : "") << xs[i];
  return os.str();
}

std::pair<int, int> sortedPair(int a, int b) {
  return {std::min(a, b), std::max(a, b)};
}

} // namespace

int StableGraph::numLegs() const {
  int c = 0;
  for (int h = 0; h < numHalfEdges(); ++h)
    if (involution[h] == h)
      ++c;
  return c;
}

int StableGraph::totalGenus() const {
  int s = 0;
  for (int gv : genus)
    s += gv;
  return s + numEdges() - numVertices() + 1;
}

int StableGraph::valence(int v) const {
  int c = 0;
  for (int h = 0; h < numHalfEdges(); ++h)
    if (vertexOf[h] == v)
      ++c;
  return c;
}

std::vector<std::pair<int, int>> StableGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < numHalfEdges(); ++h)
    if (involution[h] > h)
      out.push_back({h, involution[h]});
  return out;
}

int StableGraph::edgeOfHalf(int h) const {
  if (involution[h] == h)
    return -1;
  int lo = std::min(h, involution[h]);
  int idx = 0;
  for (int k = 0; k < lo; ++k)
    if (involution[k] > k)
      ++idx;
  return idx;
}

int StableGraph::legHalf(int marking) const {
  for (int h = 0; h < numHalfEdges(); ++h)
    if (involution[h] == h && markingOf[h] == marking)
      return h;
  require(false, "missing leg marking " + std::to_string(marking));
  return -1;
}

void StableGraph::check() const {
  int V = numVertices(), H = numHalfEdges();
  if (V == 0)
    fail(errkind::Unstable, "graph with no vertices");
  if (static_cast<int>(vertexOf.size()) != H ||
      static_cast<int>(involution.size()) != H ||
      static_cast<int>(markingOf.size()) != H)
    fail(errkind::Unstable, "inconsistent half-edge arrays");
  for (int gv : genus)
    if (gv < 0)
      fail(errkind::Unstable, "negative genus label");
  std::set<int> markings;
  for (int h = 0; h < H; ++h) {
    if (vertexOf[h] < 0 || vertexOf[h] >= V)
      fail(errkind::Unstable, "half-edge at missing vertex");
    if (involution[h] < 0 || involution[h] >= H ||
        involution[involution[h]] != h)
      fail(errkind::Unstable, "involution is not an involution");
    if (involution[h] == h) {
      if (markingOf[h] <= 0 || !markings.insert(markingOf[h]).second)
        fail(errkind::Unstable, "leg markings must be distinct and positive");
    } else if (markingOf[h] != 0) {
      fail(errkind::Unstable, "marking on an edge half");
    }
  }
  int n = static_cast<int>(markings.size());
  for (int m = 1; m <= n; ++m)
    if (!markings.count(m))
      fail(errkind::Unstable, "markings must be 1.." + std::to_string(n));
  std::vector<int> root(V);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x)
      x = root[x] = root[root[x]];
    return x;
  };
  for (int h = 0; h < H; ++h)
    root[find(vertexOf[h])] = find(vertexOf[involution[h]]);
  for (int v = 0; v < V; ++v)
    if (find(v) != find(0))
      fail(errkind::Unstable, "graph is disconnected");
  for (int v = 0; v < V; ++v)
    if (2 * genus[v] - 2 + valence(v) <= 0)
      fail(errkind::Unstable,
           "stability fails at vertex " + std::to_string(v));
}

StableGraph trivialGraph(int g, int n) {
  return makeGraph({g}, {}, std::vector<int>(n, 0));
}

StableGraph makeGraph(std::vector<int> genus,
                      std::vector<std::pair<int, int>> edgeList,
                      std::vector<int> legVertex) {
  StableGraph G;
  G.genus = std::move(genus);
  int n = static_cast<int>(legVertex.size());
  int H = n + 2 * static_cast<int>(edgeList.size());
  G.vertexOf.resize(H);
  G.involution.resize(H);
  G.markingOf.assign(H, 0);
  for (int m = 0; m < n; ++m) {
    G.vertexOf[m] = legVertex[m];
    G.involution[m] = m;
    G.markingOf[m] = m + 1;
  }
  for (size_t e = 0; e < edgeList.size(); ++e) {
    int a = n + 2 * static_cast<int>(e), b = a + 1;
    G.vertexOf[a] = edgeList[e].first;
    G.vertexOf[b] = edgeList[e].second;
    G.involution[a] = b;
    G.involution[b] = a;
  }
  return G;
}

GraphIso inverseIso(const GraphIso &iso) {
  GraphIso out;
  out.vmap.resize(iso.vmap.size());
  out.hmap.resize(iso.hmap.size());
  for (size_t v = 0; v < iso.vmap.size(); ++v)
    out.vmap[iso.vmap[v]] = static_cast<int>(v);
  for (size_t h = 0; h < iso.hmap.size(); ++h)
    out.hmap[iso.hmap[h]] = static_cast<int>(h);
  return out;
}

namespace {

// Iterated refinement: vertices keyed by genus, valence, markings, then by
// the multiset of neighbour keys.  Returns one invariant string per vertex.
std::vector<std::string> refinedColors(const StableGraph &G) {
  int V = G.numVertices();
  std::vector<std::string> color(V);
  for (int v = 0; v < V; ++v) {
    std::vector<int> marks;
    for (int h = 0; h < G.numHalfEdges(); ++h)
      if (G.vertexOf[h] == v && G.involution[h] == h)
        marks.push_back(G.markingOf[h]);
    std::sort(marks.begin(), marks.end());
    color[v] = "g" + std::to_string(G.genus[v]) + "v" +
               std::to_string(G.valence(v)) + "m[" + joinInts(marks) + "]";
  }
  auto classCount = [&] {
    return std::set<std::string>(color.begin(), color.end()).size();
  };
  size_t classes = classCount();
  for (;;) {
    std::vector<std::string> next(V);
    for (int v = 0; v < V; ++v) {
      std::vector<std::string> nb;
      int loops = 0;
      for (int h = 0; h < G.numHalfEdges(); ++h) {
        if (G.vertexOf[h] != v || G.involution[h] == h)
          continue;
        int w = G.vertexOf[G.involution[h]];
        if (w == v)
          ++loops;
        else
          nb.push_back(color[w]);
      }
      std::sort(nb.begin(), nb.end());
      std::ostringstream os;
      os << color[v] << "|l" << loops << "|n[";
      for (const auto &s : nb)
        os << s << ";";
      os << "]";
      next[v] = os.str();
    }
    color = std::move(next);
    size_t c = classCount();
    if (c == classes)
      break;
    classes = c;
  }
  return color;
}

// Vertex classes ordered by invariant string; permutations run within them.
std::vector<std::vector<int>> colorClasses(const std::vector<std::string> &c) {
  std::map<std::string, std::vector<int>> by;
  for (size_t v = 0; v < c.size(); ++v)
    by[c[v]].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto &[k, vs] : by)
    out.push_back(vs);
  return out;
}

// Certificate of the relabelled graph; perm maps old to new labels.
std::string certUnder(const StableGraph &G, const std::vector<int> &perm) {
  int V = G.numVertices();
  std::vector<int> genusNew(V);
  for (int v = 0; v < V; ++v)
    genusNew[perm[v]] = G.genus[v];
  int n = G.numLegs();
  std::vector<int> legNew(n, -1);
  for (int h = 0; h < G.numHalfEdges(); ++h)
    if (G.involution[h] == h)
      legNew[G.markingOf[h] - 1] = perm[G.vertexOf[h]];
  std::vector<std::pair<int, int>> es;
  for (auto [a, b] : G.edges())
    es.push_back(sortedPair(perm[G.vertexOf[a]], perm[G.vertexOf[b]]));
  std::sort(es.begin(), es.end());
  std::ostringstream os;
  os << "[" << joinInts(genusNew) << "|" << joinInts(legNew) << "|";
  for (auto [a, b] : es)
    os << "(" << a << "," << b << ")";
  os << "]";
  return os.str();
}

// Runs fn over every vertex relabelling compatible with the color classes.
void forEachClassPerm(const std::vector<std::vector<int>> &classes, int V,
                      const std::function<void(const std::vector<int> &)> &fn) {
  std::vector<std::vector<int>> perms;
  for (const auto &cls : classes) {
    std::vector<int> p(cls.size());
    std::iota(p.begin(), p.end(), 0);
    perms.push_back(p);
  }
  std::vector<int> label(V);
  std::function<void(size_t)> rec = [&](size_t ci) {
    if (ci == classes.size()) {
      fn(label);
      return;
    }
    auto &p = perms[ci];
    int base = 0;
    for (size_t k = 0; k < ci; ++k)
      base += static_cast<int>(classes[k].size());
    std::sort(p.begin(), p.end());
    do {
      for (size_t i = 0; i < p.size(); ++i)
        label[classes[ci][i]] = base + p[i];
      rec(ci + 1);
    } while (std::next_permutation(p.begin(), p.end()));
  };
  rec(0);
}

} // namespace

CanonicalForm canonicalize(const StableGraph &G) {
  int V = G.numVertices();
  auto classes = colorClasses(refinedColors(G));
  std::string best;
  std::vector<int> bestPerm;
  forEachClassPerm(classes, V, [&](const std::vector<int> &perm) {
    std::string c = certUnder(G, perm);
    if (best.empty() || c < best) {
      best = c;
      bestPerm = perm;
    }
  });

  // Rebuild the canonical graph from the winning relabelling.
  std::vector<int> genusNew(V);
  for (int v = 0; v < V; ++v)
    genusNew[bestPerm[v]] = G.genus[v];
  int n = G.numLegs();
  std::vector<int> legNew(n, -1);
  for (int h = 0; h < G.numHalfEdges(); ++h)
    if (G.involution[h] == h)
      legNew[G.markingOf[h] - 1] = bestPerm[G.vertexOf[h]];
  auto srcEdges = G.edges();
  int E = static_cast<int>(srcEdges.size());
  std::vector<std::pair<std::pair<int, int>, int>> tagged(E);
  for (int e = 0; e < E; ++e)
    tagged[e] = {sortedPair(bestPerm[G.vertexOf[srcEdges[e].first]],
                            bestPerm[G.vertexOf[srcEdges[e].second]]),
                 e};
  std::sort(tagged.begin(), tagged.end());
  std::vector<std::pair<int, int>> edgeListNew(E);
  for (int k = 0; k < E; ++k)
    edgeListNew[k] = tagged[k].first;

  CanonicalForm cf;
  cf.graph = makeGraph(genusNew, edgeListNew, legNew);
  cf.key = best;
  cf.toCanon.vmap = bestPerm;
  cf.toCanon.hmap.assign(G.numHalfEdges(), -1);
  for (int h = 0; h < G.numHalfEdges(); ++h)
    if (G.involution[h] == h)
      cf.toCanon.hmap[h] = G.markingOf[h] - 1;
  for (int k = 0; k < E; ++k) {
    auto [pair, e] = tagged[k];
    int ha = srcEdges[e].first, hb = srcEdges[e].second;
    int slotA = n + 2 * k, slotB = slotA + 1;
    if (bestPerm[G.vertexOf[ha]] == pair.first &&
        (pair.first != pair.second ||
         bestPerm[G.vertexOf[hb]] == pair.second)) {
      cf.toCanon.hmap[ha] = slotA;
      cf.toCanon.hmap[hb] = slotB;
    } else {
      cf.toCanon.hmap[ha] = slotB;
      cf.toCanon.hmap[hb] = slotA;
    }
  }
  return cf;
}

std::string graphKey(const StableGraph &G) { return canonicalize(G).key; }

std::vector<GraphIso> automorphisms(const StableGraph &G) {
  int V = G.numVertices();
  auto classes = colorClasses(refinedColors(G));
  auto srcEdges = G.edges();
  int E = static_cast<int>(srcEdges.size());
  std::vector<std::pair<int, int>> pairOf(E);
  std::multiset<std::pair<int, int>> pairMultiset;
  std::map<std::pair<int, int>, std::vector<int>> edgeClass;
  for (int e = 0; e < E; ++e) {
    pairOf[e] = sortedPair(G.vertexOf[srcEdges[e].first],
                           G.vertexOf[srcEdges[e].second]);
    pairMultiset.insert(pairOf[e]);
    edgeClass[pairOf[e]].push_back(e);
  }
  std::vector<int> loops;
  for (int e = 0; e < E; ++e)
    if (pairOf[e].first == pairOf[e].second)
      loops.push_back(e);

  // Vertex at flattened class position i, used to turn block labels into a
  // class-preserving vertex permutation.
  std::vector<int> pos(V);
  {
    int i = 0;
    for (const auto &cls : classes)
      for (int v : cls)
        pos[i++] = v;
  }

  std::vector<GraphIso> out;
  forEachClassPerm(classes, V, [&](const std::vector<int> &label) {
    std::vector<int> sigma(V);
    for (int v = 0; v < V; ++v)
      sigma[v] = pos[label[v]];
    std::multiset<std::pair<int, int>> mapped;
    for (int e = 0; e < E; ++e)
      mapped.insert(sortedPair(sigma[pairOf[e].first], sigma[pairOf[e].second]));
    if (mapped != pairMultiset)
      return;

    // Enumerate edge bijections class by class, then loop orientations.
    std::vector<std::pair<int, int>> classKeys;
    for (const auto &[k, v] : edgeClass)
      classKeys.push_back(k);
    std::vector<std::vector<int>> classPerm;
    for (const auto &k : classKeys) {
      std::vector<int> p(edgeClass[k].size());
      std::iota(p.begin(), p.end(), 0);
      classPerm.push_back(p);
    }
    std::vector<int> edgeMap(E);
    std::function<void(size_t)> assign = [&](size_t ci) {
      if (ci == classKeys.size()) {
        size_t L = loops.size();
        for (size_t mask = 0; mask < (size_t{1} << L); ++mask) {
          GraphIso iso;
          iso.vmap = sigma;
          iso.hmap.assign(G.numHalfEdges(), -1);
          for (int h = 0; h < G.numHalfEdges(); ++h)
            if (G.involution[h] == h)
              iso.hmap[h] = h;
          std::vector<char> flipAt(E, 0);
          for (size_t i = 0; i < L; ++i)
            flipAt[loops[i]] = static_cast<char>((mask >> i) & 1);
          for (int e = 0; e < E; ++e) {
            int t = edgeMap[e];
            auto [ha, hb] = srcEdges[e];
            auto [ta, tb] = srcEdges[t];
            if (pairOf[e].first != pairOf[e].second) {
              if (sigma[G.vertexOf[ha]] == G.vertexOf[ta]) {
                iso.hmap[ha] = ta;
                iso.hmap[hb] = tb;
              } else {
                iso.hmap[ha] = tb;
                iso.hmap[hb] = ta;
              }
            } else if (flipAt[e]) {
              iso.hmap[ha] = tb;
              iso.hmap[hb] = ta;
            } else {
              iso.hmap[ha] = ta;
              iso.hmap[hb] = tb;
            }
          }
          out.push_back(std::move(iso));
        }
        return;
      }
      auto key = classKeys[ci];
      auto target = sortedPair(sigma[key.first], sigma[key.second]);
      const auto &srcs = edgeClass[key];
      const auto &dsts = edgeClass[target];
      require(srcs.size() == dsts.size(), "edge class size mismatch");
      auto &p = classPerm[ci];
      std::sort(p.begin(), p.end());
      do {
        for (size_t i = 0; i < srcs.size(); ++i)
          edgeMap[srcs[i]] = dsts[p[i]];
        assign(ci + 1);
      } while (std::next_permutation(p.begin(), p.end()));
    };
    assign(0);
  });
  require(!out.empty(), "automorphism set must contain the identity");
  return out;
}

std::pair<StableGraph, GraphContraction> contractEdges(
    const StableGraph &G, const std::vector<int> &edgeSet) {
  auto srcEdges = G.edges();
  int E = static_cast<int>(srcEdges.size());
  std::vector<char> inS(E, 0);
  for (int e : edgeSet) {
    require(e >= 0 && e < E, "contracted edge out of range");
    inS[e] = 1;
  }
  int V = G.numVertices();
  std::vector<int> root(V);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x)
      x = root[x] = root[root[x]];
    return x;
  };
  for (int e = 0; e < E; ++e)
    if (inS[e])
      root[find(G.vertexOf[srcEdges[e].first])] =
          find(G.vertexOf[srcEdges[e].second]);
  // Components ordered by their smallest member.
  std::vector<int> comp(V, -1);
  int C = 0;
  for (int v = 0; v < V; ++v)
    if (comp[find(v)] == -1)
      comp[find(v)] = C++;
  std::vector<int> vmap(V);
  for (int v = 0; v < V; ++v)
    vmap[v] = comp[find(v)];

  StableGraph Q;
  Q.genus.assign(C, 0);
  std::vector<int> compVerts(C, 0), compEdges(C, 0);
  for (int v = 0; v < V; ++v) {
    Q.genus[vmap[v]] += G.genus[v];
    compVerts[vmap[v]]++;
  }
  for (int e = 0; e < E; ++e)
    if (inS[e])
      compEdges[vmap[G.vertexOf[srcEdges[e].first]]]++;
  // Collapsed cycles contribute to the genus of the merged vertex.
  for (int c = 0; c < C; ++c)
    Q.genus[c] += compEdges[c] - (compVerts[c] - 1);

  std::vector<int> hmap(G.numHalfEdges(), -1);
  int rank = 0;
  for (int h = 0; h < G.numHalfEdges(); ++h) {
    int e = G.edgeOfHalf(h);
    if (e >= 0 && inS[e])
      continue;
    hmap[h] = rank++;
  }
  Q.vertexOf.assign(rank, -1);
  Q.involution.assign(rank, -1);
  Q.markingOf.assign(rank, 0);
  for (int h = 0; h < G.numHalfEdges(); ++h)
    if (hmap[h] >= 0) {
      Q.vertexOf[hmap[h]] = vmap[G.vertexOf[h]];
      Q.involution[hmap[h]] = hmap[G.involution[h]];
      Q.markingOf[hmap[h]] = G.markingOf[h];
    }

  GraphContraction c;
  c.contracted = edgeSet;
  std::sort(c.contracted.begin(), c.contracted.end());
  c.vmap = std::move(vmap);
  c.hmap = std::move(hmap);
  return {std::move(Q), std::move(c)};
}

GraphContraction composeContractions(const StableGraph &A,
                                     const GraphContraction &first,
                                     const GraphContraction &second) {
  auto srcEdges = A.edges();
  GraphContraction out;
  for (int e = 0; e < static_cast<int>(srcEdges.size()); ++e) {
    int mid = first.hmap[srcEdges[e].first];
    if (mid < 0 || second.hmap[mid] < 0)
      out.contracted.push_back(e);
  }
  out.vmap.resize(A.numVertices());
  for (int v = 0; v < A.numVertices(); ++v)
    out.vmap[v] = second.vmap[first.vmap[v]];
  out.hmap.assign(A.numHalfEdges(), -1);
  for (int h = 0; h < A.numHalfEdges(); ++h)
    if (first.hmap[h] >= 0)
      out.hmap[h] = second.hmap[first.hmap[h]];
  return out;
}

GraphContraction contractionFromIso(const GraphIso &iso) {
  return {std::vector<int>{}, iso.vmap, iso.hmap};
}

bool isIdentityContraction(const GraphContraction &c) {
  if (!c.contracted.empty())
    return false;
  for (size_t v = 0; v < c.vmap.size(); ++v)
    if (c.vmap[v] != static_cast<int>(v))
      return false;
  for (size_t h = 0; h < c.hmap.size(); ++h)
    if (c.hmap[h] != static_cast<int>(h))
      return false;
  return true;
}

std::string contractionTag(const GraphContraction &c) {
  return "S[" + joinInts(c.contracted) + "]v[" + joinInts(c.vmap) + "]h[" +
         joinInts(c.hmap) + "]";
}

std::vector<int> contractionRayMap(const StableGraph &src,
                                   const GraphContraction &c,
                                   const StableGraph &dst) {
  auto srcEdges = src.edges();
  std::vector<int> rm(dst.numEdges(), -1);
  for (int e = 0; e < static_cast<int>(srcEdges.size()); ++e) {
    int img = c.hmap[srcEdges[e].first];
    if (img < 0)
      continue;
    int j = dst.edgeOfHalf(img);
    require(j >= 0 && rm[j] == -1, "contraction is not injective on edges");
    rm[j] = e;
  }
  for (int j = 0; j < dst.numEdges(); ++j)
    require(rm[j] >= 0, "contraction misses a target edge");
  return rm;
}

std::vector<StableGraph> enumerateStableGraphs(int g, int n) {
  if (2 * g - 2 + n <= 0)
    fail(errkind::Unstable, "type (" + std::to_string(g) + "," +
                                std::to_string(n) + ")");
  int maxEdges = 3 * g - 3 + n;
  std::map<std::pair<int, std::string>, StableGraph> found;

  for (int m = 0; m <= maxEdges; ++m)
    for (int k = 1; k <= m + 1; ++k) {
      int sumg = g - m + k - 1;
      if (sumg < 0)
        continue;
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
          slots.push_back({i, j});
      std::vector<std::pair<int, int>> edgeList;

      std::function<void()> handleEdges = [&] {
        // Connectivity of the edge skeleton; legs never connect components.
        std::vector<int> root(k);
        std::iota(root.begin(), root.end(), 0);
        std::function<int(int)> find = [&](int x) {
          while (root[x] != x)
            x = root[x] = root[root[x]];
          return x;
        };
        for (auto [a, b] : edgeList)
          root[find(a)] = find(b);
        for (int v = 0; v < k; ++v)
          if (find(v) != find(0))
            return;
        std::vector<int> edgeDeg(k, 0);
        for (auto [a, b] : edgeList) {
          edgeDeg[a]++;
          edgeDeg[b]++;
        }
        std::vector<int> gv(k, 0);
        std::function<void(int, int)> pickGenus = [&](int v, int rest) {
          if (v == k) {
            if (rest != 0)
              return;
            std::vector<int> need(k), cnt(k, 0);
            long needTotal = 0;
            for (int i = 0; i < k; ++i) {
              need[i] = std::max(0, 3 - 2 * gv[i] - edgeDeg[i]);
              needTotal += need[i];
            }
            if (needTotal > n)
              return;
            // Assign markings one by one; missing tracks the stability
            // deficit still to be filled by the remaining legs.
            std::vector<int> legv(n, -1);
            std::function<void(int, long)> rec = [&](int mark, long missing) {
              if (missing > n - mark)
                return;
              if (mark == n) {
                StableGraph cand = makeGraph(gv, edgeList, legv);
                auto cf = canonicalize(cand);
                found.insert(
                    {{m, cf.key}, cf.graph});
                return;
              }
              for (int i = 0; i < k; ++i) {
                legv[mark] = i;
                cnt[i]++;
                long nm = missing - (cnt[i] <= need[i] ? 1 : 0);
                rec(mark + 1, nm);
                cnt[i]--;
              }
              legv[mark] = -1;
            };
            rec(0, needTotal);
            return;
          }
          for (int take = 0; take <= rest; ++take) {
            gv[v] = take;
            pickGenus(v + 1, rest - take);
          }
          gv[v] = 0;
        };
        pickGenus(0, sumg);
      };

      std::function<void(size_t, int)> pickEdges = [&](size_t s, int left) {
        if (left == 0) {
          handleEdges();
          return;
        }
        if (s == slots.size())
          return;
        for (int cntE = 0; cntE <= left; ++cntE) {
          for (int t = 0; t < cntE; ++t)
            edgeList.push_back(slots[s]);
          pickEdges(s + 1, left - cntE);
          for (int t = 0; t < cntE; ++t)
            edgeList.pop_back();
        }
      };
      pickEdges(0, m);
    }

  std::vector<StableGraph> out;
  for (auto &[key, G] : found)
    out.push_back(std::move(G));
  return out;
}

} // namespace logchow
