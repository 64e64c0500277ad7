#include "logchow/star.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace logchow {

namespace {

// Union of the ray images of a set of arrows into one object.
std::vector<int> jointImage(const ConeStack &s, std::initializer_list<int> arrows) {
  std::set<int> im;
  for (int a : arrows)
    for (int r : s.arrow(a).rayMap)
      im.insert(r);
  return {im.begin(), im.end()};
}

bool covers(const ConeStack &s, int obj, std::initializer_list<int> arrows) {
  return static_cast<int>(jointImage(s, arrows).size()) == s.object(obj).dim();
}

} // namespace

StarResult star(const StackPtr &ambient, int center) {
  const ConeStack &S = *ambient;
  require(center >= 0 && center < S.numObjects(), "star center out of range");

  std::vector<StarDiagram> diagrams;
  for (int sp = 0; sp < S.numObjects(); ++sp)
    for (int jp : S.arrowsBetween(center, sp))
      for (int ss = 0; ss < S.numObjects(); ++ss)
        for (int js : S.arrowsBetween(ss, sp))
          if (covers(S, sp, {jp, js}))
            diagrams.push_back({jp, js});

  int n = static_cast<int>(diagrams.size());
  std::vector<int> classOf(n, -1);
  std::vector<std::pair<int, int>> isoFromRep(n); // rep -> diagram
  std::vector<int> reps;
  for (int d = 0; d < n; ++d) {
    const StarDiagram &D = diagrams[d];
    int dPrime = S.arrow(D.jprime).dst;
    int dSecond = S.arrow(D.jsecond).src;
    for (int k = 0; k < static_cast<int>(reps.size()) && classOf[d] < 0; ++k) {
      const StarDiagram &R = diagrams[reps[k]];
      int rPrime = S.arrow(R.jprime).dst;
      int rSecond = S.arrow(R.jsecond).src;
      for (int pp : S.arrowsBetween(rPrime, dPrime)) {
        if (!S.isInvertible(pp) || S.compose(R.jprime, pp) != D.jprime)
          continue;
        for (int ps : S.arrowsBetween(rSecond, dSecond)) {
          if (!S.isInvertible(ps))
            continue;
          if (S.compose(R.jsecond, pp) == S.compose(ps, D.jsecond)) {
            classOf[d] = k;
            isoFromRep[d] = {pp, ps};
            break;
          }
        }
        if (classOf[d] >= 0)
          break;
      }
    }
    if (classOf[d] < 0) {
      classOf[d] = static_cast<int>(reps.size());
      isoFromRep[d] = {S.identity(dPrime), S.identity(dSecond)};
      reps.push_back(d);
    }
  }

  auto stack = std::make_shared<ConeStack>();
  int numClasses = static_cast<int>(reps.size());
  for (int k = 0; k < numClasses; ++k) {
    const StarDiagram &R = diagrams[reps[k]];
    const StackObject &second = S.object(S.arrow(R.jsecond).src);
    stack->addObject("s" + std::to_string(k) + "(" + second.id + ")",
                     second.rays);
  }
  std::vector<std::pair<int, int>> payload; // (pp, ps) per star arrow
  std::map<std::tuple<int, int, int, int>, int> payloadIndex;
  for (int k1 = 0; k1 < numClasses; ++k1)
    for (int k2 = 0; k2 < numClasses; ++k2) {
      const StarDiagram &D1 = diagrams[reps[k1]];
      const StarDiagram &D2 = diagrams[reps[k2]];
      int p1 = S.arrow(D1.jprime).dst, p2 = S.arrow(D2.jprime).dst;
      int s1 = S.arrow(D1.jsecond).src, s2 = S.arrow(D2.jsecond).src;
      for (int pp : S.arrowsBetween(p1, p2)) {
        if (S.compose(D1.jprime, pp) != D2.jprime)
          continue;
        for (int ps : S.arrowsBetween(s1, s2)) {
          if (S.compose(D1.jsecond, pp) != S.compose(ps, D2.jsecond))
            continue;
          bool isId = k1 == k2 && pp == S.identity(p1) && ps == S.identity(s1);
          std::string tag =
              isId ? "" : "p" + std::to_string(pp) + "s" + std::to_string(ps);
          int idx = stack->addArrow(k1, k2, S.arrow(ps).rayMap, tag);
          require(idx == static_cast<int>(payload.size()), "payload sync");
          payload.emplace_back(pp, ps);
          payloadIndex[{k1, k2, pp, ps}] = idx;
        }
      }
    }
  // composition table from payload composition
  for (const auto &[key1, f] : payloadIndex)
    for (const auto &[key2, g] : payloadIndex) {
      if (std::get<1>(key1) != std::get<0>(key2))
        continue;
      int ppc = S.compose(std::get<2>(key1), std::get<2>(key2));
      int psc = S.compose(std::get<3>(key1), std::get<3>(key2));
      auto it = payloadIndex.find(
          {std::get<0>(key1), std::get<1>(key2), ppc, psc});
      require(it != payloadIndex.end(), "star composition closure");
      stack->setComposite(f, g, it->second);
    }
  stack->finalize();

  StarResult out;
  out.ambient = ambient;
  out.center = center;
  out.star.stack = stack;
  out.star.interior.assign(numClasses, 0);
  for (int k = 0; k < numClasses; ++k)
    out.star.interior[k] = S.isInvertible(diagrams[reps[k]].jsecond) ? 1 : 0;
  for (int k = 0; k < numClasses; ++k)
    out.diagrams.push_back(diagrams[reps[k]]);
  out.allDiagrams = diagrams;
  out.classOfDiagram = classOf;
  out.isoFromRep = isoFromRep;
  out.arrowPayload = payload;

  out.toAmbient.src = stack;
  out.toAmbient.dst = ambient;
  for (int k = 0; k < numClasses; ++k) {
    int ss = S.arrow(diagrams[reps[k]].jsecond).src;
    out.toAmbient.objMap.push_back(ss);
    out.toAmbient.lattice.push_back(identityIMat(S.object(ss).dim()));
  }
  for (const auto &[pp, ps] : payload) {
    (void)pp;
    out.toAmbient.arrMap.push_back(ps);
  }

  ConeStackWithBoundary faces = facesStack(S.object(center).rays);
  out.toFaces.src = stack;
  out.toFaces.dst = faces.stack;
  std::vector<std::vector<int>> faceSubset(numClasses);
  for (int k = 0; k < numClasses; ++k) {
    const StarDiagram &R = diagrams[reps[k]];
    const StackArrow &jp = S.arrow(R.jprime);
    const StackArrow &js = S.arrow(R.jsecond);
    std::set<int> jsIm(js.rayMap.begin(), js.rayMap.end());
    std::vector<int> sub;
    for (int r = 0; r < static_cast<int>(jp.rayMap.size()); ++r)
      if (jsIm.count(jp.rayMap[r]))
        sub.push_back(r);
    faceSubset[k] = sub;
    int fobj = facesObjectIndex(*faces.stack, sub);
    out.toFaces.objMap.push_back(fobj);
    IMat lat;
    int ssDim = S.object(js.src).dim();
    for (int s = 0; s < ssDim; ++s) {
      std::vector<long long> col(sub.size(), 0);
      int target = js.rayMap[s];
      for (int r = 0; r < static_cast<int>(jp.rayMap.size()); ++r)
        if (jp.rayMap[r] == target) {
          auto pos = std::find(sub.begin(), sub.end(), r);
          require(pos != sub.end(), "face subset bookkeeping");
          col[pos - sub.begin()] = 1;
        }
      lat.push_back(std::move(col));
    }
    out.toFaces.lattice.push_back(std::move(lat));
  }
  for (int a = 0; a < stack->numArrows(); ++a) {
    int k1 = stack->arrow(a).src, k2 = stack->arrow(a).dst;
    const std::vector<int> &s1 = faceSubset[k1], &s2 = faceSubset[k2];
    std::vector<int> rm;
    for (int x : s1) {
      auto pos = std::find(s2.begin(), s2.end(), x);
      require(pos != s2.end(), "face subsets not nested along star arrow");
      rm.push_back(static_cast<int>(pos - s2.begin()));
    }
    int fa = faces.stack->findArrow(out.toFaces.objMap[k1],
                                    out.toFaces.objMap[k2], rm, "");
    require(fa >= 0, "missing faces arrow");
    out.toFaces.arrMap.push_back(fa);
  }
  return out;
}

int findStarArrow(const StarResult &st, int srcClass, int dstClass, int pp,
                  int ps) {
  for (int a = 0; a < st.star.stack->numArrows(); ++a) {
    const StackArrow &ar = st.star.stack->arrow(a);
    if (ar.src == srcClass && ar.dst == dstClass &&
        st.arrowPayload[a] == std::make_pair(pp, ps))
      return a;
  }
  return -1;
}

namespace {

int locateDiagram(const StarResult &st, int jp, int js) {
  for (int d = 0; d < static_cast<int>(st.allDiagrams.size()); ++d)
    if (st.allDiagrams[d].jprime == jp && st.allDiagrams[d].jsecond == js)
      return d;
  return -1;
}

// Minimal face-through factorization of a pair of arrows into sp: the first
// arrow c: o -> sp whose ray image equals the joint image, plus the
// factorizations of both arrows through c.
struct Factorization {
  int face;    // arrow o -> sp
  int left;    // arrow with compose(left, face) == first input
  int right;   // arrow with compose(right, face) == second input
};

Factorization factorPair(const ConeStack &S, int a1, int a2) {
  int sp = S.arrow(a1).dst;
  require(S.arrow(a2).dst == sp, "factorPair targets differ");
  std::vector<int> want = jointImage(S, {a1, a2});
  Factorization out{-1, -1, -1};
  for (int c : S.arrowsTo(sp)) {
    std::vector<int> im = S.arrow(c).rayMap;
    std::sort(im.begin(), im.end());
    if (im != want)
      continue;
    int o = S.arrow(c).src;
    int l = -1, r = -1;
    for (int cand : S.arrowsBetween(S.arrow(a1).src, o))
      if (S.compose(cand, c) == a1) {
        l = cand;
        break;
      }
    for (int cand : S.arrowsBetween(S.arrow(a2).src, o))
      if (S.compose(cand, c) == a2) {
        r = cand;
        break;
      }
    if (l >= 0 && r >= 0) {
      out = {c, l, r};
      return out;
    }
  }
  require(false, "no face factorization found");
  return out;
}

} // namespace

StackMorphism starOfArrow(const StarResult &fine, const StarResult &coarse,
                          int psi) {
  const ConeStack &S = *fine.ambient;
  require(fine.ambient == coarse.ambient, "stars over different stacks");
  require(S.arrow(psi).dst == fine.center && S.arrow(psi).src == coarse.center,
          "arrow does not connect the star centers");

  StackMorphism m;
  m.src = fine.star.stack;
  m.dst = coarse.star.stack;
  int nFine = fine.star.stack->numObjects();
  // Per fine class: target diagram index in coarse.allDiagrams and the chosen
  // factorization (to transport arrows).
  std::vector<Factorization> fact(nFine);
  std::vector<int> tgtDiagram(nFine);
  for (int k = 0; k < nFine; ++k) {
    const StarDiagram &D = fine.diagrams[k];
    int jpPsi = S.compose(psi, D.jprime);
    Factorization f = factorPair(S, jpPsi, D.jsecond);
    fact[k] = f;
    int d = locateDiagram(coarse, f.left, f.right);
    require(d >= 0, "transported diagram missing in coarse star");
    tgtDiagram[k] = d;
    m.objMap.push_back(coarse.classOfDiagram[d]);
    // Second objects agree; identify with the class representative through
    // the stored diagram isomorphism.
    int repToD = coarse.isoFromRep[d].second;
    m.lattice.push_back(arrowMatrix(S, S.inverseArrow(repToD)));
  }
  for (int a = 0; a < fine.star.stack->numArrows(); ++a) {
    const StackArrow &ar = fine.star.stack->arrow(a);
    auto [pp, ps] = fine.arrowPayload[a];
    int k1 = ar.src, k2 = ar.dst;
    int d1 = tgtDiagram[k1], d2 = tgtDiagram[k2];
    const StarDiagram &T1 = coarse.allDiagrams[d1];
    const StarDiagram &T2 = coarse.allDiagrams[d2];
    int o1 = S.arrow(T1.jprime).dst, o2 = S.arrow(T2.jprime).dst;
    // Prime component of the transported arrow: compatible with both
    // transported diagrams and, preferably, with the ambient square.
    int c1 = fact[k1].face, c2 = fact[k2].face;
    int ppInduced = -1;
    for (int pass = 0; pass < 2 && ppInduced < 0; ++pass)
      for (int cand : S.arrowsBetween(o1, o2)) {
        if (S.compose(T1.jprime, cand) != T2.jprime)
          continue;
        if (S.compose(T1.jsecond, cand) != S.compose(ps, T2.jsecond))
          continue;
        if (pass == 0 && S.compose(c1, pp) != S.compose(cand, c2))
          continue;
        ppInduced = cand;
        break;
      }
    require(ppInduced >= 0, "induced prime arrow missing");
    // Move both endpoints to the class representatives.
    auto [r1p, r1s] = coarse.isoFromRep[d1];
    auto [r2p, r2s] = coarse.isoFromRep[d2];
    int ppFull = S.compose(r1p, S.compose(ppInduced, S.inverseArrow(r2p)));
    int psFull = S.compose(r1s, S.compose(ps, S.inverseArrow(r2s)));
    int target = findStarArrow(coarse, coarse.classOfDiagram[d1],
                               coarse.classOfDiagram[d2], ppFull, psFull);
    require(target >= 0, "transported star arrow missing");
    m.arrMap.push_back(target);
  }
  return m;
}

std::vector<GenericStructure> genericStructures(const StackPtr &s, int o1,
                                                int o2) {
  const ConeStack &S = *s;
  struct Elem {
    int obj, phi1, phi2;
  };
  std::vector<Elem> elems;
  for (int obj = 0; obj < S.numObjects(); ++obj)
    for (int phi1 : S.arrowsBetween(o1, obj))
      for (int phi2 : S.arrowsBetween(o2, obj))
        if (covers(S, obj, {phi1, phi2}))
          elems.push_back({obj, phi1, phi2});

  std::vector<GenericStructure> out;
  std::vector<int> classOf(elems.size(), -1);
  for (size_t e = 0; e < elems.size(); ++e) {
    for (size_t r = 0; r < out.size() && classOf[e] < 0; ++r) {
      if (elems[e].obj != out[r].obj &&
          S.arrowsBetween(out[r].obj, elems[e].obj).empty())
        continue;
      for (int psi : S.arrowsBetween(out[r].obj, elems[e].obj)) {
        if (!S.isInvertible(psi))
          continue;
        if (S.compose(out[r].phi1, psi) == elems[e].phi1 &&
            S.compose(out[r].phi2, psi) == elems[e].phi2) {
          classOf[e] = static_cast<int>(r);
          out[r].orbitSize++;
          break;
        }
      }
    }
    if (classOf[e] < 0) {
      classOf[e] = static_cast<int>(out.size());
      int aut = 0;
      for (int psi : S.autArrows(elems[e].obj))
        if (S.compose(elems[e].phi1, psi) == elems[e].phi1 &&
            S.compose(elems[e].phi2, psi) == elems[e].phi2)
          ++aut;
      out.push_back({elems[e].obj, elems[e].phi1, elems[e].phi2, aut, 1});
    }
  }
  return out;
}

bool starEmbeds(const StackPtr &s, int center) {
  const ConeStack &S = *s;
  std::vector<int> auts = S.autArrows(center);
  std::vector<int> homFrom; // all arrows out of the center
  for (int a : S.arrowsFrom(center))
    homFrom.push_back(a);
  // Free action of Aut(center) by precomposition.
  for (int psi : auts) {
    if (psi == S.identity(center))
      continue;
    for (int j : homFrom)
      if (S.compose(psi, j) == j)
        return false;
  }
  // Transitivity: any two embeddings are related through any connecting
  // arrow after twisting by Aut(center).
  for (int j1 : homFrom)
    for (int j2 : homFrom)
      for (int h : S.arrowsBetween(S.arrow(j1).dst, S.arrow(j2).dst)) {
        bool hit = false;
        int hj1 = S.compose(j1, h);
        for (int psi : auts)
          if (S.compose(psi, hj1) == j2) {
            hit = true;
            break;
          }
        if (!hit)
          return false;
      }
  return true;
}

StarSubdivideResult starSubdivide(const StackPtr &s, int center) {
  const ConeStack &S = *s;
  require(S.object(center).dim() >= 1, "cannot subdivide at the zero cone");
  if (!starEmbeds(s, center))
    fail(errkind::NotEmbedded,
         "star of '" + S.object(center).id + "' does not embed");

  // Residual objects: no arrow from the center.
  std::vector<int> residual;
  std::vector<char> isResidual(S.numObjects(), 0);
  for (int o = 0; o < S.numObjects(); ++o)
    if (S.arrowsBetween(center, o).empty()) {
      residual.push_back(o);
      isResidual[o] = 1;
    }

  struct NewObj {
    int h;  // proper face arrow tau -> center
    int hp; // arrow center -> sp
    std::vector<IVec> gens;      // [barycenter, tau rays, uncovered sp rays]
    std::vector<int> uncovered;  // sp ray indices
  };
  std::vector<NewObj> payloads;
  int cdim = S.object(center).dim();
  for (int h : S.arrowsTo(center)) {
    if (static_cast<int>(S.arrow(h).rayMap.size()) == cdim)
      continue; // not a proper face
    for (int hp : S.arrowsFrom(center)) {
      NewObj nu;
      nu.h = h;
      nu.hp = hp;
      const StackArrow &H = S.arrow(h), &HP = S.arrow(hp);
      int spDim = S.object(HP.dst).dim();
      IVec bary(spDim, 0);
      for (int r : HP.rayMap)
        bary[r] = 1;
      nu.gens.push_back(bary);
      for (int t : H.rayMap)
        nu.gens.push_back(unitVector(spDim, HP.rayMap[t]));
      std::vector<bool> covered(spDim, false);
      for (int r : HP.rayMap)
        covered[r] = true;
      for (int r = 0; r < spDim; ++r)
        if (!covered[r]) {
          nu.uncovered.push_back(r);
          nu.gens.push_back(unitVector(spDim, r));
        }
      payloads.push_back(std::move(nu));
    }
  }

  // Morphism triples between payloads.
  struct Triple {
    int t, a, b;
  };
  auto triplesBetween = [&](const NewObj &n1, const NewObj &n2) {
    std::vector<Triple> out;
    int tau1 = S.arrow(n1.h).src, tau2 = S.arrow(n2.h).src;
    int sp1 = S.arrow(n1.hp).dst, sp2 = S.arrow(n2.hp).dst;
    for (int a : S.autArrows(center))
      for (int t : S.arrowsBetween(tau1, tau2)) {
        if (S.compose(n1.h, a) != S.compose(t, n2.h))
          continue;
        for (int b : S.arrowsBetween(sp1, sp2))
          if (S.compose(n1.hp, b) == S.compose(a, n2.hp))
            out.push_back({t, a, b});
      }
    return out;
  };
  auto tripleIsIso = [&](const Triple &tr) {
    return S.isInvertible(tr.t) && S.isInvertible(tr.b);
  };

  int np = static_cast<int>(payloads.size());
  std::vector<int> classOf(np, -1);
  std::vector<int> reps;
  for (int p = 0; p < np; ++p) {
    for (size_t k = 0; k < reps.size() && classOf[p] < 0; ++k)
      for (const Triple &tr : triplesBetween(payloads[reps[k]], payloads[p]))
        if (tripleIsIso(tr)) {
          classOf[p] = static_cast<int>(k);
          break;
        }
    if (classOf[p] < 0) {
      classOf[p] = static_cast<int>(reps.size());
      reps.push_back(p);
    }
  }

  // Residual classes under ambient isomorphism.
  std::vector<int> resClassOf(residual.size());
  std::vector<int> resReps;
  for (size_t i = 0; i < residual.size(); ++i) {
    int cls = -1;
    for (size_t k = 0; k < resReps.size() && cls < 0; ++k)
      for (int a : S.arrowsBetween(resReps[k], residual[i]))
        if (S.isInvertible(a)) {
          cls = static_cast<int>(k);
          break;
        }
    if (cls < 0) {
      cls = static_cast<int>(resReps.size());
      resReps.push_back(residual[i]);
    }
    resClassOf[i] = cls;
  }

  auto stack = std::make_shared<ConeStack>();
  int nres = static_cast<int>(resReps.size());
  int nnew = static_cast<int>(reps.size());
  for (int k = 0; k < nres; ++k)
    stack->addObject(S.object(resReps[k]).id, S.object(resReps[k]).rays);
  for (int k = 0; k < nnew; ++k) {
    const NewObj &nu = payloads[reps[k]];
    const StackObject &tau = S.object(S.arrow(nu.h).src);
    const StackObject &sp = S.object(S.arrow(nu.hp).dst);
    std::vector<std::string> rays;
    rays.push_back("b");
    for (const std::string &r : tau.rays)
      rays.push_back("t:" + r);
    for (int u : nu.uncovered)
      rays.push_back("u:" + sp.rays[u]);
    stack->addObject("n" + std::to_string(k) + "(" + sp.id + ")",
                     std::move(rays));
  }
  auto newIdx = [&](int cls) { return nres + cls; };

  // Arrow payloads for composite lookup: residual arrows carry the ambient
  // arrow, new->new arrows the triple, residual->new the including arrow.
  std::map<std::tuple<int, int, int>, int> resArrow;      // (srcCls,dstCls,amb)
  std::map<std::tuple<int, int, int, int, int>, int> newArrow; // + triple
  std::map<std::tuple<int, int, int>, int> inclArrow;     // res->new

  for (int k1 = 0; k1 < nres; ++k1)
    for (int k2 = 0; k2 < nres; ++k2)
      for (int a : S.arrowsBetween(resReps[k1], resReps[k2])) {
        bool isId = k1 == k2 && a == S.identity(resReps[k1]);
        int idx = stack->addArrow(k1, k2, S.arrow(a).rayMap,
                                  isId ? "" : "r" + std::to_string(a));
        resArrow[{k1, k2, a}] = idx;
      }
  for (int k1 = 0; k1 < nnew; ++k1)
    for (int k2 = 0; k2 < nnew; ++k2) {
      const NewObj &n1 = payloads[reps[k1]];
      const NewObj &n2 = payloads[reps[k2]];
      int tau2dim = static_cast<int>(S.arrow(n2.h).rayMap.size());
      for (const Triple &tr : triplesBetween(n1, n2)) {
        std::vector<int> rm;
        rm.push_back(0);
        for (int i = 0; i < static_cast<int>(S.arrow(tr.t).rayMap.size()); ++i)
          rm.push_back(1 + S.arrow(tr.t).rayMap[i]);
        for (int u : n1.uncovered) {
          int img = S.arrow(tr.b).rayMap[u];
          auto pos = std::find(n2.uncovered.begin(), n2.uncovered.end(), img);
          require(pos != n2.uncovered.end(), "uncovered ray escapes");
          rm.push_back(1 + tau2dim +
                       static_cast<int>(pos - n2.uncovered.begin()));
        }
        bool isId = k1 == k2 && tr.t == S.identity(S.arrow(n1.h).src) &&
                    tr.a == S.identity(center) &&
                    tr.b == S.identity(S.arrow(n1.hp).dst);
        std::string tag = isId ? ""
                               : "t" + std::to_string(tr.t) + "a" +
                                     std::to_string(tr.a) + "b" +
                                     std::to_string(tr.b);
        int idx = stack->addArrow(newIdx(k1), newIdx(k2), rm, tag);
        newArrow[{k1, k2, tr.t, tr.a, tr.b}] = idx;
      }
    }
  for (int k1 = 0; k1 < nres; ++k1)
    for (int k2 = 0; k2 < nnew; ++k2) {
      const NewObj &nu = payloads[reps[k2]];
      int sp = S.arrow(nu.hp).dst;
      for (int i : S.arrowsBetween(resReps[k1], sp)) {
        std::vector<int> rm;
        bool ok = true;
        for (int r : S.arrow(i).rayMap) {
          IVec unit = unitVector(S.object(sp).dim(), r);
          auto pos = std::find(nu.gens.begin(), nu.gens.end(), unit);
          if (pos == nu.gens.end()) {
            ok = false;
            break;
          }
          rm.push_back(static_cast<int>(pos - nu.gens.begin()));
        }
        if (!ok)
          continue;
        int idx = stack->addArrow(k1, newIdx(k2), rm, "i" + std::to_string(i));
        inclArrow[{k1, k2, i}] = idx;
      }
    }

  // Composition table.
  for (const auto &[key1, f] : resArrow)
    for (const auto &[key2, g] : resArrow) {
      if (std::get<1>(key1) != std::get<0>(key2))
        continue;
      int amb = S.compose(std::get<2>(key1), std::get<2>(key2));
      auto it = resArrow.find({std::get<0>(key1), std::get<1>(key2), amb});
      require(it != resArrow.end(), "residual composition closure");
      stack->setComposite(f, g, it->second);
    }
  for (const auto &[key1, f] : resArrow)
    for (const auto &[key2, g] : inclArrow) {
      if (std::get<1>(key1) != std::get<0>(key2))
        continue;
      int amb = S.compose(std::get<2>(key1), std::get<2>(key2));
      auto it = inclArrow.find({std::get<0>(key1), std::get<1>(key2), amb});
      require(it != inclArrow.end(), "residual-inclusion composition closure");
      stack->setComposite(f, g, it->second);
    }
  for (const auto &[key1, f] : inclArrow)
    for (const auto &[key2, g] : newArrow) {
      if (std::get<1>(key1) != std::get<0>(key2))
        continue;
      int amb = S.compose(std::get<2>(key1), std::get<4>(key2));
      auto it = inclArrow.find({std::get<0>(key1), std::get<1>(key2), amb});
      require(it != inclArrow.end(), "inclusion-new composition closure");
      stack->setComposite(f, g, it->second);
    }
  for (const auto &[key1, f] : newArrow)
    for (const auto &[key2, g] : newArrow) {
      if (std::get<1>(key1) != std::get<0>(key2))
        continue;
      int t = S.compose(std::get<2>(key1), std::get<2>(key2));
      int a = S.compose(std::get<3>(key1), std::get<3>(key2));
      int b = S.compose(std::get<4>(key1), std::get<4>(key2));
      auto it = newArrow.find({std::get<0>(key1), std::get<1>(key2), t, a, b});
      require(it != newArrow.end(), "new-new composition closure");
      stack->setComposite(f, g, it->second);
    }
  stack->finalize();

  StarSubdivideResult out;
  out.stack = stack;
  out.toAmbient.src = stack;
  out.toAmbient.dst = s;
  out.toAmbient.objMap.assign(stack->numObjects(), -1);
  out.toAmbient.lattice.resize(stack->numObjects());
  for (int k = 0; k < nres; ++k) {
    out.toAmbient.objMap[k] = resReps[k];
    out.toAmbient.lattice[k] = identityIMat(S.object(resReps[k]).dim());
  }
  for (int k = 0; k < nnew; ++k) {
    const NewObj &nu = payloads[reps[k]];
    out.toAmbient.objMap[newIdx(k)] = S.arrow(nu.hp).dst;
    out.toAmbient.lattice[newIdx(k)] = nu.gens;
  }
  out.toAmbient.arrMap.assign(stack->numArrows(), -1);
  for (const auto &[key, idx] : resArrow)
    out.toAmbient.arrMap[idx] = std::get<2>(key);
  for (const auto &[key, idx] : inclArrow)
    out.toAmbient.arrMap[idx] = std::get<2>(key);
  for (const auto &[key, idx] : newArrow)
    out.toAmbient.arrMap[idx] = std::get<4>(key);
  for (int a = 0; a < stack->numArrows(); ++a)
    require(out.toAmbient.arrMap[a] >= 0, "unmapped subdivision arrow");
  return out;
}

} // namespace logchow
