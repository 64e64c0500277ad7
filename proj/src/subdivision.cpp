#include "logchow/subdivision.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace logchow {

Subdivision trivialSubdivision(const StackPtr &s) {
  Subdivision sub;
  sub.stack = s;
  for (int o = 0; o < s->numObjects(); ++o)
    sub.maxCones.push_back({fullOrthant(s->object(o).dim())});
  return sub;
}

bool isTrivial(const Subdivision &sub) {
  for (int o = 0; o < sub.stack->numObjects(); ++o)
    if (sub.maxCones[o].size() != 1 ||
        sub.maxCones[o][0] != fullOrthant(sub.stack->object(o).dim()))
      return false;
  return true;
}

Subdivision stellarAt(const Subdivision &sub, int obj, const Cone &carrier,
                      const IVec &point) {
  const ConeStack &S = *sub.stack;
  require(obj >= 0 && obj < S.numObjects(), "stellar object out of range");
  require(carrier.ambient == S.object(obj).dim(), "carrier ambient mismatch");
  auto coords = coordsInCone(carrier, point);
  if (!coords.has_value())
    fail(errkind::NotInterior, "point lies outside the carrier cone");
  for (const Rat &c : *coords)
    if (c.isZero())
      fail(errkind::NotInterior,
           "point lies on a proper face of the carrier cone");
  bool carried = false;
  for (const Cone &m : sub.maxCones[obj])
    if (coneContainsCone(carrier, m))
      carried = true;
  require(carried, "carrier is not a cone of the subdivision");

  // Orbit closure under images and face preimages.
  std::set<std::pair<int, IVec>> orbit;
  std::vector<std::pair<int, IVec>> queue{{obj, primitive(point)}};
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    if (!orbit.insert(cur).second)
      continue;
    const auto &[o, q] = cur;
    for (int a : S.arrowsFrom(o)) {
      const StackArrow &ar = S.arrow(a);
      queue.push_back(
          {ar.dst, mapPointByRayMap(q, ar.rayMap, S.object(ar.dst).dim())});
    }
    for (int a : S.arrowsTo(o)) {
      const StackArrow &ar = S.arrow(a);
      std::vector<bool> hit(S.object(o).dim(), false);
      for (int r : ar.rayMap)
        hit[r] = true;
      bool inFace = true;
      for (int r = 0; r < S.object(o).dim(); ++r)
        if (q[r] != 0 && !hit[r])
          inFace = false;
      if (!inFace)
        continue;
      IVec pre(ar.rayMap.size());
      for (size_t i = 0; i < ar.rayMap.size(); ++i)
        pre[i] = q[ar.rayMap[i]];
      queue.push_back({ar.src, std::move(pre)});
    }
  }

  Subdivision out;
  out.stack = sub.stack;
  out.history = sub.history;
  out.history.push_back({obj, carrier, primitive(point)});
  out.maxCones.resize(S.numObjects());
  for (int o = 0; o < S.numObjects(); ++o) {
    std::vector<IVec> pts;
    for (const auto &[po, pq] : orbit)
      if (po == o)
        pts.push_back(pq);
    for (const Cone &m : sub.maxCones[o]) {
      std::vector<IVec> inside;
      for (const IVec &q : pts)
        if (coneContainsPoint(m, q))
          inside.push_back(q);
      if (inside.size() > 1)
        fail(errkind::AsymmetricSubdivision,
             "two orbit points meet one maximal cone of object '" +
                 S.object(o).id + "'");
      if (inside.empty()) {
        out.maxCones[o].push_back(m);
        continue;
      }
      for (Cone &piece : stellarMaxCones(m, inside[0])) {
        if (!coneIsSmooth(piece))
          fail(errkind::NotSmooth, "stellar split is not smooth at object '" +
                                       S.object(o).id + "'");
        out.maxCones[o].push_back(std::move(piece));
      }
    }
  }
  return out;
}

bool sameBase(const Subdivision &a, const Subdivision &b) {
  if (a.stack == b.stack)
    return true;
  const ConeStack &A = *a.stack, &B = *b.stack;
  if (A.numObjects() != B.numObjects() || A.numArrows() != B.numArrows())
    return false;
  for (int o = 0; o < A.numObjects(); ++o)
    if (A.object(o).id != B.object(o).id || A.object(o).rays != B.object(o).rays)
      return false;
  return true;
}

bool refines(const Subdivision &fine, const Subdivision &coarse) {
  if (!sameBase(fine, coarse))
    return false;
  for (int o = 0; o < fine.stack->numObjects(); ++o)
    for (const Cone &f : fine.maxCones[o]) {
      bool inside = false;
      for (const Cone &c : coarse.maxCones[o])
        if (coneContainsCone(f, c)) {
          inside = true;
          break;
        }
      if (!inside)
        return false;
    }
  return true;
}

bool sameSubdivision(const Subdivision &a, const Subdivision &b) {
  return refines(a, b) && refines(b, a);
}

Subdivision commonRefinement(const Subdivision &a, const Subdivision &b) {
  if (!sameBase(a, b))
    fail(errkind::StackMismatch, "subdivisions of different stacks");
  if (refines(a, b))
    return a;
  if (refines(b, a))
    return b;
  fail(errkind::HistoryMismatch,
       "neither subdivision refines the other; no common refinement in the "
       "supported fragment");
}

int maxConeContaining(const Subdivision &sub, int obj, const IVec &p) {
  for (size_t k = 0; k < sub.maxCones[obj].size(); ++k)
    if (coneContainsPoint(sub.maxCones[obj][k], p))
      return static_cast<int>(k);
  return -1;
}

std::vector<std::string> validateSubdivision(const Subdivision &sub) {
  std::vector<std::string> out;
  const ConeStack &S = *sub.stack;
  require(sub.maxCones.size() == static_cast<size_t>(S.numObjects()),
          "max cone table size");
  for (int o = 0; o < S.numObjects(); ++o) {
    int d = S.object(o).dim();
    Rat vol(0);
    for (const Cone &m : sub.maxCones[o]) {
      if (m.dim() != d || m.ambient != d) {
        out.push_back("non-maximal cone at object " + S.object(o).id);
        continue;
      }
      if (!coneIsSmooth(m)) {
        out.push_back("non-smooth cone at object " + S.object(o).id);
        continue;
      }
      Rat piece(1);
      for (const IVec &g : m.gens) {
        long long s = 0;
        for (long long x : g)
          s += x;
        piece = piece / Rat(s);
      }
      vol = vol + piece;
    }
    if (!(vol == Rat(1)))
      out.push_back("covering volume " + vol.str() + " at object " +
                    S.object(o).id);
    // generic sample points must lie in exactly one maximal cone
    std::mt19937_64 rng(0xC0FFEE + o);
    for (int t = 0; t < 20; ++t) {
      IVec p(d);
      for (int i = 0; i < d; ++i)
        p[i] = 1 + static_cast<long long>(rng() % 1000);
      int hits = 0;
      for (const Cone &m : sub.maxCones[o])
        if (coneContainsPoint(m, p))
          ++hits;
      if (hits != 1) {
        out.push_back("sample point in " + std::to_string(hits) +
                      " cones at object " + S.object(o).id);
        break;
      }
    }
  }
  // arrow compatibility: the subdivision induced on a face equals the face
  // object's subdivision
  for (int a = 0; a < S.numArrows(); ++a) {
    const StackArrow &ar = S.arrow(a);
    int sd = S.object(ar.src).dim(), dd = S.object(ar.dst).dim();
    std::vector<bool> keep(dd, false);
    for (int r : ar.rayMap)
      keep[r] = true;
    std::set<std::string> induced;
    for (const Cone &m : sub.maxCones[ar.dst]) {
      Cone mf = intersectWithCoordinateFace(m, keep);
      if (mf.dim() != sd)
        continue;
      Cone pre;
      pre.ambient = sd;
      for (const IVec &g : mf.gens) {
        IVec v(sd);
        for (int i = 0; i < sd; ++i)
          v[i] = g[ar.rayMap[i]];
        pre.gens.push_back(std::move(v));
      }
      induced.insert(coneKey(canonicalCone(pre)));
    }
    std::set<std::string> own;
    for (const Cone &m : sub.maxCones[ar.src])
      own.insert(coneKey(canonicalCone(m)));
    if (induced != own)
      out.push_back("face subdivision mismatch along arrow " +
                    std::to_string(a));
  }
  return out;
}

} // namespace logchow
