#include "logchow/conestack.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace logchow {

int ConeStack::addObject(const std::string &id, std::vector<std::string> rays) {
  require(!finalized_, "addObject after finalize");
  require(objIndex_.find(id) == objIndex_.end(), "duplicate object id " + id);
  int idx = numObjects();
  objIndex_[id] = idx;
  objects_.push_back({id, std::move(rays)});
  from_.emplace_back();
  to_.emplace_back();
  return idx;
}

int ConeStack::addArrow(int src, int dst, std::vector<int> rayMap,
                        std::string tag) {
  require(!finalized_, "addArrow after finalize");
  require(src >= 0 && src < numObjects() && dst >= 0 && dst < numObjects(),
          "arrow endpoint out of range");
  require(static_cast<int>(rayMap.size()) == objects_[src].dim(),
          "ray map arity");
  std::vector<bool> hit(objects_[dst].dim(), false);
  for (int r : rayMap) {
    require(r >= 0 && r < objects_[dst].dim(), "ray map target out of range");
    require(!hit[r], "ray map not injective");
    hit[r] = true;
  }
  auto key = std::make_tuple(src, dst, rayMap, tag);
  require(arrowIndex_.find(key) == arrowIndex_.end(), "duplicate arrow");
  int idx = numArrows();
  arrowIndex_[key] = idx;
  arrows_.push_back({src, dst, std::move(rayMap), std::move(tag)});
  from_[src].push_back(idx);
  to_[dst].push_back(idx);
  return idx;
}

void ConeStack::setComposite(int a, int b, int c) {
  require(!finalized_, "setComposite after finalize");
  require(arrows_[a].dst == arrows_[b].src, "pair not composable");
  require(arrows_[c].src == arrows_[a].src && arrows_[c].dst == arrows_[b].dst,
          "composite endpoints");
  comp_[{a, b}] = c;
}

void ConeStack::finalize() {
  require(!finalized_, "finalize twice");
  identity_.assign(numObjects(), -1);
  for (int o = 0; o < numObjects(); ++o) {
    std::vector<int> idMap(objects_[o].dim());
    for (int i = 0; i < objects_[o].dim(); ++i)
      idMap[i] = i;
    int id = findArrow(o, o, idMap, "");
    if (id < 0)
      id = addArrow(o, o, idMap, "");
    identity_[o] = id;
  }
  for (int a = 0; a < numArrows(); ++a) {
    comp_.insert({{identity_[arrows_[a].src], a}, a});
    comp_.insert({{a, identity_[arrows_[a].dst]}, a});
  }
  // Derive composites that are determined by their ray map.
  for (int a = 0; a < numArrows(); ++a)
    for (int b : from_[arrows_[a].dst]) {
      if (comp_.count({a, b}))
        continue;
      std::vector<int> rm(arrows_[a].rayMap.size());
      for (size_t i = 0; i < rm.size(); ++i)
        rm[i] = arrows_[b].rayMap[arrows_[a].rayMap[i]];
      int found = -1;
      bool unique = true;
      for (int c : from_[arrows_[a].src])
        if (arrows_[c].dst == arrows_[b].dst && arrows_[c].rayMap == rm) {
          if (found >= 0)
            unique = false;
          found = c;
        }
      if (found >= 0 && unique)
        comp_[{a, b}] = found;
    }
  inverse_.assign(numArrows(), -1);
  for (int a = 0; a < numArrows(); ++a) {
    if (inverse_[a] >= 0)
      continue;
    for (int b : from_[arrows_[a].dst]) {
      if (arrows_[b].dst != arrows_[a].src)
        continue;
      auto ab = comp_.find({a, b});
      auto ba = comp_.find({b, a});
      if (ab != comp_.end() && ba != comp_.end() &&
          ab->second == identity_[arrows_[a].src] &&
          ba->second == identity_[arrows_[a].dst]) {
        inverse_[a] = b;
        inverse_[b] = a;
        break;
      }
    }
  }
  finalized_ = true;
}

int ConeStack::objectIndex(const std::string &id) const {
  auto it = objIndex_.find(id);
  return it == objIndex_.end() ? -1 : it->second;
}

int ConeStack::objectIndexOrThrow(const std::string &id) const {
  int i = objectIndex(id);
  if (i < 0)
    fail(errkind::UnknownObject, "no object with id '" + id + "'");
  return i;
}

int ConeStack::findArrow(int src, int dst, const std::vector<int> &rayMap,
                         const std::string &tag) const {
  auto it = arrowIndex_.find(std::make_tuple(src, dst, rayMap, tag));
  return it == arrowIndex_.end() ? -1 : it->second;
}

std::vector<int> ConeStack::arrowsBetween(int src, int dst) const {
  std::vector<int> out;
  for (int a : from_[src])
    if (arrows_[a].dst == dst)
      out.push_back(a);
  return out;
}

int ConeStack::compose(int a, int b) const {
  require(finalized_, "compose before finalize");
  auto it = comp_.find({a, b});
  require(it != comp_.end(), "missing composite");
  return it->second;
}

int ConeStack::inverseArrow(int a) const {
  require(inverse_[a] >= 0, "arrow not invertible");
  return inverse_[a];
}

std::vector<int> ConeStack::autArrows(int obj) const {
  std::vector<int> out;
  for (int a : from_[obj])
    if (arrows_[a].dst == obj && isInvertible(a))
      out.push_back(a);
  return out;
}

int ConeStack::trivialAutCount(int obj) const {
  int n = 0;
  for (int a : autArrows(obj)) {
    bool trivial = true;
    for (size_t i = 0; i < arrows_[a].rayMap.size(); ++i)
      if (arrows_[a].rayMap[i] != static_cast<int>(i))
        trivial = false;
    if (trivial)
      ++n;
  }
  return n;
}

std::vector<std::string> ConeStack::validate(std::size_t assocCap) const {
  std::vector<std::string> out;
  require(finalized_, "validate before finalize");
  for (int o = 0; o < numObjects(); ++o) {
    int id = identity_[o];
    if (id < 0) {
      out.push_back("object " + objects_[o].id + " has no identity");
      continue;
    }
  }
  // closure and composite sanity
  for (int a = 0; a < numArrows(); ++a)
    for (int b : from_[arrows_[a].dst]) {
      auto it = comp_.find({a, b});
      if (it == comp_.end()) {
        out.push_back("missing composite of arrows " + std::to_string(a) +
                      " and " + std::to_string(b));
        continue;
      }
      const StackArrow &c = arrows_[it->second];
      if (c.src != arrows_[a].src || c.dst != arrows_[b].dst)
        out.push_back("composite endpoints wrong for " + std::to_string(a) +
                      "," + std::to_string(b));
      for (size_t i = 0; i < c.rayMap.size(); ++i)
        if (c.rayMap[i] != arrows_[b].rayMap[arrows_[a].rayMap[i]]) {
          out.push_back("composite ray map wrong for " + std::to_string(a) +
                        "," + std::to_string(b));
          break;
        }
    }
  // identity neutrality
  for (int a = 0; a < numArrows(); ++a) {
    auto l = comp_.find({identity_[arrows_[a].src], a});
    auto r = comp_.find({a, identity_[arrows_[a].dst]});
    if (l == comp_.end() || l->second != a || r == comp_.end() || r->second != a)
      out.push_back("identity not neutral on arrow " + std::to_string(a));
  }
  // associativity, capped deterministically
  std::size_t checked = 0;
  for (int a = 0; a < numArrows() && checked < assocCap; ++a)
    for (int b : from_[arrows_[a].dst]) {
      if (checked >= assocCap)
        break;
      auto ab = comp_.find({a, b});
      if (ab == comp_.end())
        continue;
      for (int c : from_[arrows_[b].dst]) {
        if (++checked >= assocCap)
          break;
        auto bc = comp_.find({b, c});
        auto left = comp_.find({ab->second, c});
        if (bc == comp_.end() || left == comp_.end())
          continue;
        auto right = comp_.find({a, bc->second});
        if (right == comp_.end() || left->second != right->second) {
          out.push_back("associativity fails at " + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c));
        }
      }
    }
  // face-arrow coverage: every ray subset of every object is an arrow image
  for (int o = 0; o < numObjects(); ++o) {
    int d = objects_[o].dim();
    std::set<std::vector<int>> seen;
    for (int a : to_[o]) {
      std::vector<int> im = arrows_[a].rayMap;
      std::sort(im.begin(), im.end());
      seen.insert(im);
    }
    for (int mask = 0; mask < (1 << d); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < d; ++i)
        if (mask & (1 << i))
          subset.push_back(i);
      if (!seen.count(subset)) {
        out.push_back("object " + objects_[o].id +
                      " has a face with no incoming arrow");
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> validateBoundary(const ConeStackWithBoundary &s) {
  std::vector<std::string> out;
  require(s.interior.size() == static_cast<size_t>(s.stack->numObjects()),
          "interior mask size");
  for (int a = 0; a < s.stack->numArrows(); ++a) {
    const StackArrow &ar = s.stack->arrow(a);
    if (s.isInterior(ar.src) && !s.isInterior(ar.dst))
      out.push_back("interior object " + s.stack->object(ar.src).id +
                    " maps to boundary object " + s.stack->object(ar.dst).id);
  }
  return out;
}

IMat arrowMatrix(const ConeStack &s, int arrow) {
  const StackArrow &a = s.arrow(arrow);
  int dd = s.object(a.dst).dim();
  IMat mat;
  for (int r : a.rayMap) {
    std::vector<long long> col(dd, 0);
    col[r] = 1;
    mat.push_back(std::move(col));
  }
  return mat;
}

Cone arrowImageCone(const ConeStack &s, int arrow, const Cone &c) {
  const StackArrow &a = s.arrow(arrow);
  return mapConeByRayMap(c, a.rayMap, s.object(a.dst).dim());
}

IMat matMul(const IMat &second, const IMat &first, int rows) {
  IMat out;
  size_t dstDim = second.empty() ? 0 : second[0].size();
  if (rows >= 0) {
    require(second.empty() || dstDim == static_cast<size_t>(rows),
            "matrix row hint mismatch");
    dstDim = static_cast<size_t>(rows);
  }
  for (const auto &col : first) {
    require(col.size() == second.size(), "matrix dimension mismatch");
    std::vector<long long> v(dstDim, 0);
    for (size_t j = 0; j < col.size(); ++j)
      if (col[j] != 0)
        for (size_t k = 0; k < dstDim; ++k)
          v[k] += col[j] * second[j][k];
    out.push_back(std::move(v));
  }
  return out;
}

IMat identityIMat(int n) {
  IMat m;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> col(n, 0);
    col[i] = 1;
    m.push_back(std::move(col));
  }
  return m;
}

std::vector<std::string> validateMorphism(const StackMorphism &m) {
  std::vector<std::string> out;
  const ConeStack &S = *m.src, &D = *m.dst;
  require(m.objMap.size() == static_cast<size_t>(S.numObjects()) &&
              m.arrMap.size() == static_cast<size_t>(S.numArrows()) &&
              m.lattice.size() == static_cast<size_t>(S.numObjects()),
          "morphism table sizes");
  for (int o = 0; o < S.numObjects(); ++o) {
    int d = m.objMap[o];
    if (static_cast<int>(m.lattice[o].size()) != S.object(o).dim()) {
      out.push_back("lattice arity at object " + S.object(o).id);
      continue;
    }
    std::vector<bool> hit(D.object(d).dim(), false);
    for (const auto &col : m.lattice[o]) {
      if (static_cast<int>(col.size()) != D.object(d).dim()) {
        out.push_back("lattice column size at object " + S.object(o).id);
        break;
      }
      for (size_t k = 0; k < col.size(); ++k) {
        if (col[k] < 0)
          out.push_back("negative lattice entry at object " + S.object(o).id);
        if (col[k] != 0)
          hit[k] = true;
      }
    }
    for (bool h : hit)
      if (!h) {
        out.push_back("image factors through a proper face at object " +
                      S.object(o).id);
        break;
      }
  }
  for (int a = 0; a < S.numArrows(); ++a) {
    const StackArrow &ar = S.arrow(a);
    int fa = m.arrMap[a];
    const StackArrow &far = D.arrow(fa);
    if (far.src != m.objMap[ar.src] || far.dst != m.objMap[ar.dst]) {
      out.push_back("arrow image endpoints wrong at arrow " + std::to_string(a));
      continue;
    }
    int rows = D.object(far.dst).dim();
    if (matMul(m.lattice[ar.dst], arrowMatrix(S, a), rows) !=
        matMul(arrowMatrix(D, fa), m.lattice[ar.src], rows))
      out.push_back("lattice square does not commute at arrow " +
                    std::to_string(a));
  }
  for (int o = 0; o < S.numObjects(); ++o)
    if (m.arrMap[S.identity(o)] != D.identity(m.objMap[o]))
      out.push_back("identity not preserved at object " + S.object(o).id);
  for (int a = 0; a < S.numArrows(); ++a)
    for (int b : S.arrowsFrom(S.arrow(a).dst)) {
      int c = S.compose(a, b);
      if (m.arrMap[c] != D.compose(m.arrMap[a], m.arrMap[b])) {
        out.push_back("functoriality fails at arrows " + std::to_string(a) +
                      "," + std::to_string(b));
      }
    }
  return out;
}

StackMorphism composeMorphisms(const StackMorphism &f, const StackMorphism &g) {
  require(f.dst == g.src, "morphisms not composable");
  StackMorphism h;
  h.src = f.src;
  h.dst = g.dst;
  for (int o = 0; o < f.src->numObjects(); ++o) {
    h.objMap.push_back(g.objMap[f.objMap[o]]);
    h.lattice.push_back(matMul(g.lattice[f.objMap[o]], f.lattice[o],
                               g.dst->object(h.objMap[o]).dim()));
  }
  for (int a = 0; a < f.src->numArrows(); ++a)
    h.arrMap.push_back(g.arrMap[f.arrMap[a]]);
  return h;
}

StackMorphism identityMorphism(const StackPtr &s) {
  StackMorphism m;
  m.src = m.dst = s;
  for (int o = 0; o < s->numObjects(); ++o) {
    m.objMap.push_back(o);
    m.lattice.push_back(identityIMat(s->object(o).dim()));
  }
  for (int a = 0; a < s->numArrows(); ++a)
    m.arrMap.push_back(a);
  return m;
}

static std::string faceId(const std::vector<std::string> &names) {
  std::ostringstream out;
  out << "f[";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i)
      out << ",";
    out << names[i];
  }
  out << "]";
  return out.str();
}

ConeStackWithBoundary facesStack(const std::vector<std::string> &rays) {
  int n = static_cast<int>(rays.size());
  auto stack = std::make_shared<ConeStack>();
  std::vector<std::vector<int>> subsets;
  for (int size = 0; size <= n; ++size)
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i))
          s.push_back(i);
      if (static_cast<int>(s.size()) == size)
        subsets.push_back(std::move(s));
    }
  std::map<std::vector<int>, int> index;
  for (const auto &s : subsets) {
    std::vector<std::string> names;
    for (int i : s)
      names.push_back(rays[i]);
    std::string id = faceId(names);
    index[s] = stack->addObject(id, std::move(names));
  }
  for (const auto &s : subsets)
    for (const auto &t : subsets) {
      if (s.size() > t.size() || (s == t))
        continue;
      std::vector<int> rm;
      bool ok = true;
      for (int x : s) {
        auto it = std::find(t.begin(), t.end(), x);
        if (it == t.end()) {
          ok = false;
          break;
        }
        rm.push_back(static_cast<int>(it - t.begin()));
      }
      if (ok)
        stack->addArrow(index[s], index[t], std::move(rm));
    }
  stack->finalize();
  ConeStackWithBoundary out;
  out.stack = stack;
  out.interior.assign(stack->numObjects(), 0);
  out.interior.back() = 1; // full face is listed last
  return out;
}

int facesObjectIndex(const ConeStack &s, const std::vector<int> &raySubset) {
  const std::vector<std::string> &all = s.object(s.numObjects() - 1).rays;
  std::vector<std::string> names;
  for (int i : raySubset)
    names.push_back(all[i]);
  return s.objectIndexOrThrow(faceId(names));
}

StackPtr a2z2Stack() {
  auto s = std::make_shared<ConeStack>();
  int zero = s->addObject("0", {});
  int rho = s->addObject("rho", {"r"});
  int sigma = s->addObject("sigma", {"x", "y"});
  s->addArrow(zero, rho, {});
  s->addArrow(zero, sigma, {});
  s->addArrow(rho, sigma, {0});
  s->addArrow(rho, sigma, {1});
  s->addArrow(sigma, sigma, {1, 0});
  s->finalize();
  return s;
}

} // namespace logchow
