#include "logchow/cone.hpp"

#include "logchow/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace logchow {

IVec primitive(IVec v) {
  long long g = 0;
  for (long long x : v)
    g = std::gcd(g, x);
  if (g > 1)
    for (long long &x : v)
      x /= g;
  return v;
}

IVec unitVector(int ambient, int i) {
  IVec v(ambient, 0);
  v[i] = 1;
  return v;
}

Cone fullOrthant(int ambient) {
  Cone c;
  c.ambient = ambient;
  for (int i = 0; i < ambient; ++i)
    c.gens.push_back(unitVector(ambient, i));
  return c;
}

Cone coneFromGens(std::vector<IVec> gens, int ambient) {
  Cone c;
  c.ambient = ambient;
  for (IVec &g : gens) {
    require(static_cast<int>(g.size()) == ambient, "generator dimension");
    bool zero = std::all_of(g.begin(), g.end(), [](long long x) { return x == 0; });
    require(!zero, "zero generator");
    for (long long x : g)
      require(x >= 0, "generator outside the orthant");
    c.gens.push_back(primitive(std::move(g)));
  }
  return c;
}

Cone canonicalCone(Cone c) {
  std::sort(c.gens.begin(), c.gens.end());
  return c;
}

std::string coneKey(const Cone &c) {
  std::ostringstream out;
  Cone k = canonicalCone(c);
  for (const IVec &g : k.gens) {
    out << "<";
    for (long long x : g)
      out << x << ",";
    out << ">";
  }
  return out.str();
}

// Smith elementary divisors of the matrix whose rows are the generators.
static std::vector<long long> smithDivisors(std::vector<IVec> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<long long> divisors;
  int top = 0, left = 0;
  while (top < rows && left < cols) {
    int pr = -1, pc = -1;
    long long best = 0;
    for (int r = top; r < rows; ++r)
      for (int c = left; c < cols; ++c)
        if (m[r][c] != 0 && (best == 0 || std::abs(m[r][c]) < best)) {
          best = std::abs(m[r][c]);
          pr = r;
          pc = c;
        }
    if (pr < 0)
      break;
    std::swap(m[top], m[pr]);
    for (int r = 0; r < rows; ++r)
      std::swap(m[r][left], m[r][pc]);
    bool reduced = false;
    while (!reduced) {
      reduced = true;
      for (int r = top + 1; r < rows; ++r) {
        long long q = m[r][left] / m[top][left];
        if (q != 0)
          for (int c = left; c < cols; ++c)
            m[r][c] -= q * m[top][c];
        if (m[r][left] != 0) {
          std::swap(m[top], m[r]);
          reduced = false;
        }
      }
      for (int c = left + 1; c < cols; ++c) {
        long long q = m[top][c] / m[top][left];
        if (q != 0)
          for (int r = top; r < rows; ++r)
            m[r][c] -= q * m[r][left];
        if (m[top][c] != 0) {
          for (int r = 0; r < rows; ++r)
            std::swap(m[r][left], m[r][c]);
          reduced = false;
        }
      }
    }
    divisors.push_back(std::abs(m[top][left]));
    ++top;
    ++left;
  }
  return divisors;
}

bool coneIsSmooth(const Cone &c) {
  if (c.gens.empty())
    return true;
  std::vector<long long> d = smithDivisors(c.gens);
  if (static_cast<int>(d.size()) != c.dim())
    return false;
  return std::all_of(d.begin(), d.end(), [](long long x) { return x == 1; });
}

std::optional<std::vector<Rat>> coordsInCone(const Cone &c, const IVec &p) {
  require(static_cast<int>(p.size()) == c.ambient, "point dimension");
  // Solve sum x_i gens[i] = p by Gaussian elimination on the augmented system.
  int n = c.dim();
  std::vector<std::vector<Rat>> aug(c.ambient, std::vector<Rat>(n + 1));
  for (int r = 0; r < c.ambient; ++r) {
    for (int i = 0; i < n; ++i)
      aug[r][i] = Rat(c.gens[i][r]);
    aug[r][n] = Rat(p[r]);
  }
  std::vector<int> pivotCol;
  int row = 0;
  for (int col = 0; col < n && row < c.ambient; ++col) {
    int sel = -1;
    for (int r = row; r < c.ambient; ++r)
      if (!aug[r][col].isZero()) {
        sel = r;
        break;
      }
    if (sel < 0)
      continue;
    std::swap(aug[row], aug[sel]);
    Rat inv = inverse(aug[row][col]);
    for (Rat &x : aug[row])
      x *= inv;
    for (int r = 0; r < c.ambient; ++r) {
      if (r == row || aug[r][col].isZero())
        continue;
      Rat f = aug[r][col];
      for (int j = 0; j <= n; ++j)
        aug[r][j] -= f * aug[row][j];
    }
    pivotCol.push_back(col);
    ++row;
  }
  // Independent generators means every column is a pivot.
  require(static_cast<int>(pivotCol.size()) == n, "dependent cone generators");
  for (int r = row; r < c.ambient; ++r)
    if (!aug[r][n].isZero())
      return std::nullopt; // p outside the span
  std::vector<Rat> x(n, Rat(0));
  for (int i = 0; i < row; ++i)
    x[pivotCol[i]] = aug[i][n];
  for (const Rat &v : x)
    if (v.sign() < 0)
      return std::nullopt;
  return x;
}

bool coneContainsPoint(const Cone &c, const IVec &p) {
  return coordsInCone(c, p).has_value();
}

std::optional<IMat> expressCone(const Cone &sub, const Cone &sup) {
  require(sub.ambient == sup.ambient, "cone ambient mismatch");
  IMat mat;
  for (const IVec &g : sub.gens) {
    auto x = coordsInCone(sup, g);
    if (!x)
      return std::nullopt;
    std::vector<long long> row;
    for (const Rat &v : *x) {
      if (!v.isInteger())
        return std::nullopt;
      row.push_back(v.num().get_si());
    }
    mat.push_back(std::move(row));
  }
  return mat;
}

bool coneContainsCone(const Cone &sub, const Cone &sup) {
  return expressCone(sub, sup).has_value();
}

Cone faceSpannedBy(const Cone &c, const std::vector<int> &genIdx) {
  Cone f;
  f.ambient = c.ambient;
  for (int i : genIdx)
    f.gens.push_back(c.gens[i]);
  return f;
}

std::optional<std::vector<int>> supportInCone(const Cone &c, const IVec &p) {
  auto x = coordsInCone(c, p);
  if (!x)
    return std::nullopt;
  std::vector<int> s;
  for (int i = 0; i < c.dim(); ++i)
    if (!(*x)[i].isZero())
      s.push_back(i);
  return s;
}

std::vector<Cone> stellarMaxCones(const Cone &c, const IVec &p) {
  auto support = supportInCone(c, p);
  require(support.has_value(), "stellar point outside the cone");
  require(!support->empty(), "stellar point is zero");
  std::vector<Cone> out;
  IVec q = primitive(p);
  for (int drop : *support) {
    Cone piece;
    piece.ambient = c.ambient;
    for (int i = 0; i < c.dim(); ++i)
      if (i != drop)
        piece.gens.push_back(c.gens[i]);
    piece.gens.push_back(q);
    out.push_back(canonicalCone(std::move(piece)));
  }
  return out;
}

IVec mapPointByRayMap(const IVec &p, const std::vector<int> &rayMap,
                      int dstAmbient) {
  IVec q(dstAmbient, 0);
  require(p.size() == rayMap.size(), "ray map arity");
  for (size_t i = 0; i < p.size(); ++i)
    q[rayMap[i]] = p[i];
  return q;
}

Cone mapConeByRayMap(const Cone &c, const std::vector<int> &rayMap,
                     int dstAmbient) {
  Cone out;
  out.ambient = dstAmbient;
  for (const IVec &g : c.gens)
    out.gens.push_back(mapPointByRayMap(g, rayMap, dstAmbient));
  return canonicalCone(out);
}

Cone intersectWithCoordinateFace(const Cone &c, const std::vector<bool> &keep) {
  Cone out;
  out.ambient = c.ambient;
  for (const IVec &g : c.gens) {
    bool inside = true;
    for (int i = 0; i < c.ambient; ++i)
      if (g[i] != 0 && !keep[i])
        inside = false;
    if (inside)
      out.gens.push_back(g);
  }
  return canonicalCone(out);
}

} // namespace logchow
