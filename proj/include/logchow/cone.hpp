// Smooth simplicial subcones of an orthant, with exact lattice arithmetic.
// A Cone lives in the coordinate space of some stack object; its generators
// are primitive nonnegative integer vectors.
#pragma once

#include "logchow/poly.hpp"
#include "logchow/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logchow {

using IVec = std::vector<long long>;

struct Cone {
  std::vector<IVec> gens; // primitive, linearly independent
  int ambient = 0;

  int dim() const { return static_cast<int>(gens.size()); }
  bool operator==(const Cone &o) const = default;
};

IVec primitive(IVec v);
IVec unitVector(int ambient, int i);

// Orthant spanned by all coordinate axes.
Cone fullOrthant(int ambient);
Cone coneFromGens(std::vector<IVec> gens, int ambient);

// Canonical form: generators sorted lexicographically.
Cone canonicalCone(Cone c);
std::string coneKey(const Cone &c);

// Elementary divisors of the generator matrix; smooth means dim() divisors,
// all equal to 1.
bool coneIsSmooth(const Cone &c);

// Coordinates of p in the generator basis, if p lies in the cone.
std::optional<std::vector<Rat>> coordsInCone(const Cone &c, const IVec &p);
bool coneContainsPoint(const Cone &c, const IVec &p);

// Integer coordinates of each generator of sub in the basis of sup; present
// exactly when sub is a subcone of the smooth cone sup.
std::optional<IMat> expressCone(const Cone &sub, const Cone &sup);
bool coneContainsCone(const Cone &sub, const Cone &sup);

Cone faceSpannedBy(const Cone &c, const std::vector<int> &genIdx);

// Support of p's expression in c (indices of generators with positive
// coefficient); empty optional when p is outside c.
std::optional<std::vector<int>> supportInCone(const Cone &c, const IVec &p);

// Max cones of the stellar subdivision of c at p in c; p must be nonzero.
std::vector<Cone> stellarMaxCones(const Cone &c, const IVec &p);

// Image of a point under a coordinate-injection ray map into a larger space.
IVec mapPointByRayMap(const IVec &p, const std::vector<int> &rayMap,
                      int dstAmbient);
Cone mapConeByRayMap(const Cone &c, const std::vector<int> &rayMap,
                     int dstAmbient);

// Generators of c whose support lies inside the coordinate set keep.
Cone intersectWithCoordinateFace(const Cone &c, const std::vector<bool> &keep);

} // namespace logchow
