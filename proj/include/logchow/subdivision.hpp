// Smooth equivariant subdivisions of a cone stack: stellar histories plus the
// derived per-object maximal-cone lists.  Refinement and equality are decided
// geometrically by cone containment.
#pragma once

#include "logchow/conestack.hpp"

namespace logchow {

struct StellarOp {
  int obj = -1; // carrier object in the base stack
  Cone cone;    // carrier cone, a cone of the subdivision at that object
  IVec point;   // primitive point in the relative interior of the carrier
};

struct Subdivision {
  StackPtr stack;
  std::vector<StellarOp> history;
  std::vector<std::vector<Cone>> maxCones; // per object, full-dimensional
};

Subdivision trivialSubdivision(const StackPtr &s);
bool isTrivial(const Subdivision &sub);

// Stellar subdivision at the orbit of a point.  The orbit closes the point
// under all arrows of the stack (images, and preimages along faces); every
// maximal cone containing an orbit point is split.  Raises NotInterior when
// the point is not in the relative interior of the carrier cone,
// AsymmetricSubdivision when two orbit points land in one maximal cone, and
// NotSmooth when a split produces a non-smooth cone.
Subdivision stellarAt(const Subdivision &sub, int obj, const Cone &carrier,
                      const IVec &point);

// Whether the two subdivisions live on the same stack (pointer or structural
// object-table equality).
bool sameBase(const Subdivision &a, const Subdivision &b);

// Every maximal cone of fine is contained in a maximal cone of coarse.
bool refines(const Subdivision &fine, const Subdivision &coarse);
bool sameSubdivision(const Subdivision &a, const Subdivision &b);

// The finer of the two when one refines the other; HistoryMismatch otherwise.
Subdivision commonRefinement(const Subdivision &a, const Subdivision &b);

// First maximal cone at obj containing p, or -1.
int maxConeContaining(const Subdivision &sub, int obj, const IVec &p);

// Smoothness, exact covering volume, and arrow compatibility of the induced
// face subdivisions.  Empty report means consistent.
std::vector<std::string> validateSubdivision(const Subdivision &sub);

} // namespace logchow
