// Star of an object in a cone stack, generic structures, the embedding test
// for star subdivision, and the categorical star subdivision itself.
#pragma once

#include "logchow/conestack.hpp"

namespace logchow {

// One object of the star: a diagram center -> prime <- second with the images
// of the two arrows jointly covering all rays of prime.
struct StarDiagram {
  int jprime;  // arrow center -> prime
  int jsecond; // arrow second -> prime
};

struct StarResult {
  ConeStackWithBoundary star; // interior = diagrams with invertible jsecond
  StackMorphism toAmbient;    // diagram -> its second object
  StackMorphism toFaces;      // tropical projection onto the faces of center
  std::vector<StarDiagram> diagrams; // representative per star object
  StackPtr ambient;
  int center = -1;
  // Bookkeeping used to transport arrows between stars.
  std::vector<StarDiagram> allDiagrams;
  std::vector<int> classOfDiagram;
  std::vector<std::pair<int, int>> isoFromRep; // (pp, ps): rep -> diagram
  std::vector<std::pair<int, int>> arrowPayload; // (pp, ps) per star arrow
};

StarResult star(const StackPtr &ambient, int center);

// Star arrow with the given endpoints and payload, or -1.
int findStarArrow(const StarResult &st, int srcClass, int dstClass, int pp,
                  int ps);

// Covariant action on stars: for an arrow psi: tau -> sigma, the induced
// morphism star(sigma) -> star(tau).
StackMorphism starOfArrow(const StarResult &fine, const StarResult &coarse,
                          int psi);

// Isomorphism class of triples (obj, phi1: o1 -> obj, phi2: o2 -> obj) whose
// ray images jointly cover obj.
struct GenericStructure {
  int obj;
  int phi1;
  int phi2;
  int autOrder;   // automorphisms of obj fixing both arrows
  int orbitSize;  // elements in the isomorphism class
};

std::vector<GenericStructure> genericStructures(const StackPtr &s, int o1,
                                                int o2);

// Whether the open star embeds into the stack; required before star
// subdivision.  Fails when automorphisms do not act transitively before or
// freely after fixing an embedding of the center.
bool starEmbeds(const StackPtr &s, int center);

struct StarSubdivideResult {
  StackPtr stack;
  StackMorphism toAmbient; // lattice maps carry the subdividing cones
};

// Categorical stellar subdivision at the barycenter of the given object.
// Raises NotEmbedded when the star does not embed.
StarSubdivideResult starSubdivide(const StackPtr &s, int center);

} // namespace logchow
