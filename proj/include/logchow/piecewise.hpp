// Piecewise polynomials on cone stacks.  A strict piecewise polynomial stores
// one polynomial per object, written in that object's ray coordinates, and the
// values pull back to each other along every arrow.  On a subdivision the
// values live per maximal cone, still written in the coordinates of the
// underlying object, so restriction to a finer subdivision is re-indexing and
// coarsening is a Brion sum.
#pragma once

#include "logchow/matrix.hpp"
#include "logchow/poly.hpp"
#include "logchow/subdivision.hpp"

namespace logchow {

struct StrictPP {
  ConeStackWithBoundary stack;
  std::vector<Poly> values; // per object
};

// Strict and vanishing on every boundary object.
struct HomPP {
  StrictPP pp;
};

// Piecewise polynomial presented on a subdivision of the stack.
struct PPClass {
  Subdivision sub;
  std::vector<char> interior;            // boundary flags of the base stack
  std::vector<std::vector<Poly>> values; // per object, per maximal cone
};

// Variable names of an object are its ray names.
std::vector<std::string> rayVars(const ConeStack &s, int obj);

StrictPP zeroPP(const ConeStackWithBoundary &stack);
StrictPP constantPP(const ConeStackWithBoundary &stack, const Rat &c);

// Empty report = values compatible under every arrow, automorphisms included.
std::vector<std::string> validateStrict(const StrictPP &f);
// Additionally requires vanishing on every boundary object.
std::vector<std::string> validateHom(const StrictPP &f);
// Checked constructor; raises TypeMismatch on a failed report.
HomPP asHom(const StrictPP &f);

StrictPP add(const StrictPP &a, const StrictPP &b);
StrictPP mul(const StrictPP &a, const StrictPP &b);
StrictPP scale(const StrictPP &a, const Rat &c);
bool samePP(const StrictPP &a, const StrictPP &b);

// Object o of m.src receives the value at m.objMap[o] pulled back along the
// lattice map; src supplies the boundary flags of the result.
StrictPP pullbackPP(const StrictPP &f, const StackMorphism &m,
                    const ConeStackWithBoundary &src);

PPClass classOf(const StrictPP &f);
// Re-index onto a finer subdivision; HistoryMismatch when finer does not
// refine f's subdivision.
PPClass restrictTo(const PPClass &f, const Subdivision &finer);
// Both operands are restricted to the common refinement first.
PPClass add(const PPClass &a, const PPClass &b);
PPClass mul(const PPClass &a, const PPClass &b);
PPClass scale(const PPClass &a, const Rat &c);
bool classEqual(const PPClass &a, const PPClass &b);
Rat classEval(const PPClass &f, int obj, const IVec &p);

// Adjacent maximal cones must agree on shared faces and arrows must carry the
// cone values into each other.  Empty report = consistent.
std::vector<std::string> validateClass(const PPClass &f);

// Coarsening pushforward: per object, the Brion sum of value/(product of
// dual-basis linear forms) over the maximal cones, cleared against the
// object's own coordinate product.  Raises NotDivisible when the input is not
// piecewise polynomial across the subdivision.
StrictPP pushforwardCoarsen(const PPClass &f);

// Pushforward along a relative-dimension-zero morphism: per target object,
// a Brion sum over isomorphism classes of factorizations (source object plus
// invertible arrow from its image), each weighted by the inverse order of its
// automorphism group.  target supplies the boundary flags of the result.
// Raises NotRelDimZero when some source cone drops dimension.
StrictPP pushforwardMorphism(const StrictPP &f, const StackMorphism &pi,
                             const ConeStackWithBoundary &target);
HomPP pushforwardMorphism(const HomPP &f, const StackMorphism &pi,
                          const ConeStackWithBoundary &target);

// For every source object and every arrow out of its image, checks that the
// arrow lifts to the source up to an invertible at its far end.  Empty report
// = the covering condition the pushforward relies on holds.  Uniqueness of
// lifts is deliberately not enforced: quotient presentations carry parallel
// lifts through distinct fiber objects.
std::vector<std::string> pushforwardLiftingReport(const StackMorphism &pi);

// Minimum of the chosen ray coordinates of one object, extended by zero to
// objects missing one of those rays (matched by ray name), presented on the
// stellar subdivision at the barycenter of the spanned face.  A single ray
// gives the plain coordinate on the trivial subdivision.
PPClass minFn(const ConeStackWithBoundary &stack, int obj,
              const std::vector<int> &rayIdx);

// Basis of the space of strict piecewise polynomials homogeneous of degree d
// (homological: vanishing on boundary objects), echelonized deterministically
// over per-object monomial coordinates.
std::vector<StrictPP> degreeBasis(const ConeStackWithBoundary &stack, int d,
                                  bool homological);

} // namespace logchow
