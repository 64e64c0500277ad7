// Cone stacks as explicit finite categories.  Objects are smooth orthants with
// named rays; arrows are injective ray maps, optionally tagged so that
// parallel arrows acting identically on cones stay distinct (loop flips,
// barycenter automorphisms).  Composition is an explicit table: builders
// either register composites or rely on derivation when ray maps determine
// arrows uniquely.
#pragma once

#include "logchow/cone.hpp"
#include "logchow/error.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace logchow {

struct StackObject {
  std::string id;
  std::vector<std::string> rays;
  int dim() const { return static_cast<int>(rays.size()); }
};

struct StackArrow {
  int src = -1;
  int dst = -1;
  std::vector<int> rayMap; // source ray i lands on ray rayMap[i]
  std::string tag;         // distinguishes parallel arrows with equal rayMap
};

class ConeStack {
public:
  int addObject(const std::string &id, std::vector<std::string> rays);
  int addArrow(int src, int dst, std::vector<int> rayMap, std::string tag = "");
  // Registers b∘a = c.
  void setComposite(int a, int b, int c);
  // Installs identities, derives unambiguous composites, freezes the stack.
  void finalize();

  int numObjects() const { return static_cast<int>(objects_.size()); }
  int numArrows() const { return static_cast<int>(arrows_.size()); }
  const StackObject &object(int i) const { return objects_[i]; }
  const StackArrow &arrow(int i) const { return arrows_[i]; }
  int objectIndex(const std::string &id) const; // -1 when absent
  int objectIndexOrThrow(const std::string &id) const;
  int findArrow(int src, int dst, const std::vector<int> &rayMap,
                const std::string &tag) const; // -1 when absent

  const std::vector<int> &arrowsFrom(int obj) const { return from_[obj]; }
  const std::vector<int> &arrowsTo(int obj) const { return to_[obj]; }
  std::vector<int> arrowsBetween(int src, int dst) const;

  int identity(int obj) const { return identity_[obj]; }
  // b after a; both must be registered and composable.
  int compose(int a, int b) const;
  bool isInvertible(int a) const { return inverse_[a] >= 0; }
  int inverseArrow(int a) const;
  // Invertible self-arrows.
  std::vector<int> autArrows(int obj) const;
  // Automorphism arrows whose ray map is the identity permutation.
  int trivialAutCount(int obj) const;

  bool finalized() const { return finalized_; }

  // Consistency report; empty means the category satisfies the cone-stack
  // axioms (identities, closure, associativity up to the check cap, injective
  // ray maps, face-arrow coverage).
  std::vector<std::string> validate(std::size_t assocCap = 200000) const;

private:
  std::vector<StackObject> objects_;
  std::vector<StackArrow> arrows_;
  std::map<std::string, int> objIndex_;
  std::map<std::tuple<int, int, std::vector<int>, std::string>, int> arrowIndex_;
  std::map<std::pair<int, int>, int> comp_;
  std::vector<std::vector<int>> from_, to_;
  std::vector<int> identity_;
  std::vector<int> inverse_;
  bool finalized_ = false;
};

using StackPtr = std::shared_ptr<const ConeStack>;

struct ConeStackWithBoundary {
  StackPtr stack;
  std::vector<char> interior; // per object
  bool isInterior(int obj) const { return interior[obj] != 0; }
};

// Interior objects must be closed under outgoing arrows.
std::vector<std::string> validateBoundary(const ConeStackWithBoundary &s);

// Coordinate-injection matrix of an arrow: mat[i] = e_{rayMap[i]}.
IMat arrowMatrix(const ConeStack &s, int arrow);
// Image of a subcone of the source object inside the destination object.
Cone arrowImageCone(const ConeStack &s, int arrow, const Cone &c);

// Functor between stacks together with per-object lattice maps:
// lattice[o][i] = image of the i-th basis vector of o in coordinates of
// objMap[o].
struct StackMorphism {
  StackPtr src, dst;
  std::vector<int> objMap;
  std::vector<int> arrMap;
  std::vector<IMat> lattice;
};

std::vector<std::string> validateMorphism(const StackMorphism &m);
StackMorphism composeMorphisms(const StackMorphism &f, const StackMorphism &g);
StackMorphism identityMorphism(const StackPtr &s);

// second ∘ first; rows fixes the target dimension when second has no columns.
IMat matMul(const IMat &second, const IMat &first, int rows = -1);
IMat identityIMat(int n);

// Stack of faces of a smooth orthant with the given ray names: one object per
// ray subset, one arrow per inclusion.  Interior = the full face only.
ConeStackWithBoundary facesStack(const std::vector<std::string> &rays);
int facesObjectIndex(const ConeStack &s, const std::vector<int> &raySubset);

// Fixture: the cone stack with objects 0, rho (one ray), sigma (two rays and
// a swap automorphism), where the swap identifies the two embeddings of rho.
// Its coarse space is the Whitney umbrella picture: a plane whose two
// boundary axes are glued.
StackPtr a2z2Stack();

} // namespace logchow
