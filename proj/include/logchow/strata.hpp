// Decorated boundary strata of moduli of curves: stable graphs carrying
// kappa and psi exponents, the excess-intersection product over generic
// contraction diagrams, and pullback/pushforward along one gluing level.
// Decorations whose degree exceeds the vertex dimension are zero.
#pragma once

#include "logchow/modulistack.hpp"
#include "logchow/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logchow {

// kappa[v] holds sorted pairs (a, e) with a >= 1, e >= 1; psi[h] >= 0 per
// half-edge, legs included.
struct Decoration {
  std::vector<std::vector<std::pair<int, int>>> kappa;
  std::vector<int> psi;
};

Decoration trivialDecoration(const StableGraph &G);
bool decorationTrivial(const Decoration &d);
// kappa_a counts with weight a, psi with weight 1.
int decorationDegreeAt(const StableGraph &G, const Decoration &d, int v);
int decorationDegree(const StableGraph &G, const Decoration &d);
// Every vertex must satisfy degree_v <= 3 g(v) - 3 + valence(v).
bool withinDimensionBounds(const StableGraph &G, const Decoration &d);
// Relabel along iso; the target graph has the same vertex and half counts.
Decoration transportDecoration(const StableGraph &src, const Decoration &d,
                               const GraphIso &iso);
std::string decorationKey(const Decoration &d);

// Canonical decorated stratum: canonical graph with the decoration made
// minimal over its automorphisms.  degree = edges + decoration degree.
struct DecStratum {
  StableGraph graph;
  Decoration decoration;
  std::string key;
  int degree = 0;
};

// nullopt when the decoration exceeds a vertex dimension bound.
std::optional<DecStratum> makeDecStratum(const StableGraph &G,
                                         const Decoration &d);
DecStratum trivialStratum(int g, int n);

// Formal rational combination of decorated strata of one type (g, n).
struct StrataElem {
  int g = 0, n = 0;
  std::map<std::string, std::pair<DecStratum, Rat>> terms; // no zero coeffs
};

StrataElem strataZero(int g, int n);
StrataElem strataUnit(int g, int n);
// c.[G, d]; the zero element when the bounds kill the decoration.
StrataElem strataTerm(int g, int n, const StableGraph &G, const Decoration &d,
                      const Rat &c);
void accumulate(StrataElem &e, const DecStratum &s, const Rat &c);
StrataElem add(const StrataElem &a, const StrataElem &b);
StrataElem scale(const StrataElem &a, const Rat &c);
bool sameElem(const StrataElem &a, const StrataElem &b);
// Distinct degrees of the terms, sorted.
std::vector<int> degreesOf(const StrataElem &a);
std::string strataStr(const StrataElem &a);

// Shared cached moduli cone stacks, keyed by type.
const ModuliStack &moduliRegistry(int g, int n);

// Sum over generic contraction diagrams onto both factors, with excess
// factor (-psi - psi') per edge surviving on both sides and weight one over
// the stabilizer order of the arrow pair.
StrataElem strataProduct(const StrataElem &a, const StrataElem &b);

// Element of the tensor product over the vertices of a base graph.  The
// factor at vertex v has type (g(v), valence(v)); marking j of the factor
// stands for the j-th smallest half-edge at v.
struct VertexTuple {
  std::vector<DecStratum> factor;
};
std::string tupleKey(const VertexTuple &t);

struct GluedElem {
  StableGraph base;
  std::map<std::string, std::pair<VertexTuple, Rat>> terms;
};

GluedElem gluedZero(const StableGraph &base);
GluedElem gluedUnit(const StableGraph &base);
GluedElem gluedTerm(const StableGraph &base, const VertexTuple &t,
                    const Rat &c);
void accumulateGlued(GluedElem &e, const VertexTuple &t, const Rat &c);
GluedElem gluedAdd(const GluedElem &a, const GluedElem &b);
GluedElem gluedScale(const GluedElem &a, const Rat &c);
bool sameGlued(const GluedElem &a, const GluedElem &b);
// Vertex-wise strataProduct, expanded multilinearly.
GluedElem gluedProduct(const GluedElem &a, const GluedElem &b);

// Restriction to the stratum of the base graph: sum over generic diagrams
// against the base, split into one factor per base vertex.  Excess psi
// classes land on the factor legs over the surviving edges.
GluedElem gluingPullback(const StrataElem &a, const StableGraph &base);
// Grafts each factor into its base vertex; formal, no extra weights.
StrataElem gluingPushforward(const GluedElem &t);

// Genus-0 expansion psi_i = sum of [delta_A] over A containing i but not j
// and k.  Throws Unstable for n < 4.
StrataElem psiAsBoundary(int n, int i, int j, int k);

} // namespace logchow
