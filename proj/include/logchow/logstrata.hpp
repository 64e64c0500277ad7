// Decorated log strata classes [Gamma, f, gamma]: a stable graph, a
// homological piecewise-polynomial class on its star, and a tensor decoration
// with one strata factor per vertex.  Normalization moves edge-length factors
// into psi decorations, the product sums over generic contraction diagrams,
// and the pushforward lands in piecewise polynomials on the ambient stack.
#pragma once

#include "logchow/modulistack.hpp"
#include "logchow/piecewise.hpp"
#include "logchow/strata.hpp"

#include <map>
#include <string>
#include <vector>

namespace logchow {

// Star of the cone of G, cached per type and canonical key.  The reference
// stays valid for the lifetime of the process.
const GraphStarResult &starRegistry(int g, int n, const StableGraph &G);

// Strict extension of one center-edge length across the star: the coordinate
// of ray "E{e}" on objects keeping that edge, zero elsewhere.
StrictPP edgeLengthPP(const GraphStarResult &gs, int e);
// Product of all center-edge lengths; vanishes exactly off the interior.
StrictPP centerCutPP(const GraphStarResult &gs);
// Strict extension of a function on one vertex-factor moduli stack across the
// star, constant in the other coordinates.
StrictPP liftVertexPP(const GraphStarResult &gs, int v, const StrictPP &fv);
// (-psi_h - psi_h') for the k-th power of one center edge, as a glued tensor
// element over the graph; k = 0 gives the unit.
GluedElem edgePsiPower(const StableGraph &G, int e, int k);

// One term [Gamma, f, gamma].  The class f lives on a subdivision of the
// registry star of the canonical graph and vanishes off the interior; the
// decoration is a single vertex tuple (sums are expanded into separate terms).
struct LogStratum {
  StableGraph graph;
  PPClass f;
  VertexTuple decoration;
};

struct LogElem {
  int g = 0, n = 0;
  std::map<std::string, std::pair<LogStratum, Rat>> terms; // no zero coeffs
};

LogElem logZero(int g, int n);
// [trivial graph, 1, 1].
LogElem logUnit(int g, int n);
// c.[G, f, dec]; G must equal its canonical representative and f must be
// presented on the registry star of G.  Decoration sums expand multilinearly.
LogElem logTerm(int g, int n, const StableGraph &G, const PPClass &f,
                const GluedElem &dec, const Rat &c);
LogElem logAdd(const LogElem &a, const LogElem &b);
LogElem logScale(const LogElem &a, const Rat &c);
bool sameLog(const LogElem &a, const LogElem &b);
std::string logStr(const LogElem &a);

// Empty report = every class is chart-consistent and vanishes off the
// interior of its star, and every decoration factor has the vertex type.
std::vector<std::string> validateLog(const LogElem &a);

// [Gamma, gamma] embeds as [Gamma, product of all edge lengths, gamma].
LogElem embedStrata(const StrataElem &a);

// Canonical representative modulo the module structure over strict piecewise
// polynomials: edge lengths dividing the class become (-psi - psi')
// decorations on the glued halves, and on multiplicity-free stars a strict
// class converts entirely into decorated boundary classes, leaving the cut
// function of the graph.  Classes that stay genuinely non-strict keep their
// presentation.
LogElem normalize(const LogElem &a);

// Strict piecewise polynomials as decorated strata: a monomial supported on
// the cone of a graph maps to that graph with excess (-psi - psi')^(a-1) per
// edge of exponent a; monomials whose support spans no cone vanish.  Requires
// a multiplicity-free stack.
StrataElem strataOfStrictPP(int g, int n, const StrictPP &f);

// Sum over jointly-covering contraction diagrams of the pulled-back classes
// and decorations, weighted by one over the diagram stabilizer order, then
// normalized.  Raises HistoryMismatch when subdivision histories are
// incompatible over a diagram.
LogElem logProduct(const LogElem &a, const LogElem &b);

// Pushforward along the star gluing, averaged over graph automorphisms: the
// extension of each class by zero, as a piecewise-polynomial class on a
// subdivision of the ambient stack.  Raises DecorationNotTrivial unless all
// decorations are trivial.
PPClass pushToLogPP(const LogElem &a);

// Rewrites every psi decoration of a genus-zero element as boundary classes;
// kappa decorations are out of scope and raise DecorationNotTrivial.
StrataElem expandPsiGenus0(const StrataElem &a);

// Genus-zero evaluation through the boundary strata ring: each term must
// carry an edge-length monomial as its class; the decorated graph pushes into
// the strata algebra, psi classes expand to boundary, and the result maps to
// the divisor ring.
StrictPP genus0LogEval(const LogElem &a);

// Kernel element of the comparison map in genus one: h = (x - y).min(l1, l2)
// on the star of the two-edge graph with markings {1,2} and {3} in (1,3),
// where x - y spans the four-point relation on the genus-zero vertex factor.
struct KernelWitness {
  PPClass h;                 // on the stellar subdivision of the star
  bool homological = false;  // consistent charts, zero off the interior
  bool notSinglePolynomial = false; // some object needs two chart values
  bool productFactorization = false; // h = lifted relation times the minimum
};
KernelWitness kernelWitnessGenus1();

} // namespace logchow
