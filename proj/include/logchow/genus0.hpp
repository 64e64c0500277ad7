// Genus-zero boundary geometry as strict piecewise polynomials: divisor ray
// functions, the lifted four-point boundary relations, cone-supported monomial
// spanning sets on any stellar subdivision, and rank or equality decisions in
// the quotient by the relation ideal.
#pragma once

#include "logchow/piecewise.hpp"
#include "logchow/strata.hpp"

#include <array>

namespace logchow {

// Ray function of the boundary divisor whose node separates the markings in A
// from the rest; 2 <= |A| <= n-2.
StrictPP divisorClassPP(int n, const std::vector<int> &A);

// Lifted four-point relation for the split {i,j} | {k,l} of a quadruple of
// markings: the sum of divisors separating i,j from k,l minus the same sum
// with j and k exchanged.
struct WdvvGenerator {
  int n = 0;
  std::array<int, 4> quad{}; // i, j, k, l
  StrictPP cls;
};

// Three generators per quadruple of markings, one per unordered pair split.
std::vector<WdvvGenerator> wdvvGenerators(int n);

// One spanning monomial of fixed total degree: a cone of the subdivision,
// stored at the object whose orthant its coordinate support spans, with a
// positive exponent on each generator.  Distinct monomials are linearly
// independent, so counting them gives the dimension in each degree.
struct ConeMonomial {
  int obj = -1; // home object of the cone
  Cone cone;    // canonical form in home coordinates
  Exp exps;     // per canonical generator, positive, summing to the degree
  int witnessObj = -1, witnessMax = -1; // maximal cone the coefficient is
  std::vector<int> witnessGens;         // read from, and where its generators
                                        // sit inside that cone
};

struct MonomialBasis {
  Subdivision sub;
  int degree = 0;
  std::vector<ConeMonomial> entries;
  std::map<std::string, int> pos;
};

// Requires a multiplicity-free stack: one arrow per coordinate face, no
// nontrivial automorphisms.  The genus-zero stacks qualify.
MonomialBasis monomialBasis(const Subdivision &sub, int d);

// Coefficient vector of a homogeneous class over the spanning monomials.
std::vector<Rat> monomialCoords(const PPClass &f, const MonomialBasis &basis);

// The spanning monomial itself, extended by zero across the subdivision.
PPClass monomialClass(const MonomialBasis &basis, int entry);

// Dimension of the degree-d strict classes modulo the four-point relation
// ideal, on the unsubdivided stack of (0,n) graphs.  Cached.
int keelRank(int n, int d);

// Same quotient dimension computed on a subdivision of the (0,n) stack.
int logChowRank(int n, int d, const Subdivision &sub);

// Whether a - b lies in the degree-d part of the relation ideal after both
// are restricted to a common refinement; HistoryMismatch when the stellar
// histories are incompatible.
bool logChowEqual(int n, const PPClass &a, const PPClass &b, int d);

// Undecorated boundary strata as products of the divisor classes of their
// edges; DecorationNotTrivial on any kappa or psi factor.
StrictPP strataToKeelPP(const StrataElem &a);

} // namespace logchow
