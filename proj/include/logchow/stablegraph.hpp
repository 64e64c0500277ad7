// Dual graphs of stable curves: genus-labelled vertices, half-edges with an
// involution whose fixed points are legs carrying markings 1..n.  Provides
// canonical forms, automorphism groups on the half-edge level (loop flips
// included), edge contractions, and exhaustive enumeration by type.
#pragma once

#include "logchow/error.hpp"

#include <string>
#include <utility>
#include <vector>

namespace logchow {

struct StableGraph {
  std::vector<int> genus;      // per vertex
  std::vector<int> vertexOf;   // per half-edge
  std::vector<int> involution; // involution[h] == h marks a leg
  std::vector<int> markingOf;  // 1..n on legs, 0 elsewhere

  int numVertices() const { return static_cast<int>(genus.size()); }
  int numHalfEdges() const { return static_cast<int>(vertexOf.size()); }
  int numLegs() const;
  int numEdges() const { return (numHalfEdges() - numLegs()) / 2; }
  // Vertex genera plus the first Betti number.
  int totalGenus() const;
  int valence(int v) const;
  // Pairs (h, involution[h]) with h < involution[h], sorted by h.
  std::vector<std::pair<int, int>> edges() const;
  // Index into edges(), -1 for legs.
  int edgeOfHalf(int h) const;
  // Half-edge of the leg with the given marking.
  int legHalf(int marking) const;
  // Throws on malformed, disconnected, or unstable data.
  void check() const;
};

// Single vertex of genus g carrying all n markings.
StableGraph trivialGraph(int g, int n);
// legVertex[m-1] = vertex of marking m; edges may repeat and loop.
StableGraph makeGraph(std::vector<int> genus,
                      std::vector<std::pair<int, int>> edgeList,
                      std::vector<int> legVertex);

// Relabelling of vertices and half-edges.
struct GraphIso {
  std::vector<int> vmap;
  std::vector<int> hmap;
};

GraphIso inverseIso(const GraphIso &iso);

struct CanonicalForm {
  StableGraph graph; // canonical representative
  GraphIso toCanon;  // input -> canonical
  std::string key;   // equal keys iff isomorphic graphs
};

CanonicalForm canonicalize(const StableGraph &G);
std::string graphKey(const StableGraph &G);

// All marking-preserving automorphisms; includes loop half-edge flips that
// act trivially on edges.
std::vector<GraphIso> automorphisms(const StableGraph &G);

// Edge contraction written as total maps on the bigger graph.
struct GraphContraction {
  std::vector<int> contracted; // sorted edge indices of the source graph
  std::vector<int> vmap;       // source vertices onto target vertices
  std::vector<int> hmap;       // -1 on halves of contracted edges
};

// Contract the given edges; merged vertices absorb the genus of collapsed
// loops and cycles.  The returned contraction maps G onto the result.
std::pair<StableGraph, GraphContraction> contractEdges(
    const StableGraph &G, const std::vector<int> &edgeSet);

// second after first; A is the source graph of first.
GraphContraction composeContractions(const StableGraph &A,
                                     const GraphContraction &first,
                                     const GraphContraction &second);
GraphContraction contractionFromIso(const GraphIso &iso);
bool isIdentityContraction(const GraphContraction &c);
// Deterministic encoding of the full contraction data.
std::string contractionTag(const GraphContraction &c);
// Per edge of the target, the surviving source edge above it.
std::vector<int> contractionRayMap(const StableGraph &src,
                                   const GraphContraction &c,
                                   const StableGraph &dst);

// All canonical stable graphs of type (g, n), one per isomorphism class,
// sorted by edge count then canonical key.  Throws Unstable when
// 2g - 2 + n <= 0.
std::vector<StableGraph> enumerateStableGraphs(int g, int n);

} // namespace logchow
