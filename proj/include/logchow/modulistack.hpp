// The cone stack of stable graphs of a fixed type: one orthant with edge
// coordinates per canonical graph, arrows given by edge contractions of the
// bigger graph.  Stars of graph cones are built as products of vertex moduli
// stacks with the face stack of the edge orthant, glued tropically into the
// ambient stack.
#pragma once

#include "logchow/stablegraph.hpp"
#include "logchow/star.hpp"

namespace logchow {

struct ModuliStack {
  int g = 0, n = 0;
  std::vector<StableGraph> graphs; // per object, canonical representatives
  StackPtr stack;
  // Per arrow: maps the graph at the arrow's destination onto the graph at
  // its source (the destination graph is the one with more edges).
  std::vector<GraphContraction> contraction;

  // Object carrying the isomorphism class of G, or -1 when G has a
  // different type.
  int objectOf(const StableGraph &G) const;
};

ModuliStack moduliConeStack(int g, int n);

struct GraphStarResult {
  // Product of the vertex moduli stacks with the faces of the edge orthant;
  // interior = objects keeping the full orthant.
  ConeStackWithBoundary star;
  StackMorphism glue; // tropical gluing into the ambient stack
  std::vector<ModuliStack> vertexModuli;   // per vertex of the center graph
  std::vector<std::vector<int>> factorObj; // per star object
  std::vector<std::vector<char>> edgeSet;  // kept center edges, per object
};

// Star of the cone of G inside the ambient stack; G must have the ambient
// type.  Throws TypeMismatch otherwise.
GraphStarResult graphStar(const ModuliStack &ambient, const StableGraph &G);

// Jointly-edge-covering contraction diagrams onto the graphs at o1 and o2,
// one representative per isomorphism class, with groupoid weights.
std::vector<GenericStructure> genericGraphStructures(const ModuliStack &ambient,
                                                     int o1, int o2);

} // namespace logchow
