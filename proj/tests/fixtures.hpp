#ifndef MONOWIDTH_TESTS_FIXTURES_HPP
#define MONOWIDTH_TESTS_FIXTURES_HPP

// Small named instances shared by the unit tests and the acceptance binary.

#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"

namespace fixture {

inline monowidth::Hypergraph graph(std::size_t vertices,
                                   const std::vector<std::vector<std::size_t>>& edges) {
  monowidth::Hypergraph g;
  g.vertices = vertices;
  for (const auto& e : edges) g.addEdge(e);
  return g;
}

inline monowidth::Hypergraph triangle() { return graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline monowidth::Hypergraph clique(std::size_t n) {
  monowidth::Hypergraph g;
  g.vertices = n;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.addEdge({u, v});
  return g;
}

// A triangle, a second triangle sharing its edge 1-2, and a pendant path.
inline monowidth::Hypergraph treeDecExample() {
  return graph(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
}

// Bags {0,1,2} - {1,2,3} - {3,4} - {4,5}; the largest holds three vertices.
inline monowidth::TreeDec treeDecExampleDecomposition() {
  monowidth::TreeDec d;
  d.nodes = 4;
  d.treeEdges = {{0, 1}, {1, 2}, {2, 3}};
  d.bags = {{0, 1, 2}, {1, 2, 3}, {3, 4}, {4, 5}};
  return d;
}

}  // namespace fixture

#endif
