#ifndef MONOWIDTH_RANDOM_INSTANCES_HPP
#define MONOWIDTH_RANDOM_INSTANCES_HPP

#include "monowidth/boundary_graph.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/decomposition.hpp"
#include "monowidth/nat_matrix.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace monowidth {

using Rng = std::mt19937_64;

NatMatrix randomNatMatrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t maxEntry);

/// Each edge picks an arity in [1, maxArity] (capped by the vertex count)
/// and that many distinct endpoints.
Hypergraph randomHypergraph(Rng& rng, std::size_t vertices, std::size_t edges,
                            std::size_t maxArity);

/// Simple undirected graph; every pair is an edge with probability p.
std::vector<std::pair<std::size_t, std::size_t>> randomSimpleGraph(Rng& rng,
                                                                    std::size_t vertices,
                                                                    double p);

/// Legs pick apex vertices uniformly.
CospanHG randomCospan(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t maxArity,
                      std::size_t left, std::size_t right);

/// A uniformly random relabelling of the apex, legs carried along.
CospanHG relabel(Rng& rng, const CospanHG& c);

/// Random decomposition evaluating to h up to isomorphism: compositions
/// along a random edge split, tensors along a split into components, atoms
/// below maxDepth or at random.
CospanDecomposition randomCospanDecomposition(Rng& rng, const CospanHG& h, std::size_t maxDepth);

struct PropGraphSample {
  DecompTree tree;
  Signature<GraphWithBoundaries> sig;
};

/// Random decomposition evaluating to g up to vertex permutation:
/// compositions along a random vertex split, or a vertex-free morphism
/// followed by single vertices, atoms below maxDepth or at random.
PropGraphSample randomPropGraphDecomposition(Rng& rng, const GraphWithBoundaries& g,
                                             std::size_t maxDepth);

}  // namespace monowidth

#endif
