#ifndef MONOWIDTH_COSPAN_HPP
#define MONOWIDTH_COSPAN_HPP

#include "monowidth/decomposition.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monowidth {

/// Vertices are 0..vertices-1. Each edge is a sorted set of endpoints; edge
/// order matters, parallel edges are allowed.
struct Hypergraph {
  std::size_t vertices = 0;
  std::vector<std::vector<std::size_t>> edges;

  /// Sorts and deduplicates the endpoints. Throws on an endpoint out of range.
  void addEdge(std::vector<std::size_t> ends);
  std::size_t maxArity() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

/// Graph plus a sorted set of marked vertices.
struct HypergraphWithSources {
  Hypergraph graph;
  std::vector<std::size_t> sources;
};

/// Sorted union of the endpoints of the listed edges.
std::vector<std::size_t> edgeEnds(const Hypergraph& g, const std::vector<std::size_t>& edges);

/// The subgraph on the listed (sorted) vertices and edges, renumbered by
/// position in `vertices`. Throws if an edge leaves the vertex set.
Hypergraph restrictGraph(const Hypergraph& g, const std::vector<std::size_t>& edges,
                         const std::vector<std::size_t>& vertices);

/// left -> apex <- right, boundaries are discrete.
struct CospanHG {
  Hypergraph apex;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  std::size_t domain() const { return left.size(); }
  std::size_t codomain() const { return right.size(); }
};

/// Throws std::invalid_argument when a leg leaves the apex.
void checkCospan(const CospanHG& c);

/// Number of apex vertices.
std::size_t cospanWeight(const CospanHG& c);

/// Pushout along the shared boundary, with the maps of both apexes into the
/// glued one. Quotient classes are numbered in order of first appearance.
struct Pushout {
  CospanHG result;
  std::vector<std::size_t> inj1;
  std::vector<std::size_t> inj2;
};

Pushout pushout(const CospanHG& c1, const CospanHG& c2);
CospanHG composeCospans(const CospanHG& c1, const CospanHG& c2);
CospanHG tensorCospans(const CospanHG& c1, const CospanHG& c2);

/// Edgeless cospans.
CospanHG structuralCospan(std::size_t apex, std::vector<std::size_t> left,
                          std::vector<std::size_t> right);
CospanHG identityCospan(std::size_t n);
/// a + b -> b + a
CospanHG swapCospan(std::size_t a, std::size_t b);
/// x -> x + x
CospanHG copyCospan(std::size_t x);
/// n -> n sending output j to input order[j].
CospanHG permutationCospan(const std::vector<std::size_t>& order);
/// sources -> graph <- 0
CospanHG sourcesCospan(const Hypergraph& g, std::vector<std::size_t> sources);

enum class Iso { isomorphic, notIsomorphic, undecided };

struct IsoBudget {
  std::size_t maxVertices = 40;
  std::size_t nodeLimit = 2'000'000;
};

/// Witness maps c1's apex onto c2's: vertexMap[v] and edgeMap[e].
struct IsoOutcome {
  Iso verdict = Iso::undecided;
  std::vector<std::size_t> vertexMap;
  std::vector<std::size_t> edgeMap;
};

/// Apex isomorphism commuting with both legs.
IsoOutcome cospanIso(const CospanHG& c1, const CospanHG& c2, const IsoBudget& budget = {});

/// Cospans of hypergraphs over discrete boundaries.
struct CospanAlgebra {
  using Morphism = CospanHG;

  std::size_t domain(const CospanHG& f) const { return f.domain(); }
  std::size_t codomain(const CospanHG& f) const { return f.codomain(); }
  CospanHG compose(const CospanHG& f, const CospanHG& g) const { return composeCospans(f, g); }
  CospanHG tensor(const CospanHG& f, const CospanHG& g) const { return tensorCospans(f, g); }
  bool equal(const CospanHG& f, const CospanHG& g) const {
    return cospanIso(f, g).verdict == Iso::isomorphic;
  }
  CospanHG identity(std::size_t n) const { return identityCospan(n); }

  DecompTree identityTree(std::size_t n, Signature<CospanHG>& sig) const;
  DecompTree swapTree(std::size_t a, std::size_t b, Signature<CospanHG>& sig) const;
  DecompTree copyTree(std::size_t x, Signature<CospanHG>& sig) const;
};

/// Registers c under an id derived from its legs and returns the leaf.
/// Only for edgeless cospans, whose legs determine them up to iso.
DecompTree structuralLeaf(const CospanHG& c, Signature<CospanHG>& sig);

/// Registers c as an atom of weight cospanWeight(c).
DecompTree cospanLeaf(const std::string& id, CospanHG c, Signature<CospanHG>& sig);

/// Tree plus the atoms it refers to.
struct CospanDecomposition {
  DecompTree tree;
  Signature<CospanHG> atoms;
};

}  // namespace monowidth

#endif
