#ifndef MONOWIDTH_BOUNDARY_GRAPH_HPP
#define MONOWIDTH_BOUNDARY_GRAPH_HPP

#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/decomposition.hpp"
#include "monowidth/nat_matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monowidth {

/// G + G^T == H + H^T. Throws DimensionMismatch on shape mismatch.
bool adjEquivalent(const NatMatrix& g, const NatMatrix& h);

/// A morphism n -> m on k vertices: adjacency G (k x k), attachments to the
/// left boundary L (k x n) and to the right one R (k x m), passing wires
/// P (m x n) and wires among the right boundary F (m x m).
struct GraphWithBoundaries {
  NatMatrix G, L, R, P, F;

  std::size_t vertices() const { return static_cast<std::size_t>(G.rows()); }
  std::size_t domain() const { return static_cast<std::size_t>(L.cols()); }
  std::size_t codomain() const { return static_cast<std::size_t>(R.cols()); }
};

/// Throws DimensionMismatch unless the five shapes agree.
void checkShapes(const GraphWithBoundaries& g);

/// Adjacency G (k x k) with dangling edges B (k x n) to n ports.
struct DanglingGraph {
  NatMatrix G, B;

  std::size_t vertices() const { return static_cast<std::size_t>(G.rows()); }
  std::size_t ports() const { return static_cast<std::size_t>(B.cols()); }
};

/// The morphism n -> 0 of a graph with dangling edges.
GraphWithBoundaries asMorphism(const DanglingGraph& d);
/// (G, (L | R)) for g = (G, L, R, P, F).
DanglingGraph danglingOf(const GraphWithBoundaries& g);
/// Simple graph on 0..vertices-1 as an upper-triangular adjacency matrix.
NatMatrix adjacencyFromEdges(std::size_t vertices,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges);

GraphWithBoundaries identityBoundaries(std::size_t n);
/// g1 ; g2. Vertices of g1 come first. Throws TypeMismatch.
GraphWithBoundaries composeBoundaries(const GraphWithBoundaries& g1,
                                      const GraphWithBoundaries& g2);
GraphWithBoundaries tensorBoundaries(const GraphWithBoundaries& g1,
                                     const GraphWithBoundaries& g2);
/// 0 -> 2n, joining wire i with wire n + i.
GraphWithBoundaries cupBoundaries(std::size_t n);

struct PermutationOutcome {
  Iso verdict = Iso::undecided;
  /// vertex i of the first graph is vertex perm[i] of the second
  std::vector<std::size_t> perm;
};

/// Searches a vertex permutation matching G up to adjacency equivalence, L
/// and R exactly; P must agree and F up to adjacency equivalence. Above
/// capK vertices the answer is undecided.
PermutationOutcome equalUpToPermutation(const GraphWithBoundaries& g1,
                                        const GraphWithBoundaries& g2,
                                        std::size_t capK = 10);

/// Vertex count.
std::size_t boundaryWeight(const GraphWithBoundaries& g);

/// Graphs with boundaries as a symmetric monoidal category.
struct PropGraphAlgebra {
  using Morphism = GraphWithBoundaries;
  std::size_t capK = 10;

  std::size_t domain(const GraphWithBoundaries& f) const { return f.domain(); }
  std::size_t codomain(const GraphWithBoundaries& f) const { return f.codomain(); }
  GraphWithBoundaries compose(const GraphWithBoundaries& f, const GraphWithBoundaries& g) const {
    return composeBoundaries(f, g);
  }
  GraphWithBoundaries tensor(const GraphWithBoundaries& f, const GraphWithBoundaries& g) const {
    return tensorBoundaries(f, g);
  }
  bool equal(const GraphWithBoundaries& f, const GraphWithBoundaries& g) const {
    return equalUpToPermutation(f, g, capK).verdict == Iso::isomorphic;
  }
  GraphWithBoundaries identity(std::size_t n) const { return identityBoundaries(n); }
};

/// Subcubic tree whose leaves (nodes of degree at most one) map
/// bijectively onto the vertices.
struct RankDec {
  std::size_t nodes = 0;
  TreeEdges treeEdges;
  std::map<std::size_t, std::size_t> leafVertex;
};

/// Throws InvalidDecomposition naming the first defect.
void checkRankDec(const RankDec& dec, std::size_t vertexCount);

/// Max over tree edges of the rank of the matrix of edges crossing the cut.
std::size_t rankWidthOf(const RankDec& dec, const NatMatrix& adjacency, Field field = Field::Q);

/// A leaf has one vertex; an inner node has two children whose row blocks
/// stack, in order, to its own rows.
struct IRNode {
  DanglingGraph label;
  std::vector<IRNode> children;

  bool isLeaf() const { return children.empty(); }
};

/// Leaf i, counted left to right, is vertex order[i] of graph. The root
/// label is graph with rows and columns taken in that order; a graph
/// without vertices has no root.
struct InductiveRankDec {
  DanglingGraph graph;
  std::vector<std::size_t> order;
  std::optional<IRNode> root;
};

/// nullopt when valid, otherwise the first violated condition.
std::optional<std::string> inductiveRankError(const InductiveRankDec& t);
inline bool validateInductiveRank(const InductiveRankDec& t) {
  return !inductiveRankError(t).has_value();
}

/// Max over nodes of the rank of the stored boundary.
std::size_t inductiveRankWidth(const InductiveRankDec& t, Field field = Field::Q);

std::vector<NodePath> nodePaths(const IRNode& root);
const IRNode& nodeAt(const IRNode& root, const NodePath& path);

/// rank(A' | C_L^T | C_R) read off the permuted ambient graph for the node
/// at path.
std::size_t closedBoundaryRank(const InductiveRankDec& t, const NodePath& path,
                               Field field = Field::Q);

/// Splits at the first tree edge and then along the tree. Width at most
/// rankWidthOf(dec) + rank(B).
InductiveRankDec toInductiveRank(const RankDec& dec, const DanglingGraph& gamma);
/// The underlying tree with leaves mapped through order.
RankDec fromInductiveRank(const InductiveRankDec& t);

/// Splits the rows 0..k-1 as [0], [1], ... down a caterpillar.
InductiveRankDec caterpillarRank(const DanglingGraph& gamma);

/// (A1 | C) = L1 (N1 | S L2^T) and (A2 | C^T) = L2 (N2 | S^T L1^T).
struct RankCut {
  NatMatrix L1, N1, S, L2, N2;
  /// attained inner dimensions
  std::size_t r1 = 0, r2 = 0;
  /// rational ranks of (A1 | C) and (A2 | C^T)
  std::size_t rank1 = 0, rank2 = 0;

  bool attainsFieldRank() const { return r1 == rank1 && r2 == rank2; }
};

RankCut cutAlongRanks(const NatMatrix& a1, const NatMatrix& c, const NatMatrix& a2,
                      const FactorizationBudget& budget = {});

/// Given t decomposing (G, b m) with m of full row rank, decomposes
/// (G, b mPrime) on the same tree. Throws std::invalid_argument if m is not
/// of full row rank or t does not decompose (G, b m).
InductiveRankDec rebaseBoundary(const InductiveRankDec& t, const NatMatrix& b,
                                const NatMatrix& m, const NatMatrix& mPrime);

/// Given t decomposing (G, (L | R)) where L has f.cols() columns, decomposes
/// (G + L F L^T, (L | R + L (F + F^T) P^T)) on the same tree.
InductiveRankDec wiresToFuture(const InductiveRankDec& t, const NatMatrix& f,
                               const NatMatrix& p);

/// Atoms are whole morphisms weighted by their vertex count.
struct PropGraphDecomposition {
  DecompTree tree;
  Signature<GraphWithBoundaries> sig;
  /// every factorization reached the rational rank
  bool attainsFieldRank = true;
  /// proven bound on the width: twice the largest inner dimension used,
  /// and 1 when there is a vertex
  std::size_t certified = 0;
};

/// Decomposition of the morphism of t.graph. Within 2 width(t) whenever
/// all factorizations attain the rational rank and some vertex has an edge
/// or a dangling edge.
PropGraphDecomposition rTomdec(const InductiveRankDec& t, const FactorizationBudget& budget = {});

/// Inductive rank decomposition of (G, (L | R)) of g, where d decomposes g.
/// Width at most 2 max{width(d), rank L, rank R}. Throws NotDecomposable
/// when d does not evaluate to g.
InductiveRankDec mTordec(const DecompTree& d, const Signature<GraphWithBoundaries>& sig,
                         const GraphWithBoundaries& g);

std::string toDot(const InductiveRankDec& t, const std::string& name = "inductive_rank");

}  // namespace monowidth

#endif
