#ifndef MONOWIDTH_BRANCH_HPP
#define MONOWIDTH_BRANCH_HPP

#include "monowidth/cospan.hpp"
#include "monowidth/decomposition.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monowidth {

class InvalidDecomposition : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two vertices are identified outside the boundary images.
class GlueingViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using TreeEdges = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<std::vector<std::size_t>> treeAdjacency(std::size_t nodes, const TreeEdges& edges);
/// Empty when (nodes, edges) is a tree, otherwise the defect.
std::string treeDefect(std::size_t nodes, const TreeEdges& edges);
/// Nodes reachable from `from` without crossing to `blocked`.
std::vector<std::size_t> treeSide(const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t from, std::size_t blocked);

/// Unrooted subcubic tree on nodes 0..nodes-1. The nodes of degree at most
/// one are the leaves; leafEdge maps each of them to an edge of the graph.
struct BranchDec {
  std::size_t nodes = 0;
  TreeEdges treeEdges;
  std::map<std::size_t, std::size_t> leafEdge;
};

/// Throws InvalidDecomposition naming the first defect.
void checkBranchDec(const BranchDec& dec, const Hypergraph& g);

/// Max over tree edges of the number of vertices both sides touch.
std::size_t branchWidthOf(const BranchDec& dec, const Hypergraph& g);

struct TreeDec {
  std::size_t nodes = 0;
  TreeEdges treeEdges;
  std::vector<std::vector<std::size_t>> bags;
};

struct TreeDecReport {
  bool valid = false;
  /// max bag size, nothing subtracted
  std::size_t width = 0;
  std::string reason;
};

TreeDecReport treeDecCheck(const TreeDec& dec, const Hypergraph& g);

/// A node's subhypergraph: ambient edge ids, vertex ids and sources, all
/// sorted.
struct IBLabel {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> sources;

  friend bool operator==(const IBLabel&, const IBLabel&) = default;
};

/// Either the empty decomposition of a discrete label, a leaf with one edge,
/// or a node with two children. Empty children keep their label.
struct IBNode {
  IBLabel label;
  bool empty = false;
  std::vector<IBNode> children;

  bool isLeaf() const { return !empty && children.empty(); }
};

/// The root label is the decomposed hypergraph with sources; `graph` supplies
/// the edge endpoints.
struct InductiveBranchDec {
  Hypergraph graph;
  IBNode root;
};

/// nullopt when valid, otherwise the first violated condition.
std::optional<std::string> inductiveBranchError(const InductiveBranchDec& t);
inline bool validInductiveBranch(const InductiveBranchDec& t) {
  return !inductiveBranchError(t).has_value();
}

/// Max number of sources over the non-empty nodes.
std::size_t inductiveBranchWidth(const InductiveBranchDec& t);

/// Root-to-node route, 0 for the first child and 1 for the second.
using NodePath = std::vector<int>;

/// Every node, empty ones included, in preorder.
std::vector<NodePath> nodePaths(const IBNode& root);
const IBNode& nodeAt(const IBNode& root, const NodePath& path);

/// Vertices of the node's label met by the root sources or by a label of
/// any subtree disjoint from it.
std::vector<std::size_t> subtreeBoundary(const InductiveBranchDec& t, const NodePath& path);

/// Roots the tree at its first listed edge and splits there recursively. The
/// second part of each split also receives the vertices the first misses.
InductiveBranchDec toInductiveBranch(const BranchDec& dec, const HypergraphWithSources& gamma);

/// The unlabelled tree underneath, nodes with an empty child contracted.
BranchDec fromInductiveBranch(const InductiveBranchDec& t);

/// The cospan sources -> subgraph <- 0 of a label, sources in sorted order.
CospanHG labelCospan(const Hypergraph& g, const IBLabel& label);

/// Decomposition of labelCospan(root) whose width is at most
/// max{width(t) + 1, max arity}.
CospanDecomposition bTomdec(const InductiveBranchDec& t);

/// Inductive decomposition of (F, im phi) with sources the images of both
/// legs, where h = (A -> (F, W) <- B), phi : W -> 0..vertexCount-1 and d
/// decomposes h. Width at most 2 max{width(d), |A|, |B|}.
InductiveBranchDec mTobdec(const DecompTree& d, const Signature<CospanHG>& sig,
                           const CospanHG& h, const std::vector<std::size_t>& phi,
                           std::size_t vertexCount);
/// phi is the identity on the apex.
InductiveBranchDec mTobdec(const DecompTree& d, const Signature<CospanHG>& sig,
                           const CospanHG& h);

/// Graphviz rendering; nodes show their edges and sources.
std::string toDot(const InductiveBranchDec& t, const std::string& name = "inductive");

}  // namespace monowidth

#endif
