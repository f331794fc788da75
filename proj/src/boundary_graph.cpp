#include "monowidth/boundary_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace monowidth {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }
std::size_t rows(const NatMatrix& a) { return static_cast<std::size_t>(a.rows()); }
std::size_t cols(const NatMatrix& a) { return static_cast<std::size_t>(a.cols()); }

NatMatrix sub(const NatMatrix& a, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
  return a.block(idx(r0), idx(c0), idx(nr), idx(nc));
}
NatMatrix rowRange(const NatMatrix& a, std::size_t r0, std::size_t nr) {
  return sub(a, r0, nr, 0, cols(a));
}
NatMatrix colRange(const NatMatrix& a, std::size_t c0, std::size_t nc) {
  return sub(a, 0, rows(a), c0, nc);
}

NatMatrix add(const NatMatrix& a, const NatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("cannot add " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  return a + b;
}

NatMatrix sym(const NatMatrix& g) { return add(g, transpose(g)); }

NatMatrix blocks(const NatMatrix& a, const NatMatrix& b, const NatMatrix& c, const NatMatrix& d) {
  return vcat(hcat(a, b), hcat(c, d));
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool sameShape(const NatMatrix& a, const NatMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

bool same(const NatMatrix& a, const NatMatrix& b) { return sameShape(a, b) && a == b; }

// rows and columns of g taken in the given order
NatMatrix permuted(const NatMatrix& g, const std::vector<std::size_t>& order) {
  return selectBlock(g, order, order);
}

DanglingGraph permuted(const DanglingGraph& d, const std::vector<std::size_t>& order) {
  return {permuted(d.G, order), selectRows(d.B, order)};
}

std::size_t leafCount(const IRNode& n) {
  if (n.isLeaf()) return 1;
  return leafCount(n.children[0]) + leafCount(n.children[1]);
}

// labels of the two parts when the first k1 rows go left
std::pair<DanglingGraph, DanglingGraph> splitLabel(const DanglingGraph& d, std::size_t k1) {
  const std::size_t k = d.vertices(), k2 = k - k1;
  const NatMatrix c = add(sub(d.G, 0, k1, k1, k2), transpose(sub(d.G, k1, k2, 0, k1)));
  DanglingGraph a{sub(d.G, 0, k1, 0, k1), hcat(rowRange(d.B, 0, k1), c)};
  DanglingGraph b{sub(d.G, k1, k2, k1, k2), hcat(rowRange(d.B, k1, k2), transpose(c))};
  return {std::move(a), std::move(b)};
}

std::optional<std::string> nodeError(const IRNode& n, const std::string& at) {
  const auto& L = n.label;
  const std::size_t k = L.vertices();
  if (L.G.cols() != L.G.rows() || rows(L.B) != k)
    return at + ": label shapes disagree";
  if (n.isLeaf()) {
    if (k != 1) return at + ": a leaf must hold one vertex, not " + std::to_string(k);
    return std::nullopt;
  }
  if (n.children.size() != 2) return at + ": inner nodes have two children";
  const auto& l1 = n.children[0].label;
  const auto& l2 = n.children[1].label;
  const std::size_t k1 = l1.vertices(), k2 = l2.vertices(), ports = L.ports();
  if (k1 == 0 || k2 == 0 || k1 + k2 != k) return at + ": children do not partition the vertices";
  if (l1.ports() != ports + k2 || l2.ports() != ports + k1 || rows(l1.B) != k1 || rows(l2.B) != k2)
    return at + ": child boundaries have the wrong width";
  const NatMatrix c = colRange(l1.B, ports, k2);
  if (!same(colRange(l2.B, ports, k1), transpose(c)))
    return at + ": the children disagree on the edges between them";
  if (!same(colRange(l1.B, 0, ports), rowRange(L.B, 0, k1)) ||
      !same(colRange(l2.B, 0, ports), rowRange(L.B, k1, k2)))
    return at + ": boundary mismatch";
  if (!sameShape(l1.G, NatMatrix(idx(k1), idx(k1))) || !sameShape(l2.G, NatMatrix(idx(k2), idx(k2))))
    return at + ": child adjacency shapes disagree";
  if (!adjEquivalent(L.G, blocks(l1.G, c, zeros(k2, k1), l2.G)))
    return at + ": adjacency is not split by the children";
  for (std::size_t i = 0; i < 2; ++i)
    if (auto err = nodeError(n.children[i], at + "." + std::to_string(i))) return err;
  return std::nullopt;
}

void collect(const IRNode& n, NodePath& cur, std::vector<NodePath>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect(n.children[i], cur, out);
    cur.pop_back();
  }
}

std::size_t nodeWidth(const IRNode& n, Field field) {
  std::size_t w = rank(n.label.B, field);
  for (const auto& c : n.children) w = std::max(w, nodeWidth(c, field));
  return w;
}

// vertex split read off a tree hanging from a node
struct VSplit {
  std::size_t vertex = 0;
  std::vector<VSplit> kids;
};

void leavesOf(const VSplit& s, std::vector<std::size_t>& out) {
  if (s.kids.empty()) {
    out.push_back(s.vertex);
    return;
  }
  for (const auto& k : s.kids) leavesOf(k, out);
}

std::size_t leafCount(const VSplit& s) {
  if (s.kids.empty()) return 1;
  return leafCount(s.kids[0]) + leafCount(s.kids[1]);
}

IRNode buildSplit(DanglingGraph label, const VSplit& s) {
  IRNode n;
  if (!s.kids.empty()) {
    auto [a, b] = splitLabel(label, leafCount(s.kids[0]));
    n.children.push_back(buildSplit(std::move(a), s.kids[0]));
    n.children.push_back(buildSplit(std::move(b), s.kids[1]));
  }
  n.label = std::move(label);
  return n;
}

// replaces the first cols(m) boundary columns A m of every node by A mPrime,
// where A is the node's block of rows of b
void rebaseNode(IRNode& n, const NatMatrix& b, std::size_t lo, const NatMatrix& m,
                const NatMatrix& mPrime) {
  const std::size_t k = n.label.vertices();
  const NatMatrix a = rowRange(b, lo, k);
  const std::size_t old = cols(m);
  if (!same(colRange(n.label.B, 0, old), multiply(a, m)))
    throw std::invalid_argument("rebaseBoundary: the decomposition does not match b m");
  n.label.B = hcat(multiply(a, mPrime), colRange(n.label.B, old, cols(n.label.B) - old));
  std::size_t at = lo;
  for (auto& c : n.children) {
    rebaseNode(c, b, at, m, mPrime);
    at += c.label.vertices();
  }
}

InductiveRankDec rebaseUnchecked(const InductiveRankDec& t, const NatMatrix& b,
                                 const NatMatrix& m, const NatMatrix& mPrime) {
  if (rows(b) != t.graph.vertices() || cols(b) != rows(m) || rows(mPrime) != rows(m))
    throw DimensionMismatch("rebaseBoundary: shapes disagree");
  if (!same(t.graph.B, multiply(b, m)))
    throw std::invalid_argument("rebaseBoundary: the boundary is not b m");
  InductiveRankDec out = t;
  out.graph.B = multiply(b, mPrime);
  if (out.root) rebaseNode(*out.root, selectRows(b, t.order), 0, m, mPrime);
  return out;
}

void wiresNode(IRNode& n, const NatMatrix& f, const NatMatrix& p) {
  const std::size_t j = cols(f);
  const NatMatrix l = colRange(n.label.B, 0, j);
  const NatMatrix r = colRange(n.label.B, j, cols(n.label.B) - j);
  if (!n.isLeaf()) {
    const std::size_t k1 = n.children[0].label.vertices();
    const std::size_t k2 = n.children[1].label.vertices();
    wiresNode(n.children[0], f, vcat(p, rowRange(l, k1, k2)));
    wiresNode(n.children[1], f, vcat(p, rowRange(l, 0, k1)));
  }
  n.label.G = add(n.label.G, multiply(multiply(l, f), transpose(l)));
  n.label.B = hcat(l, add(r, multiply(multiply(l, sym(f)), transpose(p))));
}

std::string shape(const NatMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

bool adjEquivalent(const NatMatrix& g, const NatMatrix& h) {
  if (g.rows() != g.cols() || !sameShape(g, h))
    throw DimensionMismatch("adjEquivalent: " + shape(g) + " against " + shape(h));
  return sym(g) == sym(h);
}

void checkShapes(const GraphWithBoundaries& g) {
  const Index k = g.G.rows(), n = g.L.cols(), m = g.R.cols();
  if (g.G.cols() != k || g.L.rows() != k || g.R.rows() != k || g.P.rows() != m ||
      g.P.cols() != n || g.F.rows() != m || g.F.cols() != m)
    throw DimensionMismatch("graph with boundaries has shapes G " + shape(g.G) + ", L " +
                            shape(g.L) + ", R " + shape(g.R) + ", P " + shape(g.P) + ", F " +
                            shape(g.F));
}

GraphWithBoundaries asMorphism(const DanglingGraph& d) {
  const std::size_t k = d.vertices(), n = d.ports();
  return {d.G, d.B, zeros(k, 0), zeros(0, n), zeros(0, 0)};
}

DanglingGraph danglingOf(const GraphWithBoundaries& g) { return {g.G, hcat(g.L, g.R)}; }

NatMatrix adjacencyFromEdges(std::size_t vertices,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  NatMatrix g = zeros(vertices, vertices);
  for (auto [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw std::out_of_range("edge endpoint out of range");
    g(idx(std::min(u, v)), idx(std::max(u, v))) += 1;
  }
  return g;
}

GraphWithBoundaries identityBoundaries(std::size_t n) {
  return {zeros(0, 0), zeros(0, n), zeros(0, n), identity(n), zeros(n, n)};
}

GraphWithBoundaries composeBoundaries(const GraphWithBoundaries& g1,
                                      const GraphWithBoundaries& g2) {
  checkShapes(g1);
  checkShapes(g2);
  if (g1.codomain() != g2.domain())
    throw TypeMismatch("cannot compose " + std::to_string(g1.domain()) + " -> " +
                       std::to_string(g1.codomain()) + " with " + std::to_string(g2.domain()) +
                       " -> " + std::to_string(g2.codomain()));
  const NatMatrix c = multiply(g1.R, transpose(g2.L));
  const NatMatrix l2 = multiply(g2.L, g1.P);
  const NatMatrix r1 = multiply(g1.R, transpose(g2.P));
  const NatMatrix r2 = add(g2.R, multiply(multiply(g2.L, sym(g1.F)), transpose(g2.P)));
  const NatMatrix gg2 = add(g2.G, multiply(multiply(g2.L, g1.F), transpose(g2.L)));
  GraphWithBoundaries out;
  out.G = blocks(g1.G, c, zeros(g2.vertices(), g1.vertices()), gg2);
  out.L = vcat(g1.L, l2);
  out.R = vcat(r1, r2);
  out.P = multiply(g2.P, g1.P);
  out.F = add(g2.F, multiply(multiply(g2.P, g1.F), transpose(g2.P)));
  return out;
}

GraphWithBoundaries tensorBoundaries(const GraphWithBoundaries& g1,
                                     const GraphWithBoundaries& g2) {
  checkShapes(g1);
  checkShapes(g2);
  return {directSum(g1.G, g2.G), directSum(g1.L, g2.L), directSum(g1.R, g2.R),
          directSum(g1.P, g2.P), directSum(g1.F, g2.F)};
}

GraphWithBoundaries cupBoundaries(std::size_t n) {
  return {zeros(0, 0), zeros(0, 0), zeros(0, 2 * n), zeros(2 * n, 0),
          blocks(zeros(n, n), identity(n), zeros(n, n), zeros(n, n))};
}

PermutationOutcome equalUpToPermutation(const GraphWithBoundaries& g1,
                                        const GraphWithBoundaries& g2, std::size_t capK) {
  checkShapes(g1);
  checkShapes(g2);
  PermutationOutcome out;
  out.verdict = Iso::notIsomorphic;
  const std::size_t k = g1.vertices();
  if (k != g2.vertices() || g1.domain() != g2.domain() || g1.codomain() != g2.codomain() ||
      g1.P != g2.P || !adjEquivalent(g1.F, g2.F))
    return out;
  if (k > capK) {
    out.verdict = Iso::undecided;
    return out;
  }
  const NatMatrix s1 = sym(g1.G), s2 = sym(g2.G);
  // per-vertex signature: boundary rows, loop count, sorted neighbourhood
  auto signature = [](const NatMatrix& s, const GraphWithBoundaries& g, std::size_t v) {
    std::vector<Nat> sig;
    for (Index j = 0; j < g.L.cols(); ++j) sig.push_back(g.L(idx(v), j));
    for (Index j = 0; j < g.R.cols(); ++j) sig.push_back(g.R(idx(v), j));
    sig.push_back(s(idx(v), idx(v)));
    std::vector<Nat> nb;
    for (Index j = 0; j < s.cols(); ++j)
      if (j != idx(v)) nb.push_back(s(idx(v), j));
    std::sort(nb.begin(), nb.end());
    sig.insert(sig.end(), nb.begin(), nb.end());
    return sig;
  };
  std::vector<std::vector<Nat>> sig1, sig2;
  for (std::size_t v = 0; v < k; ++v) {
    sig1.push_back(signature(s1, g1, v));
    sig2.push_back(signature(s2, g2, v));
  }
  std::vector<std::size_t> perm(k);
  std::vector<bool> used(k, false);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t c = 0; c < k; ++c) {
      if (used[c] || sig1[i] != sig2[c]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p)
        ok = s1(idx(i), idx(p)) == s2(idx(c), idx(perm[p]));
      if (!ok) continue;
      used[c] = true;
      perm[i] = c;
      if (place(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (place(0)) {
    out.verdict = Iso::isomorphic;
    out.perm = std::move(perm);
  }
  return out;
}

std::size_t boundaryWeight(const GraphWithBoundaries& g) { return g.vertices(); }

void checkRankDec(const RankDec& dec, std::size_t vertexCount) {
  if (vertexCount == 0) {
    if (dec.nodes != 0 || !dec.leafVertex.empty())
      throw InvalidDecomposition("a graph without vertices has the empty rank decomposition");
    return;
  }
  if (auto err = treeDefect(dec.nodes, dec.treeEdges); !err.empty())
    throw InvalidDecomposition(err);
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  std::vector<bool> hit(vertexCount, false);
  for (std::size_t u = 0; u < dec.nodes; ++u) {
    if (adj[u].size() > 3)
      throw InvalidDecomposition("tree node " + std::to_string(u) + " has degree above 3");
    const bool leaf = adj[u].size() <= 1;
    auto it = dec.leafVertex.find(u);
    if (leaf != (it != dec.leafVertex.end()))
      throw InvalidDecomposition("leaf map does not match the leaves at node " + std::to_string(u));
    if (!leaf) continue;
    if (it->second >= vertexCount || hit[it->second])
      throw InvalidDecomposition("leaf map is not a bijection onto the vertices");
    hit[it->second] = true;
  }
  if (dec.leafVertex.size() != vertexCount)
    throw InvalidDecomposition("leaf map misses vertices");
}

std::size_t rankWidthOf(const RankDec& dec, const NatMatrix& adjacency, Field field) {
  if (adjacency.rows() != adjacency.cols())
    throw DimensionMismatch("adjacency matrix must be square");
  checkRankDec(dec, rows(adjacency));
  const NatMatrix s = sym(adjacency);
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  std::size_t best = 0;
  for (auto [u, v] : dec.treeEdges) {
    std::vector<std::size_t> a, b;
    for (auto x : treeSide(adj, u, v))
      if (auto it = dec.leafVertex.find(x); it != dec.leafVertex.end()) a.push_back(it->second);
    for (auto x : treeSide(adj, v, u))
      if (auto it = dec.leafVertex.find(x); it != dec.leafVertex.end()) b.push_back(it->second);
    best = std::max(best, rank(selectBlock(s, a, b), field));
  }
  return best;
}

std::optional<std::string> inductiveRankError(const InductiveRankDec& t) {
  const auto& g = t.graph;
  const std::size_t k = g.vertices();
  if (g.G.cols() != g.G.rows() || rows(g.B) != k) return std::string("graph shapes disagree");
  std::vector<std::size_t> sorted = t.order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != iota(k)) return std::string("order is not a permutation of the vertices");
  if (k == 0)
    return t.root ? std::optional<std::string>("a graph without vertices has no root")
                  : std::nullopt;
  if (!t.root) return std::string("missing root");
  const DanglingGraph p = permuted(g, t.order);
  const auto& L = t.root->label;
  if (!sameShape(L.G, p.G) || !adjEquivalent(L.G, p.G) || !same(L.B, p.B))
    return std::string("root label is not the graph");
  return nodeError(*t.root, "root");
}

std::size_t inductiveRankWidth(const InductiveRankDec& t, Field field) {
  return t.root ? nodeWidth(*t.root, field) : 0;
}

std::vector<NodePath> nodePaths(const IRNode& root) {
  std::vector<NodePath> out;
  NodePath cur;
  collect(root, cur, out);
  return out;
}

const IRNode& nodeAt(const IRNode& root, const NodePath& path) {
  const IRNode* n = &root;
  for (int i : path) n = &n->children.at(static_cast<std::size_t>(i));
  return *n;
}

std::size_t closedBoundaryRank(const InductiveRankDec& t, const NodePath& path, Field field) {
  if (!t.root) throw std::out_of_range("closedBoundaryRank: empty decomposition");
  std::size_t lo = 0;
  const IRNode* n = &*t.root;
  for (int i : path) {
    if (i == 1) lo += n->children.at(0).label.vertices();
    n = &n->children.at(static_cast<std::size_t>(i));
  }
  const std::size_t hi = lo + n->label.vertices();
  const DanglingGraph p = permuted(t.graph, t.order);
  const NatMatrix s = sym(p.G);
  std::vector<std::size_t> inside, outside;
  for (std::size_t v = 0; v < p.vertices(); ++v) (v >= lo && v < hi ? inside : outside).push_back(v);
  // the off-diagonal blocks of the symmetrization are C_L^T and C_R
  return rank(hcat(selectRows(p.B, inside), selectBlock(s, inside, outside)), field);
}

InductiveRankDec toInductiveRank(const RankDec& dec, const DanglingGraph& gamma) {
  const std::size_t k = gamma.vertices();
  if (gamma.G.rows() != gamma.G.cols() || rows(gamma.B) != k)
    throw DimensionMismatch("dangling graph shapes disagree");
  checkRankDec(dec, k);
  InductiveRankDec t;
  t.graph = gamma;
  if (k == 0) return t;
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  std::function<VSplit(std::size_t, std::size_t)> hang = [&](std::size_t u, std::size_t p) {
    if (auto it = dec.leafVertex.find(u); it != dec.leafVertex.end()) return VSplit{it->second, {}};
    std::vector<std::size_t> kids;
    for (auto v : adj[u])
      if (v != p) kids.push_back(v);
    if (kids.size() == 1) return hang(kids[0], u);
    VSplit s;
    s.kids.push_back(hang(kids[0], u));
    s.kids.push_back(hang(kids[1], u));
    return s;
  };
  VSplit top;
  if (dec.nodes == 1) {
    top.vertex = dec.leafVertex.begin()->second;
  } else {
    const auto [a, b] = dec.treeEdges.front();
    top.kids.push_back(hang(a, b));
    top.kids.push_back(hang(b, a));
  }
  leavesOf(top, t.order);
  t.root = buildSplit(permuted(gamma, t.order), top);
  return t;
}

RankDec fromInductiveRank(const InductiveRankDec& t) {
  if (auto err = inductiveRankError(t)) throw InvalidDecomposition(*err);
  RankDec dec;
  if (!t.root) return dec;
  std::size_t leaf = 0;
  std::function<std::size_t(const IRNode&)> build = [&](const IRNode& n) {
    const std::size_t v = dec.nodes++;
    if (n.isLeaf()) {
      dec.leafVertex[v] = t.order[leaf++];
      return v;
    }
    for (const auto& c : n.children) dec.treeEdges.emplace_back(v, build(c));
    return v;
  };
  build(*t.root);
  return dec;
}

InductiveRankDec caterpillarRank(const DanglingGraph& gamma) {
  const std::size_t k = gamma.vertices();
  if (gamma.G.rows() != gamma.G.cols() || rows(gamma.B) != k)
    throw DimensionMismatch("dangling graph shapes disagree");
  InductiveRankDec t;
  t.graph = gamma;
  t.order = iota(k);
  if (k == 0) return t;
  VSplit top{k - 1, {}};
  for (std::size_t v = k - 1; v-- > 0;) {
    VSplit s;
    s.kids.push_back(VSplit{v, {}});
    s.kids.push_back(std::move(top));
    top = std::move(s);
  }
  t.root = buildSplit(gamma, top);
  return t;
}

RankCut cutAlongRanks(const NatMatrix& a1, const NatMatrix& c, const NatMatrix& a2,
                      const FactorizationBudget& budget) {
  const std::size_t k1 = rows(a1), k2 = rows(a2), n = cols(a1);
  if (cols(a2) != n || rows(c) != k1 || cols(c) != k2)
    throw DimensionMismatch("cutAlongRanks: A1 " + shape(a1) + ", C " + shape(c) + ", A2 " +
                            shape(a2));
  RankCut out;
  const auto f1 = natRankFactorize(hcat(a1, c), budget);
  out.L1 = f1.left;
  out.N1 = colRange(f1.right, 0, n);
  const NatMatrix k1m = colRange(f1.right, n, k2);
  const auto f2 = natRankFactorize(hcat(a2, transpose(k1m)), budget);
  out.L2 = f2.left;
  out.r1 = f1.innerDim;
  out.r2 = f2.innerDim;
  out.N2 = colRange(f2.right, 0, n);
  out.S = transpose(colRange(f2.right, n, out.r1));
  out.rank1 = f1.fieldRank;
  out.rank2 = rank(hcat(a2, transpose(c)));
  return out;
}

InductiveRankDec rebaseBoundary(const InductiveRankDec& t, const NatMatrix& b,
                                const NatMatrix& m, const NatMatrix& mPrime) {
  if (rank(m) != rows(m)) throw std::invalid_argument("rebaseBoundary: M is not of full rank");
  if (auto err = inductiveRankError(t)) throw InvalidDecomposition(*err);
  return rebaseUnchecked(t, b, m, mPrime);
}

InductiveRankDec wiresToFuture(const InductiveRankDec& t, const NatMatrix& f,
                               const NatMatrix& p) {
  const std::size_t j = rows(f), ports = t.graph.ports();
  if (cols(f) != j || j > ports || rows(p) != ports - j || cols(p) != j)
    throw DimensionMismatch("wiresToFuture: F " + shape(f) + " and P " + shape(p) +
                            " against a boundary with " + std::to_string(ports) + " ports");
  InductiveRankDec out = t;
  const NatMatrix l = colRange(t.graph.B, 0, j);
  const NatMatrix r = colRange(t.graph.B, j, ports - j);
  out.graph.G = add(t.graph.G, multiply(multiply(l, f), transpose(l)));
  out.graph.B = hcat(l, add(r, multiply(multiply(l, sym(f)), transpose(p))));
  if (out.root) wiresNode(*out.root, f, p);
  return out;
}

namespace {

class RToM {
public:
  explicit RToM(const FactorizationBudget& budget) : budget_(budget) {}

  PropGraphDecomposition out;

  DecompTree build(const IRNode& n) {
    if (n.isLeaf()) {
      out.certified = std::max<std::size_t>(out.certified, 1);
      return atom("vertex", asMorphism(n.label), 1);
    }
    const std::size_t ports = n.label.ports();
    const auto& l1 = n.children[0].label;
    const auto& l2 = n.children[1].label;
    const std::size_t k2 = l2.vertices();
    const RankCut cut = cutAlongRanks(colRange(l1.B, 0, ports), colRange(l1.B, ports, k2),
                                      colRange(l2.B, 0, ports), budget_);
    out.attainsFieldRank = out.attainsFieldRank && cut.attainsFieldRank();
    out.certified = std::max(out.certified, 2 * std::max(cut.r1, cut.r2));
    const std::size_t r = cut.r1 + cut.r2;
    GraphWithBoundaries b{zeros(0, 0), zeros(0, ports), zeros(0, r), vcat(cut.N1, cut.N2),
                          blocks(zeros(cut.r1, cut.r1), cut.S, zeros(cut.r2, cut.r1),
                                 zeros(cut.r2, cut.r2))};
    const NatMatrix m1 = hcat(cut.N1, multiply(cut.S, transpose(cut.L2)));
    const NatMatrix m2 = hcat(cut.N2, multiply(transpose(cut.S), transpose(cut.L1)));
    DecompTree left = atom("wires", std::move(b), 0);
    DecompTree t1 = build(*rebased(n.children[0], cut.L1, m1, cut.r1).root);
    DecompTree t2 = build(*rebased(n.children[1], cut.L2, m2, cut.r2).root);
    return DecompTree::compose(std::move(left), DecompTree::tensor(std::move(t1), std::move(t2)),
                               r);
  }

  DecompTree atom(const std::string& kind, GraphWithBoundaries g, std::size_t weight) {
    std::string id = kind + std::to_string(counter_++);
    out.sig.add(id, std::move(g), weight);
    return DecompTree::leaf(std::move(id));
  }

private:
  // the subtree n decomposes (G_i, l m); returns it over (G_i, l)
  static InductiveRankDec rebased(const IRNode& n, const NatMatrix& l, const NatMatrix& m,
                                  std::size_t r) {
    InductiveRankDec sub{n.label, iota(n.label.vertices()), n};
    return rebaseUnchecked(sub, l, m, identity(r));
  }

  FactorizationBudget budget_;
  std::size_t counter_ = 0;
};

// decomposition of the evaluated morphism, rows in `order`
struct Part {
  GraphWithBoundaries value;
  std::optional<IRNode> node;
  std::vector<std::size_t> order;
};

InductiveRankDec asDec(const Part& p) {
  return InductiveRankDec{danglingOf(p.value), p.order, p.node};
}

Part join(GraphWithBoundaries value, std::optional<IRNode> n1, std::vector<std::size_t> o1,
          std::optional<IRNode> n2, const std::vector<std::size_t>& o2) {
  Part out;
  out.value = std::move(value);
  out.order = std::move(o1);
  const std::size_t k1 = out.order.size();
  for (auto v : o2) out.order.push_back(k1 + v);
  if (!n1) {
    out.node = std::move(n2);
  } else if (!n2) {
    out.node = std::move(n1);
  } else {
    IRNode n;
    n.label = permuted(danglingOf(out.value), out.order);
    n.children.push_back(std::move(*n1));
    n.children.push_back(std::move(*n2));
    out.node = std::move(n);
  }
  return out;
}

NatMatrix placed(std::size_t rowsCount, std::size_t colsCount, std::size_t c0) {
  NatMatrix m = zeros(rowsCount, colsCount);
  for (std::size_t i = 0; i < rowsCount; ++i) m(idx(i), idx(c0 + i)) = 1;
  return m;
}

Part mToR(const DecompTree& d, const Signature<GraphWithBoundaries>& sig) {
  switch (d.kind) {
    case DecompTree::Kind::leaf: {
      Part p;
      p.value = sig.at(d.atom).morphism;
      checkShapes(p.value);
      auto t = caterpillarRank(danglingOf(p.value));
      p.order = t.order;
      p.node = t.root;
      return p;
    }
    case DecompTree::Kind::tensor: {
      Part p1 = mToR(d.left(), sig), p2 = mToR(d.right(), sig);
      const auto& g1 = p1.value;
      const auto& g2 = p2.value;
      const std::size_t n1 = g1.domain(), n2 = g2.domain(), m1 = g1.codomain(),
                        m2 = g2.codomain(), k1 = g1.vertices(), k2 = g2.vertices();
      const std::size_t width1 = n1 + n2 + m1 + m2 + k2, width2 = n1 + n2 + m1 + m2 + k1;
      const NatMatrix mp1 = vcat(placed(n1, width1, 0), placed(m1, width1, n1 + n2));
      const NatMatrix mp2 = vcat(placed(n2, width2, n1), placed(m2, width2, n1 + n2 + m1));
      const auto t1 = rebaseUnchecked(asDec(p1), danglingOf(g1).B, identity(n1 + m1), mp1);
      const auto t2 = rebaseUnchecked(asDec(p2), danglingOf(g2).B, identity(n2 + m2), mp2);
      return join(tensorBoundaries(g1, g2), t1.root, p1.order, t2.root, p2.order);
    }
    case DecompTree::Kind::compose: {
      Part p1 = mToR(d.left(), sig), p2 = mToR(d.right(), sig);
      const auto& g1 = p1.value;
      const auto& g2 = p2.value;
      if (g1.codomain() != d.cut || g2.domain() != d.cut)
        throw TypeMismatch("composition cut along " + std::to_string(d.cut) +
                           " but left codomain is " + std::to_string(g1.codomain()) +
                           " and right domain is " + std::to_string(g2.domain()));
      const std::size_t n = g1.domain(), j = d.cut, m = g2.codomain();
      const std::size_t k1 = g1.vertices(), k2 = g2.vertices();
      // first part: (L1 | R1 P2^T | R1 L2^T)
      const NatMatrix mp1 =
          blocks(identity(n), zeros(n, m + k2), zeros(j, n),
                 hcat(transpose(g2.P), transpose(selectRows(g2.L, p2.order))));
      const auto t1 = rebaseUnchecked(asDec(p1), danglingOf(g1).B, identity(n + j), mp1);
      // second part: wires of F1 first, then (L2 P1 | R2' | L2 R1^T)
      const auto w2 = wiresToFuture(asDec(p2), g1.F, g2.P);
      const NatMatrix mp2 = blocks(hcat(g1.P, zeros(j, m)), transpose(selectRows(g1.R, p1.order)),
                                   hcat(zeros(m, n), identity(m)), zeros(m, k1));
      const auto t2 = rebaseUnchecked(w2, w2.graph.B, identity(j + m), mp2);
      return join(composeBoundaries(g1, g2), t1.root, p1.order, t2.root, p2.order);
    }
  }
  throw std::logic_error("unreachable");
}

void dotNode(const IRNode& n, std::ostringstream& o, std::size_t& next) {
  const std::size_t me = next++;
  o << "  n" << me << " [label=\"" << n.label.vertices() << " vertices, rank "
    << rank(n.label.B) << "\"];\n";
  for (const auto& c : n.children) {
    const std::size_t child = next;
    dotNode(c, o, next);
    o << "  n" << me << " -> n" << child << ";\n";
  }
}

}  // namespace

PropGraphDecomposition rTomdec(const InductiveRankDec& t, const FactorizationBudget& budget) {
  if (auto err = inductiveRankError(t)) throw InvalidDecomposition(*err);
  RToM r(budget);
  if (!t.root) {
    r.out.tree = r.atom("empty", asMorphism(t.graph), 0);
  } else {
    r.out.tree = r.build(*t.root);
  }
  return std::move(r.out);
}

InductiveRankDec mTordec(const DecompTree& d, const Signature<GraphWithBoundaries>& sig,
                         const GraphWithBoundaries& g) {
  checkShapes(g);
  Part p = mToR(d, sig);
  std::vector<std::size_t> perm;
  const bool literal = same(p.value.G, g.G) && same(p.value.L, g.L) && same(p.value.R, g.R) &&
                       same(p.value.P, g.P) && same(p.value.F, g.F);
  if (literal) {
    perm = iota(g.vertices());
  } else {
    auto match = equalUpToPermutation(p.value, g);
    if (match.verdict == Iso::undecided)
      throw std::runtime_error("mTordec: equality undecided at the vertex cap");
    if (match.verdict != Iso::isomorphic)
      throw NotDecomposable("mTordec: the decomposition does not evaluate to g");
    perm = std::move(match.perm);
  }
  InductiveRankDec out;
  out.graph = danglingOf(g);
  for (auto v : p.order) out.order.push_back(perm[v]);
  out.root = std::move(p.node);
  return out;
}

std::string toDot(const InductiveRankDec& t, const std::string& name) {
  std::ostringstream o;
  o << "digraph " << name << " {\n";
  std::size_t next = 0;
  if (t.root) dotNode(*t.root, o, next);
  o << "}\n";
  return o.str();
}

}  // namespace monowidth
