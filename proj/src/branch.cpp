#include "monowidth/branch.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace monowidth {

namespace {

using Set = std::vector<std::size_t>;

Set setUnion(const Set& a, const Set& b) {
  Set out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Set setIntersection(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Set setDifference(const Set& a, const Set& b) {
  Set out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool sortedUnique(const Set& a) {
  return std::adjacent_find(a.begin(), a.end(), std::greater_equal<>()) == a.end();
}

Set normalized(Set a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Set iota(std::size_t n, std::size_t from = 0) {
  Set v(n);
  std::iota(v.begin(), v.end(), from);
  return v;
}

std::string show(const Set& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
  o << "}";
  return o.str();
}

// rooted binary split of a set of edges
struct Split {
  std::size_t edge = 0;
  std::vector<Split> kids;
};

Set splitEdges(const Split& s) {
  if (s.kids.empty()) return {s.edge};
  return setUnion(splitEdges(s.kids[0]), splitEdges(s.kids[1]));
}

// splits E at the root of s: V1 = ends(E1), V2 = ends(E2) plus what V1 misses
IBNode fromSplit(const Hypergraph& g, const Split& s, Set vertices, Set sources) {
  IBNode node;
  node.label.edges = splitEdges(s);
  node.label.vertices = std::move(vertices);
  node.label.sources = std::move(sources);
  if (s.kids.empty()) return node;
  const Set e1 = splitEdges(s.kids[0]), e2 = splitEdges(s.kids[1]);
  const Set v1 = edgeEnds(g, e1);
  const Set v2 = setUnion(edgeEnds(g, e2), setDifference(node.label.vertices, v1));
  const Set shared = setIntersection(v1, v2);
  node.children.push_back(
      fromSplit(g, s.kids[0], v1, setUnion(shared, setIntersection(node.label.sources, v1))));
  node.children.push_back(
      fromSplit(g, s.kids[1], v2, setUnion(shared, setIntersection(node.label.sources, v2))));
  return node;
}

Split caterpillar(const Set& edges, std::size_t from = 0) {
  if (from + 1 == edges.size()) return Split{edges[from], {}};
  Split s;
  s.kids.push_back(Split{edges[from], {}});
  s.kids.push_back(caterpillar(edges, from + 1));
  return s;
}

std::optional<std::string> nodeError(const Hypergraph& g, const IBNode& n, const std::string& at) {
  const auto& L = n.label;
  if (!sortedUnique(L.edges) || !sortedUnique(L.vertices) || !sortedUnique(L.sources))
    return at + ": label sets must be sorted without repeats";
  for (auto e : L.edges)
    if (e >= g.edges.size()) return at + ": unknown edge " + std::to_string(e);
  if (!L.vertices.empty() && L.vertices.back() >= g.vertices)
    return at + ": unknown vertex " + std::to_string(L.vertices.back());
  if (!subset(L.sources, L.vertices)) return at + ": sources outside the vertex set";
  if (!subset(edgeEnds(g, L.edges), L.vertices)) return at + ": an edge leaves the vertex set";
  if (n.empty) {
    if (!L.edges.empty()) return at + ": empty decomposition of a label with edges";
    if (!n.children.empty()) return at + ": empty node with children";
    return std::nullopt;
  }
  if (n.children.empty()) {
    if (L.edges.size() != 1)
      return at + ": leaf with " + std::to_string(L.edges.size()) + " edges";
    return std::nullopt;
  }
  if (n.children.size() != 2) return at + ": nodes have zero or two children";
  const auto& L1 = n.children[0].label;
  const auto& L2 = n.children[1].label;
  if (!setIntersection(L1.edges, L2.edges).empty() || setUnion(L1.edges, L2.edges) != L.edges)
    return at + ": children do not partition the edges";
  if (setUnion(L1.vertices, L2.vertices) != L.vertices)
    return at + ": children do not cover the vertices";
  const Set shared = setIntersection(L1.vertices, L2.vertices);
  if (L1.sources != setUnion(shared, setIntersection(L.sources, L1.vertices)))
    return at + ".0: sources " + show(L1.sources) + " do not match the glueing condition";
  if (L2.sources != setUnion(shared, setIntersection(L.sources, L2.vertices)))
    return at + ".1: sources " + show(L2.sources) + " do not match the glueing condition";
  for (int i = 0; i < 2; ++i)
    if (auto err = nodeError(g, n.children[i], at + "." + std::to_string(i))) return err;
  return std::nullopt;
}

std::size_t nodeWidth(const IBNode& n) {
  if (n.empty) return 0;
  std::size_t w = n.label.sources.size();
  for (const auto& c : n.children) w = std::max(w, nodeWidth(c));
  return w;
}

void collectPaths(const IBNode& n, NodePath& cur, std::vector<NodePath>& out) {
  out.push_back(cur);
  for (int i = 0; i < static_cast<int>(n.children.size()); ++i) {
    cur.push_back(i);
    collectPaths(n.children[static_cast<std::size_t>(i)], cur, out);
    cur.pop_back();
  }
}

bool isPrefix(const NodePath& a, const NodePath& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::vector<std::vector<std::size_t>> treeAdjacency(std::size_t nodes, const TreeEdges& edges) {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::string treeDefect(std::size_t nodes, const TreeEdges& edges) {
  if (nodes == 0) return edges.empty() ? "" : "edges on an empty tree";
  if (edges.size() + 1 != nodes) return "a tree on " + std::to_string(nodes) + " nodes needs " +
                                        std::to_string(nodes - 1) + " edges";
  for (auto [u, v] : edges)
    if (u >= nodes || v >= nodes || u == v) return "bad tree edge";
  const auto adj = treeAdjacency(nodes, edges);
  std::vector<bool> seen(nodes, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push(v);
      }
  }
  return count == nodes ? "" : "tree is disconnected";
}

std::vector<std::size_t> treeSide(const std::vector<std::vector<std::size_t>>& adj, std::size_t from,
                              std::size_t blocked) {
  std::vector<std::size_t> out{from};
  std::vector<bool> seen(adj.size(), false);
  seen[from] = seen[blocked] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto v : adj[out[i]])
      if (!seen[v]) {
        seen[v] = true;
        out.push_back(v);
      }
  return out;
}


void checkBranchDec(const BranchDec& dec, const Hypergraph& g) {
  const std::size_t m = g.edges.size();
  if (m == 0) {
    if (dec.nodes != 0 || !dec.leafEdge.empty())
      throw InvalidDecomposition("an edgeless graph has the empty branch decomposition");
    return;
  }
  if (auto err = treeDefect(dec.nodes, dec.treeEdges); !err.empty())
    throw InvalidDecomposition(err);
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  std::vector<bool> hit(m, false);
  for (std::size_t u = 0; u < dec.nodes; ++u) {
    if (adj[u].size() > 3) throw InvalidDecomposition("tree node " + std::to_string(u) + " has degree above 3");
    const bool leaf = adj[u].size() <= 1;
    auto it = dec.leafEdge.find(u);
    if (leaf != (it != dec.leafEdge.end()))
      throw InvalidDecomposition("leaf map does not match the leaves at node " + std::to_string(u));
    if (!leaf) continue;
    if (it->second >= m || hit[it->second])
      throw InvalidDecomposition("leaf map is not a bijection onto the edges");
    hit[it->second] = true;
  }
  if (dec.leafEdge.size() != m) throw InvalidDecomposition("leaf map misses edges");
}

std::size_t branchWidthOf(const BranchDec& dec, const Hypergraph& g) {
  checkBranchDec(dec, g);
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  std::size_t best = 0;
  for (auto [u, v] : dec.treeEdges) {
    Set a, b;
    for (auto x : treeSide(adj, u, v))
      if (auto it = dec.leafEdge.find(x); it != dec.leafEdge.end()) a.push_back(it->second);
    for (auto x : treeSide(adj, v, u))
      if (auto it = dec.leafEdge.find(x); it != dec.leafEdge.end()) b.push_back(it->second);
    best = std::max(best, setIntersection(edgeEnds(g, normalized(a)), edgeEnds(g, normalized(b))).size());
  }
  return best;
}

TreeDecReport treeDecCheck(const TreeDec& dec, const Hypergraph& g) {
  TreeDecReport r;
  if (dec.bags.size() != dec.nodes) {
    r.reason = "one bag per tree node expected";
    return r;
  }
  if (dec.nodes == 0 && g.vertices > 0) {
    r.reason = "no bags for a nonempty graph";
    return r;
  }
  if (auto err = treeDefect(dec.nodes, dec.treeEdges); !err.empty()) {
    r.reason = err;
    return r;
  }
  std::vector<Set> bags;
  for (const auto& b : dec.bags) {
    bags.push_back(normalized(b));
    if (!bags.back().empty() && bags.back().back() >= g.vertices) {
      r.reason = "bag names an unknown vertex";
      return r;
    }
    r.width = std::max(r.width, bags.back().size());
  }
  for (std::size_t v = 0; v < g.vertices; ++v) {
    std::size_t holders = 0, links = 0;
    for (const auto& b : bags) holders += std::binary_search(b.begin(), b.end(), v) ? 1 : 0;
    for (auto [x, y] : dec.treeEdges)
      links += (std::binary_search(bags[x].begin(), bags[x].end(), v) &&
                std::binary_search(bags[y].begin(), bags[y].end(), v))
                   ? 1
                   : 0;
    if (holders == 0) {
      r.reason = "vertex " + std::to_string(v) + " is in no bag";
      return r;
    }
    if (links + 1 != holders) {
      r.reason = "bags holding vertex " + std::to_string(v) + " are not connected";
      return r;
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const bool inside = std::any_of(bags.begin(), bags.end(),
                                    [&](const Set& b) { return subset(g.edges[e], b); });
    if (!inside) {
      r.reason = "edge " + std::to_string(e) + " lies in no bag";
      return r;
    }
  }
  r.valid = true;
  return r;
}

std::optional<std::string> inductiveBranchError(const InductiveBranchDec& t) {
  const auto& L = t.root.label;
  if (L.edges != iota(t.graph.edges.size())) return std::string("root must hold every edge");
  return nodeError(t.graph, t.root, "root");
}

std::size_t inductiveBranchWidth(const InductiveBranchDec& t) { return nodeWidth(t.root); }

std::vector<NodePath> nodePaths(const IBNode& root) {
  std::vector<NodePath> out;
  NodePath cur;
  collectPaths(root, cur, out);
  return out;
}

const IBNode& nodeAt(const IBNode& root, const NodePath& path) {
  const IBNode* n = &root;
  for (int i : path) n = &n->children.at(static_cast<std::size_t>(i));
  return *n;
}

std::vector<std::size_t> subtreeBoundary(const InductiveBranchDec& t, const NodePath& path) {
  const IBNode& target = nodeAt(t.root, path);
  Set outside = t.root.label.sources;
  for (const auto& p : nodePaths(t.root)) {
    if (isPrefix(p, path) || isPrefix(path, p)) continue;
    outside = setUnion(outside, nodeAt(t.root, p).label.vertices);
  }
  return setIntersection(target.label.vertices, outside);
}

InductiveBranchDec toInductiveBranch(const BranchDec& dec, const HypergraphWithSources& gamma) {
  const Hypergraph& g = gamma.graph;
  checkBranchDec(dec, g);
  const Set sources = normalized(gamma.sources);
  if (!sources.empty() && sources.back() >= g.vertices)
    throw InvalidDecomposition("source outside the graph");
  InductiveBranchDec t;
  t.graph = g;
  const Set all = iota(g.vertices);
  if (g.edges.empty()) {
    t.root.empty = true;
    t.root.label = IBLabel{{}, all, sources};
    return t;
  }
  const auto adj = treeAdjacency(dec.nodes, dec.treeEdges);
  // the part of the tree hanging from u away from its parent p
  std::function<Split(std::size_t, std::size_t)> hang = [&](std::size_t u, std::size_t p) {
    if (auto it = dec.leafEdge.find(u); it != dec.leafEdge.end()) return Split{it->second, {}};
    std::vector<std::size_t> kids;
    for (auto v : adj[u])
      if (v != p) kids.push_back(v);
    if (kids.size() == 1) return hang(kids[0], u);
    Split s;
    s.kids.push_back(hang(kids[0], u));
    s.kids.push_back(hang(kids[1], u));
    return s;
  };
  Split top;
  if (dec.nodes == 1) {
    top = Split{dec.leafEdge.begin()->second, {}};
  } else {
    const auto [a, b] = dec.treeEdges.front();
    top.kids.push_back(hang(a, b));
    top.kids.push_back(hang(b, a));
  }
  t.root = fromSplit(g, top, all, sources);
  return t;
}

BranchDec fromInductiveBranch(const InductiveBranchDec& t) {
  if (auto err = inductiveBranchError(t)) throw InvalidDecomposition(*err);
  BranchDec dec;
  std::function<std::optional<std::size_t>(const IBNode&)> build =
      [&](const IBNode& n) -> std::optional<std::size_t> {
    if (n.empty) return std::nullopt;
    if (n.isLeaf()) {
      const std::size_t v = dec.nodes++;
      dec.leafEdge[v] = n.label.edges.front();
      return v;
    }
    const auto a = build(n.children[0]);
    const auto b = build(n.children[1]);
    if (!a) return b;
    if (!b) return a;
    const std::size_t v = dec.nodes++;
    dec.treeEdges.emplace_back(v, *a);
    dec.treeEdges.emplace_back(v, *b);
    return v;
  };
  build(t.root);
  return dec;
}

CospanHG labelCospan(const Hypergraph& g, const IBLabel& label) {
  Set left;
  for (auto s : label.sources)
    left.push_back(static_cast<std::size_t>(
        std::lower_bound(label.vertices.begin(), label.vertices.end(), s) - label.vertices.begin()));
  return sourcesCospan(restrictGraph(g, label.edges, label.vertices), std::move(left));
}

namespace {

class BToM {
public:
  explicit BToM(const Hypergraph& g) : g_(g) {}

  DecompTree build(const IBNode& n) {
    if (n.empty) return discrete(n.label.vertices, n.label.sources);
    if (n.isLeaf()) return leaf(n.label);
    return node(n);
  }

  Signature<CospanHG> sig;

private:
  DecompTree tensorAll(std::vector<DecompTree> parts) {
    if (parts.empty()) return structuralLeaf(identityCospan(0), sig);
    DecompTree t = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      t = DecompTree::tensor(std::move(parts[i]), std::move(t));
    return t;
  }

  DecompTree point(bool source) {
    return structuralLeaf(structuralCospan(1, source ? Set{0} : Set{}, {}), sig);
  }

  // one point per vertex, in vertex order
  DecompTree discrete(const Set& vertices, const Set& sources) {
    std::vector<DecompTree> parts;
    for (auto v : vertices) parts.push_back(point(std::binary_search(sources.begin(), sources.end(), v)));
    return tensorAll(std::move(parts));
  }

  // t expects its inputs in order `to`; the result takes them in order `from`
  DecompTree reorder(DecompTree t, const Set& from, const Set& to) {
    if (from == to) return t;
    Set order;
    for (auto v : to)
      order.push_back(static_cast<std::size_t>(std::find(from.begin(), from.end(), v) - from.begin()));
    return DecompTree::compose(structuralLeaf(permutationCospan(order), sig), std::move(t),
                               to.size());
  }

  DecompTree leaf(const IBLabel& L) {
    const std::size_t e = L.edges.front();
    const Set& ends = g_.edges[e];
    const Set endSources = setIntersection(ends, L.sources);
    CospanHG atom;
    atom.apex = restrictGraph(g_, {e}, ends);
    for (auto s : endSources)
      atom.left.push_back(static_cast<std::size_t>(std::lower_bound(ends.begin(), ends.end(), s) - ends.begin()));
    std::vector<DecompTree> parts{cospanLeaf("edge" + std::to_string(e), std::move(atom), sig)};
    const Set rest = setDifference(L.vertices, ends);
    for (auto v : rest) parts.push_back(point(std::binary_search(L.sources.begin(), L.sources.end(), v)));
    Set inputs = endSources;
    const Set restSources = setIntersection(rest, L.sources);
    inputs.insert(inputs.end(), restSources.begin(), restSources.end());
    return reorder(tensorAll(std::move(parts)), L.sources, inputs);
  }

  static Set concat(std::initializer_list<const Set*> parts) {
    Set out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
  }

  DecompTree node(const IBNode& n) {
    const IBLabel& L = n.label;
    const IBLabel& L1 = n.children[0].label;
    const IBLabel& L2 = n.children[1].label;
    const Set shared = setIntersection(L1.vertices, L2.vertices);
    const Set onlyFirst = setDifference(setIntersection(L.sources, L1.vertices), shared);
    const Set sharedIn = setIntersection(shared, L.sources);
    const Set sharedNew = setDifference(shared, L.sources);
    const Set rest = setDifference(L.sources, L1.vertices);

    // first part: [onlyFirst, shared] -> shared, feeding g1 and keeping a copy of shared
    const Set x1 = concat({&onlyFirst, &sharedIn, &sharedNew});
    DecompTree g1 = reorder(build(n.children[0]), x1, L1.sources);
    const CospanAlgebra alg;
    DecompTree first = copyDecompose(g1, onlyFirst.size(), Set(shared.size(), 1), 0, sig, alg);
    if (!sharedNew.empty()) {
      const std::size_t known = onlyFirst.size() + sharedIn.size();
      first = DecompTree::compose(structuralLeaf(structuralCospan(x1.size(), iota(known), iota(x1.size())), sig),
                                  std::move(first), x1.size());
    }
    if (!rest.empty()) first = DecompTree::tensor(std::move(first), alg.identityTree(rest.size(), sig));

    const Set x2 = concat({&sharedIn, &sharedNew, &rest});
    DecompTree whole = DecompTree::compose(
        std::move(first), reorder(build(n.children[1]), x2, L2.sources), x2.size());
    return reorder(std::move(whole), L.sources, concat({&onlyFirst, &sharedIn, &rest}));
  }

  const Hypergraph& g_;
};

// evaluation of every subtree, with the maps of the parts into the whole
struct EvalNode {
  CospanHG value;
  std::vector<EvalNode> kids;
  Set inj1, inj2;
};

EvalNode evalTree(const DecompTree& d, const Signature<CospanHG>& sig) {
  EvalNode n;
  if (d.isLeaf()) {
    n.value = sig.at(d.atom).morphism;
    checkCospan(n.value);
    return n;
  }
  n.kids.push_back(evalTree(d.left(), sig));
  n.kids.push_back(evalTree(d.right(), sig));
  const CospanHG& a = n.kids[0].value;
  const CospanHG& b = n.kids[1].value;
  if (d.kind == DecompTree::Kind::tensor) {
    n.value = tensorCospans(a, b);
    n.inj1 = iota(a.apex.vertices);
    n.inj2 = iota(b.apex.vertices, a.apex.vertices);
    return n;
  }
  if (a.codomain() != d.cut || b.domain() != d.cut)
    throw TypeMismatch("composition cut along " + std::to_string(d.cut) + " but the parts meet along " +
                       std::to_string(a.codomain()) + " and " + std::to_string(b.domain()));
  Pushout p = pushout(a, b);
  n.value = std::move(p.result);
  n.inj1 = std::move(p.inj1);
  n.inj2 = std::move(p.inj2);
  return n;
}

IBNode mToB(const Hypergraph& g, const EvalNode& n, const Set& phi, const Set& edgeIds) {
  IBNode out;
  out.label.edges = normalized(edgeIds);
  out.label.vertices = normalized(phi);
  Set src;
  for (auto v : n.value.left) src.push_back(phi[v]);
  for (auto v : n.value.right) src.push_back(phi[v]);
  out.label.sources = normalized(src);
  if (edgeIds.empty()) {
    out.empty = true;
    return out;
  }
  if (n.kids.empty()) {
    if (edgeIds.size() == 1) return out;
    return fromSplit(g, caterpillar(out.label.edges), out.label.vertices, out.label.sources);
  }
  const std::size_t f1 = n.kids[0].value.apex.edges.size();
  Set phi1, phi2;
  for (auto w : n.inj1) phi1.push_back(phi[w]);
  for (auto w : n.inj2) phi2.push_back(phi[w]);
  out.children.push_back(mToB(g, n.kids[0], phi1, Set(edgeIds.begin(), edgeIds.begin() + static_cast<long>(f1))));
  out.children.push_back(mToB(g, n.kids[1], phi2, Set(edgeIds.begin() + static_cast<long>(f1), edgeIds.end())));
  return out;
}

}  // namespace

CospanDecomposition bTomdec(const InductiveBranchDec& t) {
  if (auto err = inductiveBranchError(t)) throw InvalidDecomposition(*err);
  BToM b(t.graph);
  DecompTree tree = b.build(t.root);
  return {std::move(tree), std::move(b.sig)};
}

InductiveBranchDec mTobdec(const DecompTree& d, const Signature<CospanHG>& sig, const CospanHG& h,
                           const std::vector<std::size_t>& phi, std::size_t vertexCount) {
  checkCospan(h);
  const std::size_t w = h.apex.vertices;
  if (phi.size() != w) throw std::invalid_argument("phi must be defined on every apex vertex");
  std::vector<bool> boundary(w, false);
  for (auto v : h.left) boundary[v] = true;
  for (auto v : h.right) boundary[v] = true;
  std::map<std::size_t, std::size_t> firstWith;
  for (std::size_t v = 0; v < w; ++v) {
    if (phi[v] >= vertexCount) throw std::invalid_argument("phi leaves its codomain");
    auto [it, fresh] = firstWith.emplace(phi[v], v);
    if (!fresh && !(boundary[it->second] && boundary[v]))
      throw GlueingViolation("phi identifies vertices " + std::to_string(it->second) + " and " +
                             std::to_string(v) + " outside the boundary");
  }

  const EvalNode e = evalTree(d, sig);
  const IsoOutcome match = cospanIso(e.value, h);
  if (match.verdict != Iso::isomorphic)
    throw NotDecomposable(match.verdict == Iso::undecided
                              ? "could not decide whether the tree evaluates to h"
                              : "the tree does not evaluate to h");

  InductiveBranchDec t;
  t.graph.vertices = vertexCount;
  for (const auto& edge : h.apex.edges) {
    Set ends;
    for (auto v : edge) ends.push_back(phi[v]);
    t.graph.addEdge(std::move(ends));
  }
  Set phiE;
  for (std::size_t v = 0; v < e.value.apex.vertices; ++v) phiE.push_back(phi[match.vertexMap[v]]);
  t.root = mToB(t.graph, e, phiE, match.edgeMap);
  return t;
}

InductiveBranchDec mTobdec(const DecompTree& d, const Signature<CospanHG>& sig, const CospanHG& h) {
  return mTobdec(d, sig, h, iota(h.apex.vertices), h.apex.vertices);
}

std::string toDot(const InductiveBranchDec& t, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  std::size_t next = 0;
  std::function<std::size_t(const IBNode&)> walk = [&](const IBNode& n) {
    const std::size_t id = next++;
    out << "  n" << id << " [label=\"";
    if (n.empty)
      out << "empty";
    else
      out << "E" << show(n.label.edges) << " X" << show(n.label.sources);
    out << "\"];\n";
    for (const auto& c : n.children) out << "  n" << id << " -- n" << walk(c) << ";\n";
    return id;
  };
  walk(t.root);
  out << "}\n";
  return out.str();
}

}  // namespace monowidth
