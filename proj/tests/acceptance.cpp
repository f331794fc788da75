// Acceptance run: one PASS/FAIL line per criterion, with its runtime.
// All instances come from fixed seeds; all comparisons are exact.

#include "fixtures.hpp"
#include "monowidth/bialgebra.hpp"
#include "monowidth/boundary_graph.hpp"
#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/oracle.hpp"
#include "monowidth/random_instances.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace monowidth;

namespace {

// Runtime targets in seconds.
constexpr double kMatrixSandwichSeconds = 60;
constexpr double kIdentitySeconds = 5;
constexpr double kCliqueSeconds = 30;
constexpr double kBranchBridgeSeconds = 300;
constexpr double kRankBridgeSeconds = 300;
constexpr double kExampleSeconds = 5;

constexpr std::uint64_t kSeed = 20240101;

class Tally {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_++ == 0) first_ = what;
  }
  void note(const std::string& line) { notes_.push_back(line); }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed, first: " << first_;
    return s.str();
  }
  const std::vector<std::string>& notes() const { return notes_; }

private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
  std::vector<std::string> notes_;
};

bool iso(const CospanHG& a, const CospanHG& b) { return cospanIso(a, b).verdict == Iso::isomorphic; }

bool samePermuted(const GraphWithBoundaries& a, const GraphWithBoundaries& b) {
  return equalUpToPermutation(a, b).verdict == Iso::isomorphic;
}

std::size_t maxBlockRank(const NatMatrix& a) {
  std::size_t r = 0;
  for (const auto& b : blockSplit(a)) r = std::max(r, rank(b.value));
  return r;
}

// Random subcubic tree whose leaves are 0..n-1: leaves are merged in pairs
// under new nodes and the last two roots are joined directly.
std::pair<std::size_t, TreeEdges> randomTree(Rng& rng, std::size_t n) {
  if (n <= 1) return {n, {}};
  TreeEdges edges;
  std::vector<std::size_t> roots(n);
  std::iota(roots.begin(), roots.end(), 0);
  std::size_t next = n;
  while (roots.size() > 2) {
    std::shuffle(roots.begin(), roots.end(), rng);
    const std::size_t a = roots.back();
    roots.pop_back();
    const std::size_t b = roots.back();
    roots.back() = next;
    edges.emplace_back(a, next);
    edges.emplace_back(b, next);
    ++next;
  }
  edges.emplace_back(roots[0], roots[1]);
  return {next, edges};
}

BranchDec randomBranchDec(Rng& rng, const Hypergraph& g) {
  BranchDec d;
  std::tie(d.nodes, d.treeEdges) = randomTree(rng, g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) d.leafEdge[i] = i;
  return d;
}

RankDec randomRankDec(Rng& rng, std::size_t k) {
  RankDec d;
  std::tie(d.nodes, d.treeEdges) = randomTree(rng, k);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < k; ++i) d.leafVertex[i] = perm[i];
  return d;
}

std::vector<std::size_t> randomSubset(Rng& rng, std::size_t n, std::size_t maxSize) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(n, rng() % (maxSize + 1)));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::size_t> randomLeg(Rng& rng, std::size_t vertices, std::size_t size) {
  std::vector<std::size_t> leg;
  for (std::size_t i = 0; i < size && vertices > 0; ++i) leg.push_back(rng() % vertices);
  return leg;
}

// Zero on and below the diagonal.
NatMatrix strictUpper(NatMatrix a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j <= i && j < a.cols(); ++j) a(i, j) = 0;
  return a;
}

NatMatrix fullRowRank(Rng& rng, std::size_t rows, std::size_t cols) {
  while (true) {
    NatMatrix m = randomNatMatrix(rng, rows, cols, 2);
    if (rank(m) == rows) return m;
  }
}

// Hypergraphs with at most 6 edges of size at most 3.
std::vector<Hypergraph> branchCorpus() {
  Rng rng(kSeed);
  std::vector<Hypergraph> out;
  for (int i = 0; i < 100; ++i) {
    const std::size_t vertices = 3 + rng() % 4, edges = 1 + rng() % 6;
    out.push_back(randomHypergraph(rng, vertices, edges, 3));
  }
  return out;
}

// Simple graphs on at most 7 vertices, as upper-triangular adjacency.
std::vector<NatMatrix> rankCorpus() {
  Rng rng(kSeed + 1);
  std::vector<NatMatrix> out;
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 1 + rng() % 7;
    out.push_back(adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5)));
  }
  return out;
}

void matrixSandwich(Tally& t) {
  Rng rng(kSeed + 2);
  for (int i = 0; i < 200; ++i) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const NatMatrix a = randomNatMatrix(rng, rows, cols, 2);
    const std::size_t r = maxBlockRank(a);
    const std::size_t w = exactMatrixMwd(a);
    t.expect(r <= w && w <= r + 1, "mwd outside [r, r+1] for " + toString(a));
    const UpperBound up = matrixMonoidalUpper(a);
    t.expect(widthBialg(up.tree) <= r + 1, "upper tree wider than r+1 for " + toString(a));
    t.expect(evaluateBialg(up.tree) == a, "upper tree does not evaluate to " + toString(a));
    if (!up.attainsFieldRank) t.note("natural factorization above field rank: " + toString(a));
  }
}

void identityPins(Tally& t) {
  for (std::size_t n = 1; n <= 3; ++n) {
    NatMatrix twice = identity(n);
    for (std::size_t i = 0; i < n; ++i) twice(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 2;
    t.expect(exactMatrixMwd(identity(n)) == 1, "mwd(I_" + std::to_string(n) + ") != 1");
    t.expect(exactMatrixMwd(twice) == 2, "mwd(2I_" + std::to_string(n) + ") != 2");
  }
}

void cliqueRankWidth(Tally& t) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto g = fixture::clique(n);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges) edges.emplace_back(e[0], e[1]);
    const NatMatrix a = adjacencyFromEdges(n, edges);
    const auto r = exactRankWidth(a);
    t.expect(r.width == 1, "rank width of K_" + std::to_string(n) + " is " + std::to_string(r.width));
    const DanglingGraph gamma{a, zeros(n, 0)};
    const auto d = rTomdec(toInductiveRank(r.dec, gamma));
    t.expect(width(d.tree, d.sig) <= 2, "rTomdec of K_" + std::to_string(n) + " wider than 2");
    t.expect(samePermuted(evaluate(d.tree, d.sig, PropGraphAlgebra{}), asMorphism(gamma)),
             "rTomdec of K_" + std::to_string(n) + " evaluates elsewhere");
  }
}

void branchBridge(Tally& t, const std::vector<Hypergraph>& corpus) {
  Rng rng(kSeed + 3);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Hypergraph& g = corpus[i];
    const std::string tag = "hypergraph " + std::to_string(i);
    const auto opt = exactBranchWidth(g);
    const auto d = bTomdec(toInductiveBranch(opt.dec, {g, {}}));
    t.expect(width(d.tree, d.atoms) <= std::max(opt.width + 1, g.maxArity()), tag + ": bTomdec too wide");
    t.expect(iso(evaluate(d.tree, d.atoms, CospanAlgebra{}), sourcesCospan(g, {})),
             tag + ": bTomdec evaluates elsewhere");
    for (int s = 0; s < 20; ++s) {
      const std::size_t left = rng() % 3, right = rng() % 3;
      const CospanHG h{g, randomLeg(rng, g.vertices, left), randomLeg(rng, g.vertices, right)};
      const auto sample = randomCospanDecomposition(rng, h, 4);
      t.expect(iso(evaluate(sample.tree, sample.atoms, CospanAlgebra{}), h), tag + ": sampled tree invalid");
      const auto ib = mTobdec(sample.tree, sample.atoms, h);
      t.expect(validInductiveBranch(ib), tag + ": mTobdec output invalid");
      const std::size_t bound = 2 * std::max({width(sample.tree, sample.atoms), h.left.size(), h.right.size()});
      t.expect(inductiveBranchWidth(ib) <= bound, tag + ": mTobdec too wide");
    }
  }
}

void rankBridge(Tally& t, const std::vector<NatMatrix>& corpus) {
  Rng rng(kSeed + 4);
  std::size_t edgeless = 0, aboveFieldRank = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const NatMatrix& a = corpus[i];
    const std::size_t k = static_cast<std::size_t>(a.rows());
    const std::string tag = "graph " + std::to_string(i);
    const auto opt = exactRankWidth(a);
    const DanglingGraph gamma{a, zeros(k, 0)};
    const auto d = rTomdec(toInductiveRank(opt.dec, gamma));
    const std::size_t w = width(d.tree, d.sig);
    t.expect(samePermuted(evaluate(d.tree, d.sig, PropGraphAlgebra{}), asMorphism(gamma)),
             tag + ": rTomdec evaluates elsewhere");
    // Without edges the rank width is 0 while a vertex still weighs 1.
    if (isZero(a)) {
      ++edgeless;
      t.expect(w <= d.certified, tag + ": edgeless rTomdec above its certificate");
    } else if (!d.attainsFieldRank) {
      ++aboveFieldRank;
      t.note(tag + ": natural factorization above field rank, certificate " + std::to_string(d.certified));
      t.expect(w <= d.certified, tag + ": rTomdec above its widened certificate");
    } else {
      t.expect(w <= 2 * opt.width, tag + ": rTomdec wider than twice the rank width");
    }
    for (int s = 0; s < 5; ++s) {
      const std::size_t n = rng() % 3, m = rng() % 3;
      const GraphWithBoundaries g{a, randomNatMatrix(rng, k, n, 1), randomNatMatrix(rng, k, m, 1),
                                  randomNatMatrix(rng, m, n, 1), strictUpper(randomNatMatrix(rng, m, m, 1))};
      const auto sample = randomPropGraphDecomposition(rng, g, 4);
      t.expect(samePermuted(evaluate(sample.tree, sample.sig, PropGraphAlgebra{}), g),
               tag + ": sampled tree invalid");
      const auto ir = mTordec(sample.tree, sample.sig, g);
      t.expect(validateInductiveRank(ir), tag + ": mTordec output invalid");
      const std::size_t bound = 2 * std::max({width(sample.tree, sample.sig), rank(g.L), rank(g.R)});
      t.expect(inductiveRankWidth(ir) <= bound, tag + ": mTordec too wide");
    }
  }
  t.note(std::to_string(edgeless) + " edgeless graphs held to their certificate instead of 2 rwd");
  t.note(std::to_string(aboveFieldRank) + " graphs with a natural factorization above field rank");
}

void conversionSandwiches(Tally& t, const std::vector<Hypergraph>& hypergraphs,
                          const std::vector<NatMatrix>& graphs) {
  Rng rng(kSeed + 5);
  for (std::size_t i = 0; i < hypergraphs.size(); ++i) {
    const Hypergraph& g = hypergraphs[i];
    const std::string tag = "hypergraph " + std::to_string(i);
    const auto opt = exactBranchWidth(g);
    std::size_t least = inductiveBranchWidth(toInductiveBranch(opt.dec, {g, {}}));
    for (int s = 0; s < 10; ++s) {
      const BranchDec dec = randomBranchDec(rng, g);
      const auto sources = randomSubset(rng, g.vertices, 3);
      const auto ib = toInductiveBranch(dec, {g, sources});
      t.expect(validInductiveBranch(ib), tag + ": inductive branch invalid");
      t.expect(inductiveBranchWidth(ib) <= branchWidthOf(dec, g) + sources.size(),
               tag + ": inductive above branch width + |X|");
      const auto closed = toInductiveBranch(dec, {g, {}});
      least = std::min(least, inductiveBranchWidth(closed));
      t.expect(branchWidthOf(fromInductiveBranch(closed), g) <= inductiveBranchWidth(closed),
               tag + ": branch width above inductive width");
    }
    t.expect(least == opt.width, tag + ": least inductive branch width differs from the oracle");
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const NatMatrix& a = graphs[i];
    const std::size_t k = static_cast<std::size_t>(a.rows());
    const std::string tag = "graph " + std::to_string(i);
    const auto opt = exactRankWidth(a);
    std::size_t least = inductiveRankWidth(toInductiveRank(opt.dec, {a, zeros(k, 0)}));
    for (int s = 0; s < 10; ++s) {
      const RankDec dec = randomRankDec(rng, k);
      const std::size_t ports = rng() % 3;
      const NatMatrix b = randomNatMatrix(rng, k, ports, 1);
      const auto ir = toInductiveRank(dec, {a, b});
      t.expect(validateInductiveRank(ir), tag + ": inductive rank invalid");
      t.expect(inductiveRankWidth(ir) <= rankWidthOf(dec, a) + rank(b), tag + ": inductive above rank width + rank B");
      t.expect(rankWidthOf(fromInductiveRank(ir), a) <= inductiveRankWidth(ir), tag + ": rank width above inductive");
      const auto closed = toInductiveRank(dec, {a, zeros(k, 0)});
      least = std::min(least, inductiveRankWidth(closed));
      t.expect(rankWidthOf(fromInductiveRank(closed), a) <= inductiveRankWidth(closed),
               tag + ": rank width above inductive width");
    }
    t.expect(least == opt.width, tag + ": least inductive rank width differs from the oracle");
  }
}

void boundaryIdentities(Tally& t) {
  Rng rng(kSeed + 6);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 1 + rng() % 7;
    const NatMatrix a = adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5));
    const std::size_t ports = rng() % 3;
    const NatMatrix b = randomNatMatrix(rng, k, ports, 1);
    const auto ir = toInductiveRank(randomRankDec(rng, k), {a, b});
    for (const auto& p : nodePaths(*ir.root))
      t.expect(closedBoundaryRank(ir, p) == rank(nodeAt(*ir.root, p).label.B),
               "closed boundary rank differs on rank decomposition " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t vertices = 3 + rng() % 4, edges = 1 + rng() % 6;
    const Hypergraph g = randomHypergraph(rng, vertices, edges, 3);
    const BranchDec dec = randomBranchDec(rng, g);
    const auto ib = toInductiveBranch(dec, {g, randomSubset(rng, g.vertices, 3)});
    for (const auto& p : nodePaths(ib.root))
      t.expect(subtreeBoundary(ib, p) == nodeAt(ib.root, p).label.sources,
               "subtree boundary differs on branch decomposition " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 1 + rng() % 6, r = 1 + rng() % 2, s = r + rng() % 2, s2 = r + rng() % 2;
    const NatMatrix a = adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5));
    const NatMatrix b = randomNatMatrix(rng, k, r, 1);
    const NatMatrix m = fullRowRank(rng, r, s), mp = fullRowRank(rng, r, s2);
    const RankDec dec = randomRankDec(rng, k);
    const auto tm = toInductiveRank(dec, {a, multiply(b, m)});
    const auto out = rebaseBoundary(tm, b, m, mp);
    t.expect(validateInductiveRank(out), "rebased decomposition " + std::to_string(i) + " invalid");
    t.expect(out.graph.B == multiply(b, mp), "rebased boundary " + std::to_string(i) + " wrong");
    t.expect(inductiveRankWidth(out) == inductiveRankWidth(tm),
             "rebasing to a full rank boundary changed width on instance " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 1 + rng() % 6, n = rng() % 3, m = rng() % 3;
    const NatMatrix a = adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5));
    const NatMatrix l = randomNatMatrix(rng, k, n, 1);
    const NatMatrix b = hcat(l, randomNatMatrix(rng, k, m, 1));
    const RankDec dec = randomRankDec(rng, k);
    const auto base = toInductiveRank(dec, {a, b});
    const NatMatrix f = randomNatMatrix(rng, n, n, 1);
    const auto out = wiresToFuture(base, f, randomNatMatrix(rng, m, n, 1));
    t.expect(validateInductiveRank(out), "wires to the future " + std::to_string(i) + " invalid");
    t.expect(inductiveRankWidth(out) <= inductiveRankWidth(base),
             "wires to the future widened instance " + std::to_string(i));
  }
}

void examplePins(Tally& t) {
  CospanHG e = structuralCospan(2, {0}, {1});
  e.apex.addEdge({0, 1});
  CospanHG path = structuralCospan(3, {0}, {2});
  path.apex.addEdge({0, 1});
  path.apex.addEdge({1, 2});
  t.expect(iso(composeCospans(e, e), path), "edge ; edge is not the path of length two");

  t.expect(treeDecCheck(fixture::treeDecExampleDecomposition(), fixture::treeDecExample()).width == 3,
           "example tree decomposition does not cost 3");
  t.expect(exactTreeWidth(fixture::treeDecExample()) == 3, "example graph tree width is not 3");

  for (std::size_t n = 1; n <= 5; ++n) {
    const std::vector<std::size_t> ones(n, 1);
    {
      Signature<NatMatrix> sig = bialgSignature();
      const BialgAlgebra alg;
      const DecompTree d = copyDecompose(alg.identityTree(n, sig), 0, ones, 0, sig, alg);
      t.expect(width(d, sig) <= n + 1, "matrix copy of " + std::to_string(n) + " wider than n+1");
      t.expect(evaluate(d, sig, alg) == vcat(identity(n), identity(n)),
               "matrix copy of " + std::to_string(n) + " evaluates elsewhere");
    }
    {
      Signature<CospanHG> sig;
      const CospanAlgebra alg;
      const DecompTree d = copyDecompose(alg.identityTree(n, sig), 0, ones, 0, sig, alg);
      std::vector<std::size_t> left(n), right(2 * n);
      std::iota(left.begin(), left.end(), 0);
      for (std::size_t i = 0; i < 2 * n; ++i) right[i] = i % n;
      t.expect(width(d, sig) <= n + 1, "cospan copy of " + std::to_string(n) + " wider than n+1");
      t.expect(iso(evaluate(d, sig, alg), structuralCospan(n, left, right)),
               "cospan copy of " + std::to_string(n) + " evaluates elsewhere");
    }
  }
}

}  // namespace

int main() {
  const auto hypergraphs = branchCorpus();
  const auto graphs = rankCorpus();

  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<void(Tally&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "matrix width sandwich, 200 matrices", kMatrixSandwichSeconds, matrixSandwich},
      {2, "identity pins", kIdentitySeconds, identityPins},
      {3, "clique rank width", kCliqueSeconds, cliqueRankWidth},
      {4, "branch width bridge, 100 hypergraphs", kBranchBridgeSeconds,
       [&](Tally& t) { branchBridge(t, hypergraphs); }},
      {5, "rank width bridge, 100 graphs", kRankBridgeSeconds, [&](Tally& t) { rankBridge(t, graphs); }},
      {6, "conversion sandwiches", 0, [&](Tally& t) { conversionSandwiches(t, hypergraphs, graphs); }},
      {7, "boundary identities", 0, boundaryIdentities},
      {8, "worked example pins", kExampleSeconds, examplePins},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = c.limit == 0 || secs < c.limit;
    const bool pass = t.ok() && inTime;
    all = all && pass;
    for (const auto& n : t.notes()) std::cout << "  note: " << n << "\n";
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.name << " (" << t.summary() << ", " << timing
              << (c.limit > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit)) + " s" : std::string())
              << (inTime ? "" : ", over time") << ")" << std::endl;
  }
  return all ? 0 : 1;
}
