#include <doctest.h>

#include "monowidth/boundary_graph.hpp"
#include "monowidth/oracle.hpp"
#include "monowidth/random_instances.hpp"
#include "oracles.hpp"

using namespace monowidth;

namespace {

NatMatrix m(std::size_t r, std::size_t c, std::vector<std::int64_t> v) {
  return fromRows(r, c, v);
}

GraphWithBoundaries randomGraph(Rng& rng, std::size_t k, std::size_t n, std::size_t mm) {
  auto sparse = [&](std::size_t r, std::size_t c) {
    NatMatrix a = randomNatMatrix(rng, r, c, 1);
    return a;
  };
  NatMatrix g = sparse(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0;
  NatMatrix f = sparse(mm, mm);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j <= i; ++j) f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0;
  return {g, sparse(k, n), sparse(k, mm), sparse(mm, n), f};
}

// one vertex attached to the single wire on the given side
GraphWithBoundaries vertexOn(bool left) {
  return left ? GraphWithBoundaries{zeros(1, 1), identity(1), zeros(1, 0), zeros(0, 1), zeros(0, 0)}
              : GraphWithBoundaries{zeros(1, 1), zeros(1, 0), identity(1), zeros(1, 0), zeros(1, 1)};
}

bool equalUpTo(const GraphWithBoundaries& a, const GraphWithBoundaries& b) {
  return equalUpToPermutation(a, b).verdict == Iso::isomorphic;
}

// Subcubic caterpillar over k leaves, leaf i on vertex i.
RankDec caterpillarRankDec(std::size_t k) {
  RankDec d;
  if (k == 1) {
    d.nodes = 1;
    d.leafVertex[0] = 0;
    return d;
  }
  if (k == 2) {
    d.nodes = 2;
    d.treeEdges = {{0, 1}};
    d.leafVertex = {{0, 0}, {1, 1}};
    return d;
  }
  d.nodes = 2 * k - 2;
  for (std::size_t i = 0; i < k; ++i) d.leafVertex[i] = i;
  d.treeEdges.emplace_back(0, k);
  d.treeEdges.emplace_back(1, k);
  for (std::size_t i = 2; i + 1 < k; ++i) {
    d.treeEdges.emplace_back(i, k + i - 1);
    d.treeEdges.emplace_back(k + i - 2, k + i - 1);
  }
  d.treeEdges.emplace_back(k - 1, 2 * k - 3);
  return d;
}

NatMatrix cliqueAdjacency(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  return adjacencyFromEdges(k, edges);
}

}  // namespace

TEST_CASE("adjacency equivalence") {
  const NatMatrix g = m(2, 2, {0, 1, 0, 0});
  CHECK(adjEquivalent(g, transpose(g)));
  CHECK(adjEquivalent(g, m(2, 2, {0, 0, 1, 0})));
  CHECK_FALSE(adjEquivalent(g, m(2, 2, {0, 2, 0, 0})));
  CHECK_THROWS_AS(adjEquivalent(g, zeros(3, 3)), DimensionMismatch);
}

TEST_CASE("composition and tensor of graphs with boundaries") {
  Rng rng(3);
  SUBCASE("identities are units") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = randomGraph(rng, 3, 2, 2);
      CHECK(equalUpTo(composeBoundaries(g, identityBoundaries(2)), g));
      CHECK(equalUpTo(composeBoundaries(identityBoundaries(2), g), g));
    }
    CHECK_THROWS_AS(composeBoundaries(identityBoundaries(1), identityBoundaries(2)), TypeMismatch);
  }
  SUBCASE("two vertices joined along a wire") {
    const auto g = composeBoundaries(vertexOn(false), vertexOn(true));
    CHECK(g.vertices() == 2);
    CHECK(adjEquivalent(g.G, m(2, 2, {0, 1, 0, 0})));
    CHECK(g.domain() == 0);
    CHECK(g.codomain() == 0);
  }
  SUBCASE("a cup glues two dangling edges into an edge") {
    const auto pair = tensorBoundaries(vertexOn(true), vertexOn(true));
    const auto g = composeBoundaries(cupBoundaries(1), pair);
    CHECK(g.vertices() == 2);
    CHECK(adjEquivalent(g.G, m(2, 2, {0, 1, 0, 0})));
    CHECK(g.L.cols() == 0);
    CHECK(g.R.cols() == 0);
  }
  SUBCASE("tensor with units") {
    const auto id = tensorBoundaries(identityBoundaries(2), identityBoundaries(1));
    CHECK(equalUpTo(id, identityBoundaries(3)));
    const auto g = randomGraph(rng, 2, 1, 2);
    CHECK(equalUpTo(tensorBoundaries(g, identityBoundaries(0)), g));
    const auto two = tensorBoundaries(vertexOn(true), vertexOn(true));
    CHECK(two.L == identity(2));
    CHECK(isZero(two.G));
  }
  SUBCASE("associativity and interchange") {
    for (int trial = 0; trial < 15; ++trial) {
      const auto a = randomGraph(rng, 2, 1, 2), b = randomGraph(rng, 1, 2, 2),
                 c = randomGraph(rng, 2, 2, 1);
      CHECK(equalUpTo(composeBoundaries(composeBoundaries(a, b), c),
                      composeBoundaries(a, composeBoundaries(b, c))));
      const auto d = randomGraph(rng, 1, 1, 1), e = randomGraph(rng, 1, 1, 2);
      CHECK(equalUpTo(tensorBoundaries(tensorBoundaries(a, d), e),
                      tensorBoundaries(a, tensorBoundaries(d, e))));
      const auto f = randomGraph(rng, 2, 1, 1);
      CHECK(equalUpTo(composeBoundaries(tensorBoundaries(a, d), tensorBoundaries(b, f)),
                      tensorBoundaries(composeBoundaries(a, b), composeBoundaries(d, f))));
    }
  }
}

TEST_CASE("equality up to vertex permutation") {
  Rng rng(9);
  const auto g = randomGraph(rng, 4, 2, 1);
  std::vector<std::size_t> p{2, 0, 3, 1};
  GraphWithBoundaries h = g;
  h.G = selectBlock(g.G, p, p);
  h.L = selectRows(g.L, p);
  h.R = selectRows(g.R, p);
  const auto out = equalUpToPermutation(h, g);
  REQUIRE(out.verdict == Iso::isomorphic);
  CHECK(out.perm == p);

  GraphWithBoundaries other = g;
  other.P(0, 0) = other.P(0, 0) == 0 ? 1 : 0;
  CHECK(equalUpToPermutation(g, other).verdict == Iso::notIsomorphic);

  const GraphWithBoundaries path{adjacencyFromEdges(3, {{0, 1}, {1, 2}}), zeros(3, 0), zeros(3, 0),
                                 zeros(0, 0), zeros(0, 0)};
  const GraphWithBoundaries tri{adjacencyFromEdges(3, {{0, 1}, {1, 2}, {0, 2}}), zeros(3, 0),
                                zeros(3, 0), zeros(0, 0), zeros(0, 0)};
  CHECK(equalUpToPermutation(path, tri).verdict == Iso::notIsomorphic);
  CHECK(equalUpToPermutation(path, path, 2).verdict == Iso::undecided);
  CHECK(boundaryWeight(path) == 3);
  CHECK(boundaryWeight(identityBoundaries(4)) == 0);
}

TEST_CASE("rank width of rank decompositions") {
  CHECK(rankWidthOf(caterpillarRankDec(1), zeros(1, 1)) == 0);
  for (std::size_t k = 2; k <= 5; ++k)
    CHECK(rankWidthOf(caterpillarRankDec(k), cliqueAdjacency(k)) == 1);
  const NatMatrix p4 = adjacencyFromEdges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(rankWidthOf(caterpillarRankDec(4), p4) == 1);
  // C5 needs rank two somewhere
  const NatMatrix c5 = adjacencyFromEdges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(rankWidthOf(caterpillarRankDec(5), c5) == 2);

  RankDec bad = caterpillarRankDec(3);
  bad.leafVertex[2] = 0;
  CHECK_THROWS_AS(checkRankDec(bad, 3), InvalidDecomposition);
}

TEST_CASE("inductive rank decompositions") {
  SUBCASE("single vertex") {
    const DanglingGraph d{zeros(1, 1), m(1, 2, {1, 1})};
    const auto t = caterpillarRank(d);
    CHECK(validateInductiveRank(t));
    CHECK(inductiveRankWidth(t) == 1);
  }
  SUBCASE("cut rank of a split read off the block form") {
    const DanglingGraph d{adjacencyFromEdges(4, {{0, 2}, {1, 3}, {0, 3}}), zeros(4, 0)};
    const auto t = caterpillarRank(d);
    REQUIRE(validateInductiveRank(t));
    for (const auto& p : nodePaths(*t.root))
      CHECK(closedBoundaryRank(t, p) == rank(nodeAt(*t.root, p).label.B));
  }
  SUBCASE("corrupted labels are rejected") {
    const DanglingGraph d{cliqueAdjacency(3), zeros(3, 0)};
    auto t = caterpillarRank(d);
    t.root->children[0].label.B = zeros(1, 2);
    CHECK(inductiveRankError(t).has_value());
    CHECK_THROWS_AS(fromInductiveRank(t), InvalidDecomposition);
  }
  SUBCASE("cliques stay at width one") {
    for (std::size_t k = 2; k <= 5; ++k) {
      const auto t = toInductiveRank(caterpillarRankDec(k), {cliqueAdjacency(k), zeros(k, 0)});
      REQUIRE(validateInductiveRank(t));
      CHECK(inductiveRankWidth(t) == 1);
    }
  }
  SUBCASE("round trips on random graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t k = 1 + trial % 6;
      const NatMatrix g = adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5));
      const NatMatrix b = randomNatMatrix(rng, k, trial % 3, 1);
      const auto opt = exactRankWidth(g);
      const auto t = toInductiveRank(opt.dec, {g, b});
      REQUIRE(validateInductiveRank(t));
      CHECK(inductiveRankWidth(t) <= opt.width + rank(b));
      for (const auto& p : nodePaths(*t.root))
        CHECK(closedBoundaryRank(t, p) == rank(nodeAt(*t.root, p).label.B));
      const RankDec back = fromInductiveRank(t);
      CHECK_NOTHROW(checkRankDec(back, k));
      CHECK(rankWidthOf(back, g) <= inductiveRankWidth(t));
    }
  }
}

TEST_CASE("cut along ranks") {
  SUBCASE("decoupled halves") {
    const auto c = cutAlongRanks(identity(2), zeros(2, 2), identity(2));
    CHECK(c.r1 == 2);
    CHECK(c.r2 == 2);
    CHECK(isZero(c.S));
    CHECK(c.attainsFieldRank());
  }
  SUBCASE("one edge across the cut") {
    const auto c = cutAlongRanks(zeros(1, 0), identity(1), zeros(1, 0));
    CHECK(c.r1 == 1);
    CHECK(c.r2 == 1);
    CHECK(multiply(c.L1, multiply(c.S, transpose(c.L2))) == identity(1));
  }
  SUBCASE("both identities on random matrices") {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      const NatMatrix a1 = randomNatMatrix(rng, 3, 2, 1), c = randomNatMatrix(rng, 3, 3, 1),
                      a2 = randomNatMatrix(rng, 3, 2, 1);
      const auto cut = cutAlongRanks(a1, c, a2);
      CHECK(multiply(cut.L1, hcat(cut.N1, multiply(cut.S, transpose(cut.L2)))) == hcat(a1, c));
      CHECK(multiply(cut.L2, hcat(cut.N2, multiply(transpose(cut.S), transpose(cut.L1)))) ==
            hcat(a2, transpose(c)));
      CHECK(cut.rank1 == oracle::rationalRank(oracle::grid(hcat(a1, c))));
      CHECK(cut.rank2 == oracle::rationalRank(oracle::grid(hcat(a2, transpose(c)))));
    }
  }
}

TEST_CASE("boundary rebasing and wires to the future") {
  Rng rng(8);
  const NatMatrix g = adjacencyFromEdges(4, {{0, 1}, {1, 2}, {2, 3}});
  const NatMatrix b = m(4, 2, {1, 0, 0, 1, 1, 1, 0, 0});
  const auto t = caterpillarRank({g, b});
  REQUIRE(validateInductiveRank(t));

  SUBCASE("identity to identity changes nothing") {
    const auto same = rebaseBoundary(t, b, identity(2), identity(2));
    CHECK(validateInductiveRank(same));
    CHECK(same.graph.B == b);
    CHECK(inductiveRankWidth(same) == inductiveRankWidth(t));
  }
  SUBCASE("full rank M to the identity keeps the width") {
    const NatMatrix mm = m(2, 2, {1, 1, 0, 1});
    const auto tm = caterpillarRank({g, multiply(b, mm)});
    const auto back = rebaseBoundary(tm, b, mm, identity(2));
    REQUIRE(validateInductiveRank(back));
    CHECK(back.graph.B == b);
    CHECK(inductiveRankWidth(back) == inductiveRankWidth(tm));
  }
  SUBCASE("any M' does not widen") {
    for (int trial = 0; trial < 10; ++trial) {
      const NatMatrix mp = randomNatMatrix(rng, 2, 3, 2);
      const auto r = rebaseBoundary(t, b, identity(2), mp);
      REQUIRE(validateInductiveRank(r));
      CHECK(r.graph.B == multiply(b, mp));
      CHECK(inductiveRankWidth(r) <= inductiveRankWidth(t));
    }
  }
  SUBCASE("M must have full row rank") {
    CHECK_THROWS_AS(rebaseBoundary(t, b, m(2, 2, {1, 1, 1, 1}), identity(2)), std::invalid_argument);
  }
  SUBCASE("wires to the future") {
    const auto zero = wiresToFuture(t, zeros(1, 1), zeros(1, 1));
    CHECK(validateInductiveRank(zero));
    CHECK(zero.graph.B == b);
    CHECK(adjEquivalent(zero.graph.G, g));

    const DanglingGraph single{zeros(1, 1), m(1, 2, {1, 0})};
    const auto loop = wiresToFuture(caterpillarRank(single), m(1, 1, {1}), m(1, 1, {1}));
    CHECK(validateInductiveRank(loop));
    CHECK(loop.graph.G == m(1, 1, {1}));
    CHECK(loop.graph.B == m(1, 2, {1, 2}));
    CHECK(inductiveRankWidth(loop) <= 1);

    for (int trial = 0; trial < 10; ++trial) {
      const NatMatrix f = randomNatMatrix(rng, 1, 1, 1), p = randomNatMatrix(rng, 1, 1, 1);
      const auto w = wiresToFuture(t, f, p);
      REQUIRE(validateInductiveRank(w));
      CHECK(inductiveRankWidth(w) <= inductiveRankWidth(t));
    }
    CHECK_THROWS_AS(wiresToFuture(t, zeros(3, 3), zeros(0, 3)), DimensionMismatch);
  }
}

TEST_CASE("rTomdec") {
  SUBCASE("a graph without vertices") {
    const InductiveRankDec t{{zeros(0, 0), zeros(0, 2)}, {}, std::nullopt};
    const auto d = rTomdec(t);
    CHECK(d.tree.isLeaf());
    CHECK(width(d.tree, d.sig) == 0);
  }
  SUBCASE("a single vertex is one leaf") {
    const auto t = caterpillarRank({zeros(1, 1), m(1, 1, {1})});
    const auto d = rTomdec(t);
    CHECK(d.tree.isLeaf());
    CHECK(width(d.tree, d.sig) == 1);
  }
  SUBCASE("cliques") {
    for (std::size_t k = 2; k <= 5; ++k) {
      const auto t = toInductiveRank(caterpillarRankDec(k), {cliqueAdjacency(k), zeros(k, 0)});
      const auto d = rTomdec(t);
      CHECK(d.attainsFieldRank);
      CHECK(width(d.tree, d.sig) <= 2);
      CHECK(equalUpTo(evaluate(d.tree, d.sig, PropGraphAlgebra{}),
                      asMorphism({cliqueAdjacency(k), zeros(k, 0)})));
    }
  }
  SUBCASE("random graphs with dangling edges") {
    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t k = 2 + trial % 5;
      const DanglingGraph gamma{adjacencyFromEdges(k, randomSimpleGraph(rng, k, 0.5)),
                                randomNatMatrix(rng, k, trial % 3, 1)};
      const auto t = toInductiveRank(exactRankWidth(gamma.G).dec, gamma);
      const auto d = rTomdec(t);
      CHECK(equalUpTo(evaluate(d.tree, d.sig, PropGraphAlgebra{}), asMorphism(gamma)));
      CHECK(width(d.tree, d.sig) <= d.certified);
      if (d.attainsFieldRank && inductiveRankWidth(t) > 0)
        CHECK(width(d.tree, d.sig) <= 2 * inductiveRankWidth(t));
    }
  }
}

TEST_CASE("mTordec") {
  SUBCASE("leaf") {
    Signature<GraphWithBoundaries> sig;
    const GraphWithBoundaries g{cliqueAdjacency(3), m(3, 1, {1, 0, 1}), zeros(3, 0), zeros(0, 1),
                                zeros(0, 0)};
    sig.add("g", g, 3);
    const auto t = mTordec(DecompTree::leaf("g"), sig, g);
    CHECK(validateInductiveRank(t));
    CHECK(inductiveRankWidth(t) <= 3);
  }
  SUBCASE("tensor of two vertices") {
    Signature<GraphWithBoundaries> sig;
    sig.add("v", vertexOn(true), 1);
    const DecompTree d = DecompTree::tensor(DecompTree::leaf("v"), DecompTree::leaf("v"));
    const auto g = tensorBoundaries(vertexOn(true), vertexOn(true));
    const auto t = mTordec(d, sig, g);
    REQUIRE(validateInductiveRank(t));
    CHECK(t.root->children.size() == 2);
  }
  SUBCASE("one edge between two vertices") {
    Signature<GraphWithBoundaries> sig;
    sig.add("a", vertexOn(false), 1);
    sig.add("b", vertexOn(true), 1);
    const DecompTree d = DecompTree::compose(DecompTree::leaf("a"), DecompTree::leaf("b"), 1);
    const auto g = composeBoundaries(vertexOn(false), vertexOn(true));
    const auto t = mTordec(d, sig, g);
    REQUIRE(validateInductiveRank(t));
    CHECK(inductiveRankWidth(t) <= 2 * width(d, sig));
  }
  SUBCASE("a tree for another morphism is refused") {
    Signature<GraphWithBoundaries> sig;
    sig.add("v", vertexOn(true), 1);
    CHECK_THROWS_AS(mTordec(DecompTree::leaf("v"), sig, vertexOn(false)), NotDecomposable);
  }
  SUBCASE("sampled decompositions of random graphs") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = randomGraph(rng, 1 + trial % 5, trial % 3, (trial / 3) % 3);
      const auto d = randomPropGraphDecomposition(rng, g, 4);
      REQUIRE(equalUpTo(evaluate(d.tree, d.sig, PropGraphAlgebra{}), g));
      const auto t = mTordec(d.tree, d.sig, g);
      REQUIRE(validateInductiveRank(t));
      CHECK(adjEquivalent(t.graph.G, g.G));
      CHECK(t.graph.B == hcat(g.L, g.R));
      const std::size_t bound = 2 * std::max({width(d.tree, d.sig), rank(g.L), rank(g.R)});
      CHECK(inductiveRankWidth(t) <= bound);
    }
  }
}

TEST_CASE("inductive rank decompositions render to dot") {
  const auto t = caterpillarRank({cliqueAdjacency(3), zeros(3, 0)});
  const std::string dot = toDot(t, "k3");
  CHECK(dot.rfind("digraph k3 {", 0) == 0);
  CHECK(dot.find("->") != std::string::npos);
}
