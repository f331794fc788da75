#include <doctest.h>

#include "monowidth/bialgebra.hpp"
#include "oracles.hpp"

using namespace monowidth;

namespace {
const DecompTree idLeaf = DecompTree::leaf("id");
}

TEST_CASE("generator matrices and weights") {
  CHECK(generatorMatrix(Generator::id) == fromRows(1, 1, {1}));
  CHECK(generatorMatrix(Generator::cp) == fromRows(2, 1, {1, 1}));
  CHECK(generatorMatrix(Generator::add) == fromRows(1, 2, {1, 1}));
  CHECK(generatorMatrix(Generator::swap) == fromRows(2, 2, {0, 1, 1, 0}));
  CHECK(generatorMatrix(Generator::del).rows() == 0);
  CHECK(generatorMatrix(Generator::del).cols() == 1);
  CHECK(generatorMatrix(Generator::zero).rows() == 1);
  CHECK(generatorMatrix(Generator::zero).cols() == 0);
  CHECK(generatorWeight(Generator::cp) == 2);
  CHECK(generatorWeight(Generator::add) == 2);
  CHECK(generatorWeight(Generator::swap) == 2);
  CHECK(generatorWeight(Generator::del) == 1);
  CHECK(generatorWeight(Generator::zero) == 1);
  CHECK(generatorWeight(Generator::id) == 1);
  // composition orientation: cp then add is the scalar 2
  CHECK(evaluateBialg(DecompTree::compose(DecompTree::leaf("cp"), DecompTree::leaf("add"), 2)) ==
        fromRows(1, 1, {2}));
}

TEST_CASE("scalarDecomposition") {
  const DecompTree zero = scalarDecomposition(0);
  CHECK(zero == DecompTree::compose(DecompTree::leaf("delete"), DecompTree::leaf("zero"), 0));
  CHECK(widthBialg(zero) == 1);
  CHECK(evaluateBialg(zero) == fromRows(1, 1, {0}));
  CHECK(scalarDecomposition(1) == idLeaf);
  CHECK(widthBialg(scalarDecomposition(3)) == 2);
  CHECK(evaluateBialg(scalarDecomposition(3)) == fromRows(1, 1, {3}));
  for (int k = 0; k <= 200; ++k) {
    const DecompTree t = scalarDecomposition(k);
    CHECK(widthBialg(t) <= 2);
    CHECK(evaluateBialg(t)(0, 0) == k);
  }
  const Nat big("98765432109876543210987654321");
  CHECK(evaluateBialg(scalarDecomposition(big))(0, 0) == big);
}

TEST_CASE("boundaryBoundedDecomposition examples") {
  const DecompTree z = boundaryBoundedDecomposition(zeros(3, 0));
  CHECK(widthBialg(z) == 1);
  CHECK(evaluateBialg(z) == zeros(3, 0));
  CHECK(boundaryBoundedDecomposition(fromRows(1, 1, {5})) == scalarDecomposition(5));
  const NatMatrix a = fromRows(3, 2, {1, 2, 0, 1, 2, 2});
  const DecompTree t = boundaryBoundedDecomposition(a);
  CHECK(widthBialg(t) <= 3);
  CHECK(evaluateBialg(t) == a);
}

TEST_CASE("boundaryBoundedDecomposition property") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> dim(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const NatMatrix a = oracle::randomMatrix(rng, m, n, 3);
    const DecompTree t = boundaryBoundedDecomposition(a);
    CHECK(evaluateBialg(t) == a);
    CHECK(widthBialg(t) <= std::min(m, n) + 1);
  }
}

TEST_CASE("dual evaluates to the transpose") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const NatMatrix a = oracle::randomMatrix(rng, 1 + trial % 4, 1 + trial % 3, 2);
    const DecompTree t = boundaryBoundedDecomposition(a);
    CHECK(evaluateBialg(dual(t)) == transpose(a));
    CHECK(widthBialg(dual(t)) == widthBialg(t));
  }
}

TEST_CASE("rankBasedDecomposition") {
  auto r = rankBasedDecomposition(identity(2));
  CHECK(widthBialg(r.tree) <= 3);
  CHECK(evaluateBialg(r.tree) == identity(2));

  r = rankBasedDecomposition(NatMatrix::Ones(2, 2));
  REQUIRE(r.tree.kind == DecompTree::Kind::compose);
  CHECK(r.tree.cut == 1);
  CHECK(widthBialg(r.tree) <= 2);
  CHECK(evaluateBialg(r.tree) == NatMatrix::Ones(2, 2));

  r = rankBasedDecomposition(zeros(2, 2));
  CHECK(r.innerDim == 0);
  CHECK(widthBialg(r.tree) == 1);
  CHECK(evaluateBialg(r.tree) == zeros(2, 2));
}

TEST_CASE("rankBasedDecomposition property") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const NatMatrix a = oracle::randomMatrix(rng, dim(rng), dim(rng), 2);
    const auto r = rankBasedDecomposition(a);
    CHECK(evaluateBialg(r.tree) == a);
    CHECK(widthBialg(r.tree) <= r.innerDim + 1);
    CHECK(r.innerDim >= r.fieldRank);
  }
}

TEST_CASE("matrixMonoidalUpper") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto u = matrixMonoidalUpper(identity(n));
    CHECK(widthBialg(u.tree) == 1);
    CHECK(u.lower == 1);
    CHECK(evaluateBialg(u.tree) == identity(n));

    const NatMatrix twice = identity(n) * Nat(2);
    u = matrixMonoidalUpper(twice);
    CHECK(widthBialg(u.tree) == 2);
    CHECK(u.lower == 2);
    CHECK(evaluateBialg(u.tree) == twice);
  }
  const NatMatrix a = directSum(NatMatrix::Ones(2, 2), fromRows(1, 1, {3}));
  const auto u = matrixMonoidalUpper(a);
  CHECK(widthBialg(u.tree) <= 2);
  CHECK(u.lower == 2);
  CHECK(evaluateBialg(u.tree) == a);
}

TEST_CASE("matrixMonoidalUpper property") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> dim(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const NatMatrix a = oracle::randomMatrix(rng, dim(rng), dim(rng), trial % 2 ? 1 : 2);
    const auto u = matrixMonoidalUpper(a);
    CHECK(evaluateBialg(u.tree) == a);
    CHECK(widthBialg(u.tree) <= u.certified);
    if (u.attainsFieldRank) CHECK(widthBialg(u.tree) <= u.lower + 1);
  }
}

TEST_CASE("discardAbsorb") {
  const DecompTree cp = DecompTree::leaf("cp");
  const DecompTree r = discardAbsorb(cp, Side::right, 1);
  CHECK(evaluateBialg(r) == identity(1));
  CHECK(widthBialg(r) <= 2);
  CHECK(discardAbsorb(cp, Side::right, 0) == cp);
  CHECK_THROWS_AS(discardAbsorb(cp, Side::right, 3), std::out_of_range);
  CHECK_THROWS_AS(discardAbsorb(cp, Side::left, 2), std::out_of_range);

  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng), mid = dim(rng);
    const NatMatrix g = oracle::randomMatrix(rng, mid, n, 2);
    const NatMatrix h = oracle::randomMatrix(rng, m, mid, 2);
    const DecompTree d = DecompTree::compose(boundaryBoundedDecomposition(g),
                                             boundaryBoundedDecomposition(h), mid);
    const NatMatrix f = multiply(h, g);
    std::uniform_int_distribution<std::size_t> kr(0, m), kl(0, n);
    const std::size_t k1 = kr(rng), k2 = kl(rng);
    const DecompTree right = discardAbsorb(d, Side::right, k1);
    CHECK(widthBialg(right) <= widthBialg(d));
    CHECK(evaluateBialg(right) == f.topRows(m - k1).eval());
    const DecompTree left = discardAbsorb(d, Side::left, k2);
    CHECK(widthBialg(left) <= widthBialg(d));
    CHECK(evaluateBialg(left) == f.leftCols(n - k2).eval());
  }
}

TEST_CASE("discard absorption over every generator") {
  for (Generator g : allGenerators) {
    const DecompTree t = DecompTree::leaf(generatorId(g));
    const NatMatrix a = generatorMatrix(g);
    for (Eigen::Index k = 0; k <= a.rows(); ++k) {
      const DecompTree r = discardAbsorb(t, Side::right, k);
      CHECK(widthBialg(r) <= std::max<std::size_t>(generatorWeight(g), 1));
      CHECK(evaluateBialg(r) == a.topRows(a.rows() - k).eval());
    }
    for (Eigen::Index k = 0; k <= a.cols(); ++k) {
      const DecompTree r = discardAbsorb(t, Side::left, k);
      CHECK(widthBialg(r) <= std::max<std::size_t>(generatorWeight(g), 1));
      CHECK(evaluateBialg(r) == a.leftCols(a.cols() - k).eval());
    }
  }
}

TEST_CASE("tensorPriorityRewrite") {
  const DecompTree twoIds = DecompTree::tensor(idLeaf, idLeaf);
  const DecompTree d = DecompTree::compose(twoIds, twoIds, 2);
  auto r = tensorPriorityRewrite(d, identity(2));
  CHECK(r.rewritten);
  CHECK(r.tree == twoIds);
  CHECK(widthBialg(r.tree) == 1);

  const NatMatrix coupled = NatMatrix::Ones(2, 2);
  const DecompTree dc = rankBasedDecomposition(coupled).tree;
  r = tensorPriorityRewrite(dc, coupled);
  CHECK_FALSE(r.rewritten);
  CHECK(r.tree == dc);

  const NatMatrix d01 = fromRows(2, 2, {0, 0, 0, 1});
  const DecompTree dd = DecompTree::compose(boundaryBoundedDecomposition(d01), twoIds, 2);
  r = tensorPriorityRewrite(dd, d01);
  CHECK(r.rewritten);
  CHECK(r.tree.kind == DecompTree::Kind::tensor);
  CHECK(widthBialg(r.tree) <= widthBialg(dd));
  CHECK(evaluateBialg(r.tree) == d01);
}

TEST_CASE("tensorPriorityRewrite property") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> dim(1, 3);
  int rewritten = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const NatMatrix a = directSum(oracle::randomMatrix(rng, dim(rng), dim(rng), 2),
                                 oracle::randomMatrix(rng, dim(rng), dim(rng), 2));
    const auto f = natRankFactorize(a);
    const DecompTree d = DecompTree::compose(boundaryBoundedDecomposition(f.right),
                                             boundaryBoundedDecomposition(f.left), f.innerDim);
    const auto r = tensorPriorityRewrite(d, a);
    CHECK(evaluateBialg(r.tree) == a);
    CHECK(widthBialg(r.tree) <= widthBialg(d));
    if (r.rewritten) {
      CHECK(r.tree.kind == DecompTree::Kind::tensor);
      ++rewritten;
    }
  }
  CHECK(rewritten > 100);
}

TEST_CASE("composition cuts of a coupled matrix are at least its rank") {
  // exhaustive over natural factors with entries <= 2 through k < rank
  std::mt19937_64 rng(61);
  int checked = 0;
  while (checked < 30) {
    const NatMatrix a = oracle::randomMatrix(rng, 2, 2, 2);
    if (blockSplit(a).size() != 1) continue;
    const std::size_t r = rank(a);
    ++checked;
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t cells = 4 * k;
      std::size_t total = 1;
      for (std::size_t i = 0; i < cells; ++i) total *= 3;
      bool found = false;
      for (std::size_t code = 0; code < total && !found; ++code) {
        std::vector<std::int64_t> g(2 * k), h(2 * k);
        std::size_t c = code;
        for (auto& x : g) { x = static_cast<std::int64_t>(c % 3); c /= 3; }
        for (auto& x : h) { x = static_cast<std::int64_t>(c % 3); c /= 3; }
        found = multiply(fromRows(2, k, h), fromRows(k, 2, g)) == a;
      }
      CHECK_FALSE(found);
    }
  }
}
