#ifndef MONOWIDTH_BIALGEBRA_HPP
#define MONOWIDTH_BIALGEBRA_HPP

#include "monowidth/decomposition.hpp"
#include "monowidth/nat_matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace monowidth {

enum class Generator { cp, add, del, zero, swap, id };

inline constexpr std::array<Generator, 6> allGenerators{
    Generator::cp, Generator::add, Generator::del,
    Generator::zero, Generator::swap, Generator::id};

/// Stable atom ids: "cp", "add", "delete", "zero", "swap", "id".
std::string generatorId(Generator g);
NatMatrix generatorMatrix(Generator g);
/// max{inputs, outputs}
std::size_t generatorWeight(Generator g);

/// Natural-number matrices as a symmetric monoidal category: a morphism
/// n -> m is an m x n matrix, composition multiplies in diagrammatic order,
/// tensor is the direct sum.
struct BialgAlgebra {
  using Morphism = NatMatrix;

  std::size_t domain(const NatMatrix& f) const { return static_cast<std::size_t>(f.cols()); }
  std::size_t codomain(const NatMatrix& f) const { return static_cast<std::size_t>(f.rows()); }
  NatMatrix compose(const NatMatrix& f, const NatMatrix& g) const { return multiply(g, f); }
  NatMatrix tensor(const NatMatrix& f, const NatMatrix& g) const { return directSum(f, g); }
  bool equal(const NatMatrix& f, const NatMatrix& g) const {
    return f.rows() == g.rows() && f.cols() == g.cols() && f == g;
  }
  NatMatrix identity(std::size_t n) const { return monowidth::identity(n); }

  DecompTree identityTree(std::size_t n, Signature<NatMatrix>& sig) const;
  DecompTree swapTree(std::size_t a, std::size_t b, Signature<NatMatrix>& sig) const;
  DecompTree copyTree(std::size_t x, Signature<NatMatrix>& sig) const;
};

/// The six generators with their weights.
const Signature<NatMatrix>& bialgSignature();

/// Mirror image of a generator-level tree; it evaluates to the transpose.
DecompTree dual(const DecompTree& t);

/// Width <= 2 decomposition of the scalar [k].
DecompTree scalarDecomposition(const Nat& k);

/// Width <= min{m, n} + 1 decomposition of an m x n matrix.
DecompTree boundaryBoundedDecomposition(const NatMatrix& a);

struct MatrixDecomposition {
  DecompTree tree;
  std::size_t innerDim = 0;
  std::size_t fieldRank = 0;
  /// innerDim was proved minimal over the naturals
  bool exactOverNaturals = false;

  bool attainsFieldRank() const { return innerDim == fieldRank; }
};

/// Factor a through its smallest natural-number inner dimension r and
/// decompose both factors; width <= r + 1.
MatrixDecomposition rankBasedDecomposition(const NatMatrix& a,
                                           const FactorizationBudget& budget = {});

struct UpperBound {
  DecompTree tree;
  /// max rank of the blocks, raised to 2 when an entry exceeds 1; no
  /// decomposition can be narrower
  std::size_t lower = 0;
  /// max over blocks of the inner dimension used, plus one
  std::size_t certified = 0;
  bool attainsFieldRank = true;
};

/// Tensor of per-block rank-based decompositions.
UpperBound matrixMonoidalUpper(const NatMatrix& a,
                               const FactorizationBudget& budget = {});

enum class Side { left, right };

/// right: decomposition of f;(id (x) delete_k). left: of (id (x) zero_k);f.
/// The width does not grow. Throws std::out_of_range when k is too large.
DecompTree discardAbsorb(const DecompTree& d, Side side, std::size_t k);

/// Discards the outputs flagged in mask. nullopt stands for the identity on 0.
std::optional<DecompTree> discardOutputs(const DecompTree& d,
                                         const std::vector<bool>& mask);
/// Feeds zero into the inputs flagged in mask.
std::optional<DecompTree> zeroInputs(const DecompTree& d,
                                     const std::vector<bool>& mask);

struct Rewrite {
  DecompTree tree;
  bool rewritten = false;
};

/// Given a composition-rooted d of a and a nontrivial block split of a,
/// returns a tensor-rooted decomposition no wider than d. Otherwise d comes
/// back unchanged with rewritten = false.
Rewrite tensorPriorityRewrite(const DecompTree& d, const NatMatrix& a);

/// Evaluates a generator-level tree.
NatMatrix evaluateBialg(const DecompTree& t);
std::size_t widthBialg(const DecompTree& t);

}  // namespace monowidth

#endif
