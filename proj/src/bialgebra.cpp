#include "monowidth/bialgebra.hpp"

#include <stdexcept>

namespace monowidth {

namespace {

DecompTree leaf(Generator g) { return DecompTree::leaf(generatorId(g)); }

// identity on 0 as a tree: zero followed by delete
DecompTree emptyIdentity() {
  return DecompTree::compose(leaf(Generator::zero), leaf(Generator::del), 1);
}

DecompTree tensorAll(std::vector<DecompTree> parts) {
  if (parts.empty()) return emptyIdentity();
  DecompTree t = std::move(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    t = DecompTree::tensor(std::move(parts[i]), std::move(t));
  return t;
}

DecompTree repeated(Generator g, std::size_t n) {
  return tensorAll(std::vector<DecompTree>(n, leaf(g)));
}

std::optional<DecompTree> tensorOpt(std::optional<DecompTree> a,
                                    std::optional<DecompTree> b) {
  if (!a) return b;
  if (!b) return a;
  return DecompTree::tensor(std::move(*a), std::move(*b));
}

std::optional<DecompTree> discardLeaf(const std::string& id,
                                      const std::vector<bool>& mask) {
  const DecompTree del = leaf(Generator::del);
  const DecompTree idw = leaf(Generator::id);
  if (id == "id") return del;
  if (id == "cp") return (mask[0] && mask[1]) ? del : idw;
  if (id == "add") return DecompTree::tensor(del, del);
  if (id == "swap") {
    // outputs are (second input, first input)
    if (mask[0] && mask[1]) return DecompTree::tensor(del, del);
    if (mask[0]) return DecompTree::tensor(idw, del);
    return DecompTree::tensor(del, idw);
  }
  if (id == "zero") return std::nullopt;
  throw UnknownAtom("discardOutputs: '" + id + "' is not a generator with outputs");
}

std::optional<DecompTree> discardRec(const DecompTree& d,
                                     const std::vector<bool>& mask) {
  bool any = false;
  for (bool b : mask) any = any || b;
  if (!any) return d;
  const auto& sig = bialgSignature();
  const BialgAlgebra alg;
  switch (d.kind) {
    case DecompTree::Kind::leaf:
      return discardLeaf(d.atom, mask);
    case DecompTree::Kind::compose: {
      auto right = discardRec(d.right(), mask);
      if (!right) return d.left();
      return DecompTree::compose(d.left(), std::move(*right), d.cut);
    }
    case DecompTree::Kind::tensor: {
      const std::size_t m1 = typeOf(d.left(), sig, alg).codomain;
      std::vector<bool> m1mask(mask.begin(), mask.begin() + static_cast<long>(m1));
      std::vector<bool> m2mask(mask.begin() + static_cast<long>(m1), mask.end());
      return tensorOpt(discardRec(d.left(), m1mask), discardRec(d.right(), m2mask));
    }
  }
  return d;
}

}  // namespace

std::string generatorId(Generator g) {
  switch (g) {
    case Generator::cp: return "cp";
    case Generator::add: return "add";
    case Generator::del: return "delete";
    case Generator::zero: return "zero";
    case Generator::swap: return "swap";
    case Generator::id: return "id";
  }
  return "";
}

NatMatrix generatorMatrix(Generator g) {
  switch (g) {
    case Generator::cp: return fromRows(2, 1, {1, 1});
    case Generator::add: return fromRows(1, 2, {1, 1});
    case Generator::del: return zeros(0, 1);
    case Generator::zero: return zeros(1, 0);
    case Generator::swap: return fromRows(2, 2, {0, 1, 1, 0});
    case Generator::id: return identity(1);
  }
  return {};
}

std::size_t generatorWeight(Generator g) {
  const NatMatrix a = generatorMatrix(g);
  return static_cast<std::size_t>(std::max(a.rows(), a.cols()));
}

const Signature<NatMatrix>& bialgSignature() {
  static const Signature<NatMatrix> sig = [] {
    Signature<NatMatrix> s;
    for (Generator g : allGenerators)
      s.add(generatorId(g), generatorMatrix(g), generatorWeight(g));
    return s;
  }();
  return sig;
}

DecompTree BialgAlgebra::identityTree(std::size_t n, Signature<NatMatrix>&) const {
  if (n == 0) return emptyIdentity();
  return repeated(Generator::id, n);
}

DecompTree BialgAlgebra::swapTree(std::size_t a, std::size_t b,
                                  Signature<NatMatrix>& sig) const {
  if (a == 0 || b == 0) return identityTree(a + b, sig);
  if (a == 1 && b == 1) return leaf(Generator::swap);
  if (a == 1) {
    // move the single wire past b wires one crossing at a time
    DecompTree t = tensorIdentityRight(leaf(Generator::swap), b - 1, sig, *this);
    for (std::size_t i = 1; i < b; ++i) {
      DecompTree step = tensorIdentityRight(
          tensorIdentityLeft(i, leaf(Generator::swap), sig, *this), b - 1 - i, sig,
          *this);
      t = DecompTree::compose(std::move(t), std::move(step), b + 1);
    }
    return t;
  }
  DecompTree first = tensorIdentityLeft(a - 1, swapTree(1, b, sig), sig, *this);
  DecompTree rest = tensorIdentityRight(swapTree(a - 1, b, sig), 1, sig, *this);
  return DecompTree::compose(std::move(first), std::move(rest), a + b);
}

DecompTree BialgAlgebra::copyTree(std::size_t x, Signature<NatMatrix>& sig) const {
  if (x == 1) return leaf(Generator::cp);
  if (x == 0) return identityTree(0, sig);
  return copyDecompose(identityTree(x, sig), 0, std::vector<std::size_t>(x, 1), 0,
                       sig, *this);
}

DecompTree dual(const DecompTree& t) {
  switch (t.kind) {
    case DecompTree::Kind::leaf: {
      if (t.atom == "cp") return leaf(Generator::add);
      if (t.atom == "add") return leaf(Generator::cp);
      if (t.atom == "delete") return leaf(Generator::zero);
      if (t.atom == "zero") return leaf(Generator::del);
      if (t.atom == "swap" || t.atom == "id") return t;
      throw UnknownAtom("dual: '" + t.atom + "' is not a generator");
    }
    case DecompTree::Kind::tensor:
      return DecompTree::tensor(dual(t.left()), dual(t.right()));
    case DecompTree::Kind::compose:
      return DecompTree::compose(dual(t.right()), dual(t.left()), t.cut);
  }
  return t;
}

DecompTree scalarDecomposition(const Nat& k) {
  if (k < 0) throw NegativeEntry("scalarDecomposition: negative scalar");
  if (k == 0) return DecompTree::compose(leaf(Generator::del), leaf(Generator::zero), 0);
  if (k == 1) return leaf(Generator::id);
  // [2j] = [j];cp;add and [j+1] = cp;([j] (x) id);add
  if (k % 2 == 0)
    return DecompTree::compose(
        scalarDecomposition(k / 2),
        DecompTree::compose(leaf(Generator::cp), leaf(Generator::add), 2), 1);
  return DecompTree::compose(
      leaf(Generator::cp),
      DecompTree::compose(
          DecompTree::tensor(scalarDecomposition(k - 1), leaf(Generator::id)),
          leaf(Generator::add), 2),
      2);
}

DecompTree boundaryBoundedDecomposition(const NatMatrix& a) {
  requireNatural(a);
  const std::size_t m = static_cast<std::size_t>(a.rows());
  const std::size_t n = static_cast<std::size_t>(a.cols());
  if (m == 0 && n == 0) return emptyIdentity();
  if (n == 0) return repeated(Generator::zero, m);
  if (m == 0) return repeated(Generator::del, n);
  if (m == 1 && n == 1) return scalarDecomposition(a(0, 0));
  if (m < n) return dual(boundaryBoundedDecomposition(transpose(a)));

  // n <= m: copy the inputs, compute the first output from one copy and
  // the remaining m-1 outputs from the other
  Signature<NatMatrix> sig = bialgSignature();
  const BialgAlgebra alg;
  const NatMatrix first = a.topRows(1);
  const NatMatrix rest = a.bottomRows(a.rows() - 1);
  DecompTree fan = copyDecompose(boundaryBoundedDecomposition(first), 0,
                                 std::vector<std::size_t>(n, 1), 0, sig, alg);
  DecompTree tail =
      DecompTree::tensor(leaf(Generator::id), boundaryBoundedDecomposition(rest));
  return DecompTree::compose(std::move(fan), std::move(tail), n + 1);
}

MatrixDecomposition rankBasedDecomposition(const NatMatrix& a,
                                           const FactorizationBudget& budget) {
  const RankFactorization f = natRankFactorize(a, budget);
  MatrixDecomposition out;
  out.innerDim = f.innerDim;
  out.fieldRank = f.fieldRank;
  out.exactOverNaturals = f.exactOverNaturals;
  const std::size_t smaller = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  if (f.innerDim >= smaller && smaller > 0) {
    // cutting through min{m,n} gains nothing over the direct recursion
    out.tree = boundaryBoundedDecomposition(a);
    return out;
  }
  out.tree = DecompTree::compose(boundaryBoundedDecomposition(f.right),
                                 boundaryBoundedDecomposition(f.left), f.innerDim);
  return out;
}

UpperBound matrixMonoidalUpper(const NatMatrix& a, const FactorizationBudget& budget) {
  UpperBound out;
  std::vector<DecompTree> parts;
  std::size_t certified = 1;
  for (const Block& b : blockSplit(a)) {
    if (b.value.rows() == 0 || b.value.cols() == 0) {
      parts.push_back(boundaryBoundedDecomposition(b.value));
      continue;
    }
    MatrixDecomposition md = rankBasedDecomposition(b.value, budget);
    out.lower = std::max(out.lower, md.fieldRank);
    // width-1 trees only build 0/1 matrices: their atoms are id, delete and
    // zero, and products through at most one wire keep entries in {0,1}
    if (maxEntry(b.value) >= 2) out.lower = std::max<std::size_t>(out.lower, 2);
    certified = std::max(certified, md.innerDim + 1);
    out.attainsFieldRank = out.attainsFieldRank && md.attainsFieldRank();
    parts.push_back(std::move(md.tree));
  }
  out.certified = certified;
  out.tree = tensorAll(std::move(parts));
  return out;
}

std::optional<DecompTree> discardOutputs(const DecompTree& d,
                                         const std::vector<bool>& mask) {
  const auto b = typeOf(d, bialgSignature(), BialgAlgebra{});
  if (mask.size() != b.codomain)
    throw std::out_of_range("discardOutputs: mask has " + std::to_string(mask.size()) +
                            " entries for " + std::to_string(b.codomain) + " outputs");
  return discardRec(d, mask);
}

std::optional<DecompTree> zeroInputs(const DecompTree& d, const std::vector<bool>& mask) {
  auto r = discardOutputs(dual(d), mask);
  if (!r) return r;
  return dual(*r);
}

DecompTree discardAbsorb(const DecompTree& d, Side side, std::size_t k) {
  const auto b = typeOf(d, bialgSignature(), BialgAlgebra{});
  const std::size_t arity = side == Side::right ? b.codomain : b.domain;
  if (k > arity)
    throw std::out_of_range("discardAbsorb: k = " + std::to_string(k) + " exceeds " +
                            std::to_string(arity));
  std::vector<bool> mask(arity, false);
  for (std::size_t i = arity - k; i < arity; ++i) mask[i] = true;
  auto r = side == Side::right ? discardOutputs(d, mask) : zeroInputs(d, mask);
  return r ? *r : emptyIdentity();
}

Rewrite tensorPriorityRewrite(const DecompTree& d, const NatMatrix& a) {
  if (d.kind != DecompTree::Kind::compose)
    throw std::invalid_argument("tensorPriorityRewrite: tree is not composition-rooted");
  if (!validate(d, bialgSignature(), BialgAlgebra{}, a))
    throw std::invalid_argument("tensorPriorityRewrite: tree does not evaluate to " +
                                toString(a));
  const auto blocks = blockSplit(a);
  if (blocks.size() < 2) return {d, false};

  const std::size_t budget = widthBialg(d);
  const std::size_t m = static_cast<std::size_t>(a.rows());
  const std::size_t n = static_cast<std::size_t>(a.cols());
  std::vector<DecompTree> parts;
  for (const Block& b : blocks) {
    if (b.value.rows() == 0 || b.value.cols() == 0) {
      parts.push_back(boundaryBoundedDecomposition(b.value));
      continue;
    }
    DecompTree t = rankBasedDecomposition(b.value).tree;
    if (widthBialg(t) > budget) {
      // restrict d to this block by zeroing the other inputs and
      // discarding the other outputs
      std::vector<bool> cols(n, true), rows(m, true);
      for (Eigen::Index j = 0; j < b.value.cols(); ++j) cols[b.colOffset + j] = false;
      for (Eigen::Index i = 0; i < b.value.rows(); ++i) rows[b.rowOffset + i] = false;
      auto front = zeroInputs(d.left(), cols);
      auto back = discardOutputs(d.right(), rows);
      t = DecompTree::compose(*front, *back, d.cut);
    }
    parts.push_back(std::move(t));
  }
  return {tensorAll(std::move(parts)), true};
}

NatMatrix evaluateBialg(const DecompTree& t) {
  return evaluate(t, bialgSignature(), BialgAlgebra{});
}

std::size_t widthBialg(const DecompTree& t) { return width(t, bialgSignature()); }

}  // namespace monowidth
