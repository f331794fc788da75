#ifndef MONOWIDTH_DECOMPOSITION_HPP
#define MONOWIDTH_DECOMPOSITION_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monowidth {

class UnknownAtom : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Raised when a composite does not typecheck: the cut object disagrees with
/// the codomain of the left part or the domain of the right part.
class TypeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotDecomposable : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Binary tree with atom leaves, tensor nodes and composition nodes that carry
/// the object they are cut along. Objects are natural numbers throughout.
struct DecompTree {
  enum class Kind { leaf, tensor, compose };

  Kind kind = Kind::leaf;
  std::string atom;
  std::size_t cut = 0;
  std::vector<DecompTree> children;

  static DecompTree leaf(std::string id) {
    DecompTree t;
    t.atom = std::move(id);
    return t;
  }
  static DecompTree tensor(DecompTree l, DecompTree r) {
    DecompTree t;
    t.kind = Kind::tensor;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
  }
  static DecompTree compose(DecompTree l, DecompTree r, std::size_t cut) {
    DecompTree t;
    t.kind = Kind::compose;
    t.cut = cut;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
  }

  bool isLeaf() const { return kind == Kind::leaf; }
  const DecompTree& left() const { return children.at(0); }
  const DecompTree& right() const { return children.at(1); }

  friend bool operator==(const DecompTree&, const DecompTree&) = default;
};

std::size_t nodeCount(const DecompTree& t);
std::size_t depth(const DecompTree& t);

template <class M>
struct Atom {
  M morphism;
  std::size_t weight = 0;
};

/// Atom table plus object weights.
template <class M>
class Signature {
public:
  Signature() : objectWeight_([](std::size_t n) { return n; }) {}
  explicit Signature(std::function<std::size_t(std::size_t)> objectWeight)
      : objectWeight_(std::move(objectWeight)) {}

  void add(const std::string& id, M morphism, std::size_t weight) {
    atoms_.insert_or_assign(id, Atom<M>{std::move(morphism), weight});
  }
  bool contains(const std::string& id) const { return atoms_.count(id) != 0; }
  const Atom<M>& at(const std::string& id) const {
    auto it = atoms_.find(id);
    if (it == atoms_.end()) throw UnknownAtom("unknown atom '" + id + "'");
    return it->second;
  }
  std::size_t objectWeight(std::size_t x) const { return objectWeight_(x); }
  const std::map<std::string, Atom<M>>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

private:
  std::map<std::string, Atom<M>> atoms_;
  std::function<std::size_t(std::size_t)> objectWeight_;
};

template <class A>
concept MonoidalAlgebra = requires(const A& alg, const typename A::Morphism& f,
                                   std::size_t n) {
  { alg.domain(f) } -> std::convertible_to<std::size_t>;
  { alg.codomain(f) } -> std::convertible_to<std::size_t>;
  { alg.compose(f, f) } -> std::same_as<typename A::Morphism>;
  { alg.tensor(f, f) } -> std::same_as<typename A::Morphism>;
  { alg.equal(f, f) } -> std::convertible_to<bool>;
  { alg.identity(n) } -> std::same_as<typename A::Morphism>;
};

/// Algebras whose objects carry coherent copying. The trees returned may
/// register new atoms in the signature.
template <class A>
concept CopyStructure =
    MonoidalAlgebra<A> &&
    requires(const A& alg, Signature<typename A::Morphism>& sig, std::size_t n) {
      { alg.identityTree(n, sig) } -> std::same_as<DecompTree>;
      { alg.swapTree(n, n, sig) } -> std::same_as<DecompTree>;
      { alg.copyTree(n, sig) } -> std::same_as<DecompTree>;
    };

template <class M>
std::size_t width(const DecompTree& t, const Signature<M>& sig) {
  switch (t.kind) {
    case DecompTree::Kind::leaf:
      return sig.at(t.atom).weight;
    case DecompTree::Kind::tensor:
      return std::max(width(t.left(), sig), width(t.right(), sig));
    case DecompTree::Kind::compose:
      return std::max({width(t.left(), sig), sig.objectWeight(t.cut),
                       width(t.right(), sig)});
  }
  return 0;
}

struct Boundary {
  std::size_t domain = 0;
  std::size_t codomain = 0;
};

/// Domain and codomain of the morphism a tree denotes, checked without
/// evaluating anything but the atoms' types.
template <MonoidalAlgebra A>
Boundary typeOf(const DecompTree& t, const Signature<typename A::Morphism>& sig,
                const A& alg) {
  switch (t.kind) {
    case DecompTree::Kind::leaf: {
      const auto& f = sig.at(t.atom).morphism;
      return {alg.domain(f), alg.codomain(f)};
    }
    case DecompTree::Kind::tensor: {
      auto l = typeOf(t.left(), sig, alg), r = typeOf(t.right(), sig, alg);
      return {l.domain + r.domain, l.codomain + r.codomain};
    }
    case DecompTree::Kind::compose: {
      auto l = typeOf(t.left(), sig, alg), r = typeOf(t.right(), sig, alg);
      if (l.codomain != t.cut || r.domain != t.cut)
        throw TypeMismatch("composition cut along " + std::to_string(t.cut) +
                           " but left codomain is " + std::to_string(l.codomain) +
                           " and right domain is " + std::to_string(r.domain));
      return {l.domain, r.codomain};
    }
  }
  return {};
}

template <MonoidalAlgebra A>
typename A::Morphism evaluate(const DecompTree& t,
                              const Signature<typename A::Morphism>& sig,
                              const A& alg) {
  switch (t.kind) {
    case DecompTree::Kind::leaf:
      return sig.at(t.atom).morphism;
    case DecompTree::Kind::tensor:
      return alg.tensor(evaluate(t.left(), sig, alg), evaluate(t.right(), sig, alg));
    case DecompTree::Kind::compose: {
      auto l = evaluate(t.left(), sig, alg);
      auto r = evaluate(t.right(), sig, alg);
      if (alg.codomain(l) != t.cut || alg.domain(r) != t.cut)
        throw TypeMismatch("composition cut along " + std::to_string(t.cut) +
                           " but left codomain is " +
                           std::to_string(alg.codomain(l)) +
                           " and right domain is " + std::to_string(alg.domain(r)));
      return alg.compose(l, r);
    }
  }
  throw std::logic_error("unreachable");
}

/// True when the tree typechecks and evaluates to f.
template <MonoidalAlgebra A>
bool validate(const DecompTree& t, const Signature<typename A::Morphism>& sig,
              const A& alg, const typename A::Morphism& f) {
  try {
    return alg.equal(evaluate(t, sig, alg), f);
  } catch (const TypeMismatch&) {
    return false;
  }
}

template <CopyStructure A>
DecompTree tensorIdentityRight(DecompTree t, std::size_t n,
                               Signature<typename A::Morphism>& sig, const A& alg) {
  if (n == 0) return t;
  return DecompTree::tensor(std::move(t), alg.identityTree(n, sig));
}

template <CopyStructure A>
DecompTree tensorIdentityLeft(std::size_t n, DecompTree t,
                              Signature<typename A::Morphism>& sig, const A& alg) {
  if (n == 0) return t;
  return DecompTree::tensor(alg.identityTree(n, sig), std::move(t));
}

namespace detail {

template <CopyStructure A>
DecompTree copyStep(const DecompTree& d, std::size_t y,
                    const std::vector<std::size_t>& xs, std::size_t k,
                    std::size_t z, Signature<typename A::Morphism>& sig,
                    const A& alg) {
  if (k == 0) return d;
  const std::size_t x = xs[k - 1];
  const std::size_t before =
      y + std::accumulate(xs.begin(), xs.begin() + static_cast<long>(k - 1),
                          std::size_t{0});
  // copy the last wire group and move the copy past z
  DecompTree fan = alg.copyTree(x, sig);
  if (z > 0)
    fan = DecompTree::compose(
        DecompTree::tensor(std::move(fan), alg.identityTree(z, sig)),
        DecompTree::tensor(alg.identityTree(x, sig), alg.swapTree(x, z, sig)),
        2 * x + z);
  DecompTree stage = tensorIdentityLeft(before, std::move(fan), sig, alg);
  DecompTree rest = copyStep(d, y, xs, k - 1, x + z, sig, alg);
  return DecompTree::compose(std::move(stage),
                             tensorIdentityRight(std::move(rest), x, sig, alg),
                             before + 2 * x + z);
}

}  // namespace detail

/// Given d decomposing f : y (x) xs (x) z -> w, decomposes
/// (id_y (x) cp_xs (x) id_z) ; (id (x) swap_{xs,z}) ; (f (x) id_xs)
/// so that its width stays within
/// max{width(d), w(y) + w(z) + (|xs| + 1) * max w(xs)}.
template <CopyStructure A>
DecompTree copyDecompose(const DecompTree& d, std::size_t y,
                         const std::vector<std::size_t>& xs, std::size_t z,
                         Signature<typename A::Morphism>& sig, const A& alg) {
  const std::size_t total = y + z + std::accumulate(xs.begin(), xs.end(), std::size_t{0});
  const auto b = typeOf(d, sig, alg);
  if (b.domain != total)
    throw TypeMismatch("copyDecompose: tree has domain " + std::to_string(b.domain) +
                       ", expected " + std::to_string(total));
  return detail::copyStep(d, y, xs, xs.size(), z, sig, alg);
}

/// Graphviz rendering; composition nodes show their cut.
std::string toDot(const DecompTree& t, const std::string& name = "decomposition");

}  // namespace monowidth

#endif
