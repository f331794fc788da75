#include "monowidth/random_instances.hpp"

#include <algorithm>
#include <string>
#include <functional>
#include <numeric>
#include <optional>

namespace monowidth {

NatMatrix randomNatMatrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t maxEntry) {
  std::uniform_int_distribution<std::int64_t> d(0, maxEntry);
  std::vector<std::int64_t> flat(rows * cols);
  for (auto& x : flat) x = d(rng);
  return fromRows(rows, cols, flat);
}

Hypergraph randomHypergraph(Rng& rng, std::size_t vertices, std::size_t edges,
                            std::size_t maxArity) {
  Hypergraph g;
  g.vertices = vertices;
  if (vertices == 0) return g;
  std::uniform_int_distribution<std::size_t> arity(1, std::max<std::size_t>(
                                                          1, std::min(maxArity, vertices)));
  std::vector<std::size_t> all(vertices);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t e = 0; e < edges; ++e) {
    std::shuffle(all.begin(), all.end(), rng);
    g.addEdge({all.begin(), all.begin() + static_cast<long>(arity(rng))});
  }
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> randomSimpleGraph(Rng& rng,
                                                                    std::size_t vertices,
                                                                    double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = u + 1; v < vertices; ++v)
      if (coin(rng)) out.emplace_back(u, v);
  return out;
}

CospanHG randomCospan(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t maxArity,
                      std::size_t left, std::size_t right) {
  CospanHG c;
  c.apex = randomHypergraph(rng, vertices, edges, maxArity);
  if (vertices == 0) return c;
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  for (std::size_t i = 0; i < left; ++i) c.left.push_back(pick(rng));
  for (std::size_t i = 0; i < right; ++i) c.right.push_back(pick(rng));
  return c;
}

CospanHG relabel(Rng& rng, const CospanHG& c) {
  std::vector<std::size_t> p(c.apex.vertices);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  CospanHG out;
  out.apex.vertices = c.apex.vertices;
  for (const auto& e : c.apex.edges) {
    std::vector<std::size_t> ends;
    for (auto v : e) ends.push_back(p[v]);
    out.apex.addEdge(std::move(ends));
  }
  for (auto v : c.left) out.left.push_back(p[v]);
  for (auto v : c.right) out.right.push_back(p[v]);
  return out;
}

namespace {

class CospanSampler {
public:
  CospanSampler(Rng& rng, CospanDecomposition& out) : rng_(rng), out_(out) {}

  DecompTree build(const CospanHG& h, std::size_t depth) {
    std::bernoulli_distribution stop(0.2), tensorFirst(0.5);
    if (depth == 0 || h.apex.edges.empty() || stop(rng_)) return leaf(h);
    if (tensorFirst(rng_))
      if (auto t = tensorSplit(h, depth)) return *t;
    return composeSplit(h, depth);
  }

private:
  DecompTree leaf(const CospanHG& h) { return cospanLeaf("h" + std::to_string(next_++), h, out_.atoms); }

  static std::vector<std::size_t> positions(const std::vector<std::size_t>& sorted,
                                            const std::vector<std::size_t>& vs) {
    std::vector<std::size_t> out;
    for (auto v : vs)
      out.push_back(static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
    return out;
  }

  DecompTree composeSplit(const CospanHG& h, std::size_t depth) {
    const std::size_t n = h.apex.vertices;
    std::bernoulli_distribution coin(0.5), extra(0.2);
    std::vector<std::size_t> e1, e2;
    for (std::size_t e = 0; e < h.apex.edges.size(); ++e) (coin(rng_) ? e1 : e2).push_back(e);
    std::vector<char> in1(n, 0), in2(n, 0);
    for (auto v : h.left) in1[v] = 1;
    for (auto v : edgeEnds(h.apex, e1)) in1[v] = 1;
    for (auto v : h.right) in2[v] = 1;
    for (auto v : edgeEnds(h.apex, e2)) in2[v] = 1;
    std::uniform_int_distribution<int> side(0, 2);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in1[v] && !in2[v]) {
        const int s = side(rng_);
        in1[v] = s != 1;
        in2[v] = s != 0;
      } else if (extra(rng_)) {
        in1[v] = in2[v] = 1;
      }
    }
    std::vector<std::size_t> w1, w2, shared;
    for (std::size_t v = 0; v < n; ++v) {
      if (in1[v]) w1.push_back(v);
      if (in2[v]) w2.push_back(v);
      if (in1[v] && in2[v]) shared.push_back(v);
    }
    CospanHG h1{restrictGraph(h.apex, e1, w1), positions(w1, h.left), positions(w1, shared)};
    CospanHG h2{restrictGraph(h.apex, e2, w2), positions(w2, shared), positions(w2, h.right)};
    return DecompTree::compose(build(h1, depth - 1), build(h2, depth - 1), shared.size());
  }

  std::optional<DecompTree> tensorSplit(const CospanHG& h, std::size_t depth) {
    const std::size_t n = h.apex.vertices;
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
      return comp[v] == v ? v : comp[v] = find(comp[v]);
    };
    for (const auto& e : h.apex.edges)
      for (auto v : e) comp[find(v)] = find(e.front());
    for (std::size_t a = 0; a <= h.left.size(); ++a)
      for (std::size_t b = 0; b <= h.right.size(); ++b) {
        std::vector<char> first(n, 0), second(n, 0);
        for (std::size_t i = 0; i < h.left.size(); ++i)
          (i < a ? first : second)[find(h.left[i])] = 1;
        for (std::size_t i = 0; i < h.right.size(); ++i)
          (i < b ? first : second)[find(h.right[i])] = 1;
        bool clash = false;
        for (std::size_t c = 0; c < n; ++c) clash = clash || (first[c] && second[c]);
        if (clash) continue;
        // untouched components go to a random side
        std::bernoulli_distribution coin(0.5);
        for (std::size_t c = 0; c < n; ++c)
          if (find(c) == c && !first[c] && !second[c]) (coin(rng_) ? first : second)[c] = 1;
        std::vector<std::size_t> w1, w2, f1, f2;
        for (std::size_t v = 0; v < n; ++v) (first[find(v)] ? w1 : w2).push_back(v);
        if (w1.empty() || w2.empty()) continue;
        for (std::size_t e = 0; e < h.apex.edges.size(); ++e)
          (first[find(h.apex.edges[e].front())] ? f1 : f2).push_back(e);
        const std::vector<std::size_t> l1(h.left.begin(), h.left.begin() + static_cast<long>(a)),
            l2(h.left.begin() + static_cast<long>(a), h.left.end()),
            r1(h.right.begin(), h.right.begin() + static_cast<long>(b)),
            r2(h.right.begin() + static_cast<long>(b), h.right.end());
        CospanHG h1{restrictGraph(h.apex, f1, w1), positions(w1, l1), positions(w1, r1)};
        CospanHG h2{restrictGraph(h.apex, f2, w2), positions(w2, l2), positions(w2, r2)};
        return DecompTree::tensor(build(h1, depth - 1), build(h2, depth - 1));
      }
    return std::nullopt;
  }

  Rng& rng_;
  CospanDecomposition& out_;
  std::size_t next_ = 0;
};

class PropGraphSampler {
public:
  PropGraphSampler(Rng& rng, PropGraphSample& out) : rng_(rng), out_(out) {}

  DecompTree build(const GraphWithBoundaries& g, std::size_t depth) {
    std::bernoulli_distribution stop(0.2), normalForm(0.25);
    if (depth == 0 || g.vertices() <= 1 || stop(rng_)) return leaf(g);
    if (normalForm(rng_)) return normal(g);
    return split(g, depth);
  }

private:
  DecompTree leaf(const GraphWithBoundaries& g) {
    const std::string id = "g" + std::to_string(next_++);
    out_.sig.add(id, g, boundaryWeight(g));
    return DecompTree::leaf(id);
  }

  // b ; (vertex (x) ... (x) vertex (x) id_m) where b has no vertices
  DecompTree normal(const GraphWithBoundaries& g) {
    const std::size_t k = g.vertices(), n = g.domain(), m = g.codomain();
    GraphWithBoundaries b{zeros(0, 0), zeros(0, n), zeros(0, k + m), vcat(g.L, g.P),
                          vcat(hcat(g.G, g.R), hcat(zeros(m, k), g.F))};
    const GraphWithBoundaries vertex{zeros(1, 1), identity(1), zeros(1, 0), zeros(0, 1),
                                     zeros(0, 0)};
    DecompTree rest = leaf(vertex);
    for (std::size_t i = 1; i < k; ++i) rest = DecompTree::tensor(std::move(rest), leaf(vertex));
    if (m > 0) rest = DecompTree::tensor(std::move(rest), leaf(identityBoundaries(m)));
    return DecompTree::compose(leaf(b), std::move(rest), k + m);
  }

  DecompTree split(const GraphWithBoundaries& g, std::size_t depth) {
    const std::size_t k = g.vertices(), n = g.domain(), m = g.codomain();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng_);
    const std::size_t k1 = std::uniform_int_distribution<std::size_t>(1, k - 1)(rng_);
    std::vector<std::size_t> v1(perm.begin(), perm.begin() + static_cast<long>(k1)),
        v2(perm.begin() + static_cast<long>(k1), perm.end());
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    const std::size_t k2 = k - k1, j = k2 + n + m;
    const NatMatrix c12 = selectBlock(g.G, v1, v2) + transpose(selectBlock(g.G, v2, v1));
    // h1 : n -> j carries the edges into v2, the left boundary and v1's right one
    GraphWithBoundaries h1{selectBlock(g.G, v1, v1), selectRows(g.L, v1),
                           hcat(hcat(c12, zeros(k1, n)), selectRows(g.R, v1)),
                           vcat(vcat(selectRows(g.L, v2), identity(n)), zeros(m, n)), zeros(j, j)};
    GraphWithBoundaries h2{selectBlock(g.G, v2, v2), hcat(identity(k2), zeros(k2, n + m)),
                           selectRows(g.R, v2), hcat(hcat(zeros(m, k2), g.P), identity(m)), g.F};
    // wires nothing enters or nothing leaves
    std::vector<std::size_t> live;
    for (std::size_t t = 0; t < j; ++t) {
      const auto ti = static_cast<Eigen::Index>(t);
      const bool enters = !isZero(h1.R.col(ti)) || !isZero(h1.P.row(ti));
      const bool leaves = !isZero(h2.L.col(ti)) || !isZero(h2.P.col(ti));
      if (enters && leaves) live.push_back(t);
    }
    h1.R = selectCols(h1.R, live);
    h1.P = selectRows(h1.P, live);
    h1.F = zeros(live.size(), live.size());
    h2.L = selectCols(h2.L, live);
    h2.P = selectCols(h2.P, live);
    return DecompTree::compose(build(h1, depth - 1), build(h2, depth - 1), live.size());
  }

  Rng& rng_;
  PropGraphSample& out_;
  std::size_t next_ = 0;
};

}  // namespace

CospanDecomposition randomCospanDecomposition(Rng& rng, const CospanHG& h, std::size_t maxDepth) {
  CospanDecomposition out;
  CospanSampler sampler(rng, out);
  out.tree = sampler.build(h, maxDepth);
  return out;
}

PropGraphSample randomPropGraphDecomposition(Rng& rng, const GraphWithBoundaries& g,
                                             std::size_t maxDepth) {
  checkShapes(g);
  PropGraphSample out;
  PropGraphSampler sampler(rng, out);
  out.tree = sampler.build(g, maxDepth);
  return out;
}

}  // namespace monowidth
