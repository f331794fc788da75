#include "monowidth/cospan.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace monowidth {

void Hypergraph::addEdge(std::vector<std::size_t> ends) {
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  if (!ends.empty() && ends.back() >= vertices)
    throw std::out_of_range("edge endpoint " + std::to_string(ends.back()) +
                            " outside " + std::to_string(vertices) + " vertices");
  edges.push_back(std::move(ends));
}

std::size_t Hypergraph::maxArity() const {
  std::size_t best = 0;
  for (const auto& e : edges) best = std::max(best, e.size());
  return best;
}

std::vector<std::size_t> edgeEnds(const Hypergraph& g, const std::vector<std::size_t>& edges) {
  std::vector<std::size_t> out;
  for (auto e : edges) out.insert(out.end(), g.edges.at(e).begin(), g.edges.at(e).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Hypergraph restrictGraph(const Hypergraph& g, const std::vector<std::size_t>& edges,
                         const std::vector<std::size_t>& vertices) {
  Hypergraph h;
  h.vertices = vertices.size();
  for (auto e : edges) {
    std::vector<std::size_t> ends;
    for (auto v : g.edges.at(e)) {
      auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
      if (it == vertices.end() || *it != v)
        throw std::invalid_argument("edge " + std::to_string(e) + " leaves the vertex set at " +
                                    std::to_string(v));
      ends.push_back(static_cast<std::size_t>(it - vertices.begin()));
    }
    h.addEdge(std::move(ends));
  }
  return h;
}

void checkCospan(const CospanHG& c) {
  for (const auto* leg : {&c.left, &c.right})
    for (auto v : *leg)
      if (v >= c.apex.vertices)
        throw std::invalid_argument("cospan leg points at vertex " + std::to_string(v) +
                                    " of an apex with " + std::to_string(c.apex.vertices));
  for (const auto& e : c.apex.edges)
    if (!e.empty() && e.back() >= c.apex.vertices)
      throw std::invalid_argument("cospan edge leaves the apex");
}

std::size_t cospanWeight(const CospanHG& c) { return c.apex.vertices; }

Pushout pushout(const CospanHG& c1, const CospanHG& c2) {
  if (c1.codomain() != c2.domain())
    throw TypeMismatch("cannot glue a boundary of " + std::to_string(c1.codomain()) +
                       " onto one of " + std::to_string(c2.domain()));
  const std::size_t n1 = c1.apex.vertices, n = n1 + c2.apex.vertices;
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank.data(), parent.data());
  for (std::size_t v = 0; v < n; ++v) ds.make_set(v);
  for (std::size_t y = 0; y < c1.codomain(); ++y) ds.union_set(c1.right[y], n1 + c2.left[y]);

  std::vector<std::size_t> classId(n, n), of(n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = ds.find_set(v);
    if (classId[r] == n) classId[r] = next++;
    of[v] = classId[r];
  }

  Pushout p;
  p.inj1.assign(of.begin(), of.begin() + static_cast<long>(n1));
  p.inj2.assign(of.begin() + static_cast<long>(n1), of.end());
  p.result.apex.vertices = next;
  for (const auto& e : c1.apex.edges) {
    std::vector<std::size_t> ends;
    for (auto v : e) ends.push_back(p.inj1[v]);
    p.result.apex.addEdge(std::move(ends));
  }
  for (const auto& e : c2.apex.edges) {
    std::vector<std::size_t> ends;
    for (auto v : e) ends.push_back(p.inj2[v]);
    p.result.apex.addEdge(std::move(ends));
  }
  for (auto v : c1.left) p.result.left.push_back(p.inj1[v]);
  for (auto v : c2.right) p.result.right.push_back(p.inj2[v]);
  return p;
}

CospanHG composeCospans(const CospanHG& c1, const CospanHG& c2) {
  return pushout(c1, c2).result;
}

CospanHG tensorCospans(const CospanHG& c1, const CospanHG& c2) {
  CospanHG out = c1;
  const std::size_t off = c1.apex.vertices;
  out.apex.vertices += c2.apex.vertices;
  for (const auto& e : c2.apex.edges) {
    std::vector<std::size_t> ends;
    for (auto v : e) ends.push_back(v + off);
    out.apex.edges.push_back(std::move(ends));
  }
  for (auto v : c2.left) out.left.push_back(v + off);
  for (auto v : c2.right) out.right.push_back(v + off);
  return out;
}

CospanHG structuralCospan(std::size_t apex, std::vector<std::size_t> left,
                          std::vector<std::size_t> right) {
  CospanHG c;
  c.apex.vertices = apex;
  c.left = std::move(left);
  c.right = std::move(right);
  checkCospan(c);
  return c;
}

namespace {

std::vector<std::size_t> iota(std::size_t n, std::size_t from = 0) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace

CospanHG identityCospan(std::size_t n) { return structuralCospan(n, iota(n), iota(n)); }

CospanHG swapCospan(std::size_t a, std::size_t b) {
  std::vector<std::size_t> right = iota(b, a);
  const auto first = iota(a);
  right.insert(right.end(), first.begin(), first.end());
  return structuralCospan(a + b, iota(a + b), std::move(right));
}

CospanHG copyCospan(std::size_t x) {
  std::vector<std::size_t> right = iota(x);
  right.insert(right.end(), right.begin(), right.end());
  return structuralCospan(x, iota(x), std::move(right));
}

CospanHG permutationCospan(const std::vector<std::size_t>& order) {
  return structuralCospan(order.size(), iota(order.size()), order);
}

CospanHG sourcesCospan(const Hypergraph& g, std::vector<std::size_t> sources) {
  CospanHG c;
  c.apex = g;
  c.left = std::move(sources);
  checkCospan(c);
  return c;
}

namespace {

// vertex invariant: degree, then the sorted arities of the incident edges
using VertexSignature = std::vector<std::size_t>;

std::vector<VertexSignature> signatures(const Hypergraph& g) {
  std::vector<VertexSignature> sig(g.vertices);
  for (const auto& e : g.edges)
    for (auto v : e) sig[v].push_back(e.size());
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

class IsoSearch {
public:
  IsoSearch(const CospanHG& a, const CospanHG& b, const IsoBudget& budget)
      : a_(a), b_(b), budget_(budget), sigA_(signatures(a.apex)), sigB_(signatures(b.apex)) {}

  IsoOutcome run() {
    IsoOutcome out;
    out.verdict = Iso::notIsomorphic;
    const std::size_t n = a_.apex.vertices;
    if (n != b_.apex.vertices || a_.apex.edges.size() != b_.apex.edges.size() ||
        a_.left.size() != b_.left.size() || a_.right.size() != b_.right.size())
      return out;
    if (n > budget_.maxVertices) {
      out.verdict = Iso::undecided;
      return out;
    }
    {
      auto sa = sigA_, sb = sigB_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return out;
    }

    map_.assign(n, kUnset);
    inverse_.assign(n, kUnset);
    // the legs force part of the map
    std::vector<std::size_t> forced(n, kUnset);
    for (int side = 0; side < 2; ++side) {
      const auto& la = side == 0 ? a_.left : a_.right;
      const auto& lb = side == 0 ? b_.left : b_.right;
      for (std::size_t i = 0; i < la.size(); ++i) {
        if (forced[la[i]] != kUnset && forced[la[i]] != lb[i]) return out;
        forced[la[i]] = lb[i];
      }
    }

    for (std::size_t e = 0; e < b_.apex.edges.size(); ++e)
      pool_[b_.apex.edges[e]].push_back(e);
    edgeMap_.assign(a_.apex.edges.size(), kUnset);
    pending_.assign(a_.apex.edges.size(), 0);
    incident_.assign(n, {});
    for (std::size_t e = 0; e < a_.apex.edges.size(); ++e) {
      pending_[e] = a_.apex.edges[e].size();
      for (auto v : a_.apex.edges[e]) incident_[v].push_back(e);
      if (pending_[e] == 0 && !closeEdge(e)) return out;
    }

    order_ = searchOrder(forced);
    forced_ = std::move(forced);
    if (!extend(0)) {
      if (aborted_) out.verdict = Iso::undecided;
      return out;
    }
    out.verdict = Iso::isomorphic;
    out.vertexMap = map_;
    out.edgeMap = edgeMap_;
    return out;
  }

private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  // forced vertices first, then greedily the one most tied to those placed
  std::vector<std::size_t> searchOrder(const std::vector<std::size_t>& forced) const {
    const std::size_t n = a_.apex.vertices;
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t v = 0; v < n; ++v)
      if (forced[v] != kUnset) {
        order.push_back(v);
        placed[v] = true;
      }
    while (order.size() < n) {
      std::size_t best = kUnset, bestTies = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (placed[v]) continue;
        std::size_t ties = 0;
        for (auto e : incident_[v])
          for (auto u : a_.apex.edges[e]) ties += placed[u] ? 1 : 0;
        if (best == kUnset || ties > bestTies ||
            (ties == bestTies && sigA_[v].size() > sigA_[best].size())) {
          best = v;
          bestTies = ties;
        }
      }
      order.push_back(best);
      placed[best] = true;
    }
    return order;
  }

  bool closeEdge(std::size_t e) {
    std::vector<std::size_t> image;
    for (auto v : a_.apex.edges[e]) image.push_back(map_[v]);
    std::sort(image.begin(), image.end());
    auto it = pool_.find(image);
    if (it == pool_.end() || it->second.empty()) return false;
    edgeMap_[e] = it->second.back();
    it->second.pop_back();
    return true;
  }

  void reopenEdge(std::size_t e) {
    std::vector<std::size_t> image;
    for (auto v : a_.apex.edges[e]) image.push_back(map_[v]);
    std::sort(image.begin(), image.end());
    pool_[image].push_back(edgeMap_[e]);
    edgeMap_[e] = kUnset;
  }

  bool assign(std::size_t v, std::size_t w) {
    map_[v] = w;
    inverse_[w] = v;
    std::size_t done = 0;
    bool ok = true;
    for (auto e : incident_[v]) {
      ++done;
      if (--pending_[e] == 0 && !closeEdge(e)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    // roll back the edges touched so far; the failing one was not closed
    for (std::size_t i = 0; i < done; ++i) {
      const auto e = incident_[v][i];
      if (pending_[e] == 0 && i + 1 < done) reopenEdge(e);
      ++pending_[e];
    }
    map_[v] = kUnset;
    inverse_[w] = kUnset;
    return false;
  }

  void unassign(std::size_t v) {
    for (auto e : incident_[v]) {
      if (pending_[e] == 0) reopenEdge(e);
      ++pending_[e];
    }
    inverse_[map_[v]] = kUnset;
    map_[v] = kUnset;
  }

  bool extend(std::size_t i) {
    if (i == order_.size()) return true;
    if (++nodes_ > budget_.nodeLimit) {
      aborted_ = true;
      return false;
    }
    const std::size_t v = order_[i];
    auto tryCandidate = [&](std::size_t w) {
      if (inverse_[w] != kUnset || sigA_[v] != sigB_[w]) return false;
      if (!assign(v, w)) return false;
      if (extend(i + 1)) return true;
      unassign(v);
      return false;
    };
    if (forced_[v] != kUnset) return tryCandidate(forced_[v]);
    for (std::size_t w = 0; w < b_.apex.vertices && !aborted_; ++w)
      if (tryCandidate(w)) return true;
    return false;
  }

  const CospanHG& a_;
  const CospanHG& b_;
  IsoBudget budget_;
  std::vector<VertexSignature> sigA_, sigB_;
  std::vector<std::size_t> map_, inverse_, forced_, order_, edgeMap_, pending_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> pool_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

std::string joined(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

IsoOutcome cospanIso(const CospanHG& c1, const CospanHG& c2, const IsoBudget& budget) {
  checkCospan(c1);
  checkCospan(c2);
  return IsoSearch(c1, c2, budget).run();
}

DecompTree structuralLeaf(const CospanHG& c, Signature<CospanHG>& sig) {
  if (!c.apex.edges.empty())
    throw std::invalid_argument("structuralLeaf: cospan has edges");
  const std::string id = "frob(" + std::to_string(c.apex.vertices) + ";" + joined(c.left) +
                         ";" + joined(c.right) + ")";
  if (!sig.contains(id)) sig.add(id, c, cospanWeight(c));
  return DecompTree::leaf(id);
}

DecompTree cospanLeaf(const std::string& id, CospanHG c, Signature<CospanHG>& sig) {
  checkCospan(c);
  const std::size_t w = cospanWeight(c);
  sig.add(id, std::move(c), w);
  return DecompTree::leaf(id);
}

DecompTree CospanAlgebra::identityTree(std::size_t n, Signature<CospanHG>& sig) const {
  return structuralLeaf(identityCospan(n), sig);
}

DecompTree CospanAlgebra::swapTree(std::size_t a, std::size_t b, Signature<CospanHG>& sig) const {
  return structuralLeaf(swapCospan(a, b), sig);
}

DecompTree CospanAlgebra::copyTree(std::size_t x, Signature<CospanHG>& sig) const {
  return structuralLeaf(copyCospan(x), sig);
}

}  // namespace monowidth
