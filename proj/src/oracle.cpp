#include "monowidth/oracle.hpp"

#include "monowidth/bialgebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>

namespace monowidth {

namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint32_t;

class Deadline {
public:
  explicit Deadline(std::chrono::milliseconds limit) : end_(Clock::now() + limit) {}
  void check(const char* what) {
    if (++ticks_ % 1024 == 0 && Clock::now() > end_)
      throw BudgetExceeded(std::string(what) + ": time limit reached");
  }

private:
  Clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

// Minimum over rooted binary trees with leaves the items of a subset of the
// largest order of a subtree, where the order of a proper subset is given.
// Rooting at a tree edge turns every subcubic tree into such a pair of trees.
class SubsetDP {
public:
  SubsetDP(std::size_t items, std::function<std::size_t(Mask)> order, Deadline& deadline)
      : items_(items), full_((Mask{1} << items) - 1), order_(items == 0 ? 1 : full_ + 1),
        best_(order_.size(), kUnset), choice_(order_.size(), 0), deadline_(deadline) {
    for (Mask s = 1; s < full_; ++s) order_[s] = order(s);
  }

  // optimal width and the split at the root edge
  std::pair<std::size_t, Mask> solve() {
    if (items_ <= 1) return {0, 0};
    std::size_t bestWidth = kUnset;
    Mask bestSplit = 0;
    // the root edge separates a set holding item 0 from the rest
    for (Mask a = (full_ - 1) & full_; ; a = (a - 1) & (full_ - 1)) {
      const Mask s = a | 1;
      if (s != full_) {
        const std::size_t w = std::max({order_[s], inner(s), inner(full_ & ~s)});
        if (w < bestWidth) {
          bestWidth = w;
          bestSplit = s;
        }
      }
      if (a == 0) break;
    }
    return {bestWidth, bestSplit};
  }

  Mask choice(Mask s) {
    inner(s);
    return choice_[s];
  }

private:
  static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  std::size_t inner(Mask s) {
    if (std::popcount(s) <= 1) return 0;
    if (best_[s] != kUnset) return best_[s];
    deadline_.check("subset recursion");
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    std::size_t best = kUnset;
    Mask pick = 0;
    for (Mask a = rest; ; a = (a - 1) & rest) {
      const Mask part = a | low;
      if (part != s) {
        const Mask other = s & ~part;
        const std::size_t w =
            std::max({order_[part], order_[other], inner(part), inner(other)});
        if (w < best) {
          best = w;
          pick = part;
        }
      }
      if (a == 0) break;
    }
    best_[s] = best;
    choice_[s] = pick;
    return best;
  }

  std::size_t items_;
  Mask full_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> best_;
  std::vector<Mask> choice_;
  Deadline& deadline_;
};

// tree nodes for a subset, leaves tagged with their item
struct TreeBuilder {
  std::size_t nodes = 0;
  TreeEdges edges;
  std::map<std::size_t, std::size_t> leaves;

  std::size_t build(SubsetDP& dp, Mask s) {
    const std::size_t v = nodes++;
    if (std::popcount(s) == 1) {
      leaves[v] = static_cast<std::size_t>(std::countr_zero(s));
      return v;
    }
    const Mask part = dp.choice(s);
    edges.emplace_back(v, build(dp, part));
    edges.emplace_back(v, build(dp, s & ~part));
    return v;
  }

  void buildRooted(SubsetDP& dp, Mask split, Mask full) {
    if (full == 1) {
      build(dp, 1);
      return;
    }
    const std::size_t a = build(dp, split);
    const std::size_t b = build(dp, full & ~split);
    edges.insert(edges.begin(), std::make_pair(a, b));
  }
};

// Small dense matrix of machine integers for the matrix width search.
struct SmallMat {
  int rows = 0, cols = 0;
  std::vector<std::int64_t> v;

  SmallMat() = default;
  SmallMat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r * c), 0) {}
  std::int64_t& at(int i, int j) { return v[static_cast<std::size_t>(i * cols + j)]; }
  std::int64_t at(int i, int j) const { return v[static_cast<std::size_t>(i * cols + j)]; }
  std::int64_t sum() const { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }
  bool zero() const {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  }
  friend bool operator<(const SmallMat& a, const SmallMat& b) {
    return std::tie(a.rows, a.cols, a.v) < std::tie(b.rows, b.cols, b.v);
  }
  friend bool operator==(const SmallMat&, const SmallMat&) = default;
};

SmallMat toSmall(const NatMatrix& a) {
  SmallMat s(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  for (int i = 0; i < s.rows; ++i)
    for (int j = 0; j < s.cols; ++j) s.at(i, j) = a(i, j).convert_to<std::int64_t>();
  return s;
}

std::size_t smallRank(SmallMat a) {
  // fraction-free elimination; entries stay small at these shapes
  std::size_t r = 0;
  std::int64_t prev = 1;
  for (int c = 0; c < a.cols && static_cast<int>(r) < a.rows; ++c) {
    const int ri = static_cast<int>(r);
    int p = ri;
    while (p < a.rows && a.at(p, c) == 0) ++p;
    if (p == a.rows) continue;
    for (int j = 0; j < a.cols; ++j) std::swap(a.at(p, j), a.at(ri, j));
    for (int i = ri + 1; i < a.rows; ++i) {
      for (int j = c + 1; j < a.cols; ++j)
        a.at(i, j) = (a.at(ri, c) * a.at(i, j) - a.at(i, c) * a.at(ri, j)) / prev;
      a.at(i, c) = 0;
    }
    prev = a.at(ri, c);
    ++r;
  }
  return r;
}

SmallMat sub(const SmallMat& a, int r0, int c0, int r, int c) {
  SmallMat s(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) s.at(i, j) = a.at(r0 + i, c0 + j);
  return s;
}

// A nontrivial contiguous split a = top (+) bottom, if any.
std::optional<std::pair<SmallMat, SmallMat>> tensorSplit(const SmallMat& a) {
  for (int r = 0; r <= a.rows; ++r)
    for (int c = 0; c <= a.cols; ++c) {
      if ((r == 0 && c == 0) || (r == a.rows && c == a.cols)) continue;
      if (!sub(a, 0, c, r, a.cols - c).zero() || !sub(a, r, 0, a.rows - r, c).zero()) continue;
      return std::make_pair(sub(a, 0, 0, r, c), sub(a, r, c, a.rows - r, a.cols - c));
    }
  return std::nullopt;
}

// every column holds a single 1 and the rest zeros
bool selectsColumns(const SmallMat& a) {
  for (int j = 0; j < a.cols; ++j) {
    std::int64_t s = 0;
    for (int i = 0; i < a.rows; ++i) {
      if (a.at(i, j) > 1) return false;
      s += a.at(i, j);
    }
    if (s != 1) return false;
  }
  return true;
}

SmallMat transposed(const SmallMat& a) {
  SmallMat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

bool isGeneratorWithin(const SmallMat& a, std::size_t w) {
  for (auto g : allGenerators)
    if (generatorWeight(g) <= w && toSmall(generatorMatrix(g)) == a) return true;
  return false;
}

// Decides mwd(a) <= w. Decomposable matrices are decided blockwise, since
// a tensor-rooted decomposition is never worse than a composition-rooted
// one. An indecomposable a factors through at least its natural-number rank;
// through w - 1 wires it is always within w. Through exactly w wires both
// factors have strictly smaller entry sums unless one selects wires; those
// factorizations drop zero rows or columns or permute the w wires, and
// permuting the w wires preserves the answer.
class MwdSearch {
public:
  explicit MwdSearch(Deadline& deadline) : deadline_(deadline) {}

  bool good(const SmallMat& a, std::size_t w) {
    if (a.rows == 0 && a.cols == 0) return true;
    // tensors of delete or of zero
    if (a.rows == 0 || a.cols == 0) return w >= 1;
    const auto key = std::make_pair(a, w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    deadline_.check("exactMatrixMwd");
    const bool r = decide(a, w);
    memo_.emplace(key, r);
    return r;
  }

private:
  bool decide(const SmallMat& a, std::size_t w) {
    if (auto split = tensorSplit(a)) return good(split->first, w) && good(split->second, w);
    const std::size_t m = static_cast<std::size_t>(a.rows), n = static_cast<std::size_t>(a.cols);
    if (isGeneratorWithin(a, w)) return true;
    if (w >= std::min(m, n) + 1) return true;
    if (w == 0 || smallRank(a) > w) return false;
    if (forEachFactorization(a, w - 1, true, [](const SmallMat&, const SmallMat&) { return true; }))
      return true;

    // members reachable by permuting a side with exactly w wires
    if (classMemberGood(a, w, m == w, n == w)) return true;

    // dropping zero rows or columns down to w
    auto dropped = [&](bool rowsSide) {
      const SmallMat b = rowsSide ? a : transposed(a);
      std::vector<int> keep;
      for (int i = 0; i < b.rows; ++i)
        if (!sub(b, i, 0, 1, b.cols).zero()) keep.push_back(i);
      if (static_cast<std::size_t>(keep.size()) != w || keep.size() == static_cast<std::size_t>(b.rows))
        return false;
      SmallMat d(static_cast<int>(keep.size()), b.cols);
      for (int i = 0; i < d.rows; ++i)
        for (int j = 0; j < d.cols; ++j) d.at(i, j) = b.at(keep[static_cast<std::size_t>(i)], j);
      return good(rowsSide ? d : transposed(d), w);
    };
    if (dropped(true) || dropped(false)) return true;

    return forEachFactorization(a, w, false, [&](const SmallMat& g, const SmallMat& f) {
      if (selectsColumns(g) || selectsColumns(transposed(f))) return false;
      return good(f, w) && good(g, w);
    });
  }

  bool classMemberGood(const SmallMat& a, std::size_t w, bool rowPerms, bool colPerms) {
    if (!rowPerms && !colPerms) return false;
    std::vector<int> rp(static_cast<std::size_t>(a.rows)), cp(static_cast<std::size_t>(a.cols));
    std::iota(rp.begin(), rp.end(), 0);
    do {
      std::iota(cp.begin(), cp.end(), 0);
      do {
        SmallMat b(a.rows, a.cols);
        for (int i = 0; i < a.rows; ++i)
          for (int j = 0; j < a.cols; ++j)
            b.at(i, j) = a.at(rp[static_cast<std::size_t>(i)], cp[static_cast<std::size_t>(j)]);
        if (b == a) continue;
        if (isGeneratorWithin(b, w)) return true;
        if (auto split = tensorSplit(b))
          if (good(split->first, w) && good(split->second, w)) return true;
      } while (colPerms && std::next_permutation(cp.begin(), cp.end()));
    } while (rowPerms && std::next_permutation(rp.begin(), rp.end()));
    // a itself was handled by the caller
    return false;
  }

  struct Term {
    std::vector<std::int64_t> g, f;
  };

  // Multisets of nonzero rank-one terms g f^T summing to a, exactly k of
  // them, or at most k when atMost. The wire order is irrelevant to the
  // caller. Stops at the first factorization the callback accepts.
  bool forEachFactorization(const SmallMat& a, std::size_t k, bool atMost,
                            const std::function<bool(const SmallMat&, const SmallMat&)>& accept) {
    const int m = a.rows, n = a.cols;
    std::int64_t bound = 0;
    for (auto x : a.v) bound = std::max(bound, x);
    std::vector<Term> terms;
    std::vector<std::int64_t> g(static_cast<std::size_t>(m), 0);
    // odometer over g in [0, bound]^m, then f under the largest it allows
    while (true) {
      int i = 0;
      while (i < m && g[static_cast<std::size_t>(i)] == bound) g[static_cast<std::size_t>(i++)] = 0;
      if (i == m) break;
      ++g[static_cast<std::size_t>(i)];
      std::vector<std::int64_t> cap(static_cast<std::size_t>(n), bound);
      for (int r = 0; r < m; ++r)
        if (g[static_cast<std::size_t>(r)] > 0)
          for (int j = 0; j < n; ++j)
            cap[static_cast<std::size_t>(j)] =
                std::min(cap[static_cast<std::size_t>(j)], a.at(r, j) / g[static_cast<std::size_t>(r)]);
      std::vector<std::int64_t> f(static_cast<std::size_t>(n), 0);
      while (true) {
        int j = 0;
        while (j < n && f[static_cast<std::size_t>(j)] == cap[static_cast<std::size_t>(j)])
          f[static_cast<std::size_t>(j++)] = 0;
        if (j == n) break;
        ++f[static_cast<std::size_t>(j)];
        terms.push_back({g, f});
      }
    }
    // last term index able to cover each cell
    std::vector<int> lastCover(static_cast<std::size_t>(m * n), -1);
    for (int t = 0; t < static_cast<int>(terms.size()); ++t)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          if (terms[static_cast<std::size_t>(t)].g[static_cast<std::size_t>(i)] *
                  terms[static_cast<std::size_t>(t)].f[static_cast<std::size_t>(j)] >
              0)
            lastCover[static_cast<std::size_t>(i * n + j)] = t;

    SmallMat residual = a;
    std::vector<std::size_t> chosen;
    std::function<bool(std::size_t)> pick = [&](std::size_t from) -> bool {
      deadline_.check("exactMatrixMwd");
      const auto firstLive = std::find_if(residual.v.begin(), residual.v.end(),
                                          [](std::int64_t x) { return x != 0; });
      if (firstLive == residual.v.end()) {
        if (!atMost && chosen.size() != k) return false;
        const int used = static_cast<int>(chosen.size());
        SmallMat gm(m, used), fm(used, n);
        for (int t = 0; t < used; ++t) {
          const Term& term = terms[chosen[static_cast<std::size_t>(t)]];
          for (int i = 0; i < m; ++i) gm.at(i, t) = term.g[static_cast<std::size_t>(i)];
          for (int j = 0; j < n; ++j) fm.at(t, j) = term.f[static_cast<std::size_t>(j)];
        }
        return accept(gm, fm);
      }
      if (chosen.size() == k) return false;
      if (smallRank(residual) > k - chosen.size()) return false;
      if (lastCover[static_cast<std::size_t>(firstLive - residual.v.begin())] < static_cast<int>(from))
        return false;
      for (std::size_t t = from; t < terms.size(); ++t) {
        const Term& term = terms[t];
        bool fits = true;
        for (int i = 0; i < m && fits; ++i)
          for (int j = 0; j < n && fits; ++j)
            fits = term.g[static_cast<std::size_t>(i)] * term.f[static_cast<std::size_t>(j)] <=
                   residual.at(i, j);
        if (!fits) continue;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            residual.at(i, j) -= term.g[static_cast<std::size_t>(i)] * term.f[static_cast<std::size_t>(j)];
        chosen.push_back(t);
        const bool found = pick(t);
        chosen.pop_back();
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            residual.at(i, j) += term.g[static_cast<std::size_t>(i)] * term.f[static_cast<std::size_t>(j)];
        if (found) return true;
      }
      return false;
    };
    return pick(0);
  }

  Deadline& deadline_;
  std::map<std::pair<SmallMat, std::size_t>, bool> memo_;
};

}  // namespace

BranchWidthResult exactBranchWidth(const Hypergraph& g, const OracleBudget& budget) {
  const std::size_t m = g.edges.size();
  if (m > budget.maxEdges)
    throw BudgetExceeded("exactBranchWidth: " + std::to_string(m) + " edges exceed the budget of " +
                         std::to_string(budget.maxEdges));
  BranchWidthResult out;
  if (m == 0) return out;
  std::vector<Mask> incidence(g.vertices, 0);
  for (std::size_t e = 0; e < m; ++e)
    for (auto v : g.edges[e]) incidence[v] |= Mask{1} << e;
  const Mask full = (Mask{1} << m) - 1;
  Deadline deadline(budget.timeLimit);
  SubsetDP dp(
      m,
      [&](Mask s) {
        std::size_t shared = 0;
        for (auto inc : incidence) shared += (inc & s) && (inc & full & ~s) ? 1 : 0;
        return shared;
      },
      deadline);
  const auto [width, split] = dp.solve();
  TreeBuilder tb;
  tb.buildRooted(dp, split, full);
  out.width = width;
  out.dec = BranchDec{tb.nodes, tb.edges, tb.leaves};
  return out;
}

RankWidthResult exactRankWidth(const NatMatrix& adjacency, Field field, const OracleBudget& budget) {
  if (adjacency.rows() != adjacency.cols())
    throw DimensionMismatch("exactRankWidth: adjacency matrix must be square");
  const std::size_t k = static_cast<std::size_t>(adjacency.rows());
  if (k > budget.maxVertices)
    throw BudgetExceeded("exactRankWidth: " + std::to_string(k) +
                         " vertices exceed the budget of " + std::to_string(budget.maxVertices));
  RankWidthResult out;
  if (k == 0) return out;
  const NatMatrix s = adjacency + adjacency.transpose();
  const Mask full = (Mask{1} << k) - 1;
  Deadline deadline(budget.timeLimit);
  SubsetDP dp(
      k,
      [&](Mask a) {
        std::vector<std::size_t> in, out;
        for (std::size_t v = 0; v < k; ++v) ((a >> v) & 1 ? in : out).push_back(v);
        return rank(selectBlock(s, in, out), field);
      },
      deadline);
  const auto [width, split] = dp.solve();
  TreeBuilder tb;
  tb.buildRooted(dp, split, full);
  out.width = width;
  out.dec = RankDec{tb.nodes, tb.edges, tb.leaves};
  return out;
}

std::size_t exactTreeWidth(const Hypergraph& g, const OracleBudget& budget) {
  const std::size_t k = g.vertices;
  if (k > budget.maxVertices)
    throw BudgetExceeded("exactTreeWidth: " + std::to_string(k) +
                         " vertices exceed the budget of " + std::to_string(budget.maxVertices));
  if (k == 0) return 0;
  std::vector<Mask> nb(k, 0);
  for (const auto& e : g.edges)
    for (auto u : e)
      for (auto v : e)
        if (u != v) nb[u] |= Mask{1} << v;
  Deadline deadline(budget.timeLimit);
  // vertices outside s and v reachable from v through s
  auto q = [&](Mask s, std::size_t v) {
    Mask seen = Mask{1} << v, frontier = seen, out = 0;
    while (frontier) {
      const std::size_t u = static_cast<std::size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      Mask next = nb[u] & ~seen;
      seen |= next;
      out |= next & ~s;
      frontier |= next & s;
    }
    return static_cast<std::size_t>(std::popcount(out));
  };
  // best[s]: least max |Q| when the vertices of s are eliminated first
  const Mask full = (Mask{1} << k) - 1;
  std::vector<std::size_t> best(full + 1, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  for (Mask s = 1; s <= full; ++s) {
    deadline.check("exactTreeWidth");
    for (Mask rest = s; rest; rest &= rest - 1) {
      const std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
      const Mask before = s & ~(Mask{1} << v);
      best[s] = std::min(best[s], std::max(best[before], q(before, v)));
    }
  }
  // a bag holds the eliminated vertex and its later neighbours
  return best[full] + 1;
}

std::size_t exactMatrixMwd(const NatMatrix& a, const OracleBudget& budget) {
  requireNatural(a);
  const std::size_t m = static_cast<std::size_t>(a.rows()), n = static_cast<std::size_t>(a.cols());
  if (m > budget.maxInnerDim || n > budget.maxInnerDim)
    throw BudgetExceeded("exactMatrixMwd: shape exceeds " + std::to_string(budget.maxInnerDim));
  if (maxEntry(a) > Nat(budget.maxEntry))
    throw BudgetExceeded("exactMatrixMwd: entries exceed " + std::to_string(budget.maxEntry));
  Deadline deadline(budget.timeLimit);
  MwdSearch search(deadline);
  const SmallMat s = toSmall(a);
  for (std::size_t w = 0;; ++w)
    if (search.good(s, w)) return w;
}

IsoOutcome graphIso(const Hypergraph& g, const Hypergraph& h, const IsoBudget& budget) {
  return cospanIso(sourcesCospan(g, {}), sourcesCospan(h, {}), budget);
}

}  // namespace monowidth
