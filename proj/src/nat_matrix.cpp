#include "monowidth/nat_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace monowidth {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void requireSameRows(const NatMatrix& a, const NatMatrix& b, const char* what) {
  if (a.rows() != b.rows())
    throw DimensionMismatch(std::string(what) + ": row counts differ (" +
                            std::to_string(a.rows()) + " vs " +
                            std::to_string(b.rows()) + ")");
}

// Small dense integer matrix used by the factorization search.
struct SmallMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> v;
  std::int64_t& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

std::size_t smallRank(const SmallMat& m) {
  // Bareiss over __int128; inputs in the search are tiny so this cannot
  // overflow for the sizes the search accepts.
  std::vector<__int128> a(m.v.begin(), m.v.end());
  const std::size_t R = m.rows, C = m.cols;
  std::size_t rank = 0;
  __int128 prev = 1;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && a[piv * C + col] == 0) ++piv;
    if (piv == R) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[rank * C + j]);
    const __int128 p = a[rank * C + col];
    for (std::size_t i = rank + 1; i < R; ++i) {
      const __int128 f = a[i * C + col];
      for (std::size_t j = col; j < C; ++j)
        a[i * C + j] = (p * a[i * C + j] - f * a[rank * C + j]) / prev;
      a[i * C + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

struct Term {
  std::vector<std::int64_t> c;  // column of left factor
  std::vector<std::int64_t> b;  // row of right factor
};

class NatSearch {
public:
  NatSearch(const SmallMat& a, std::int64_t bound, std::uint64_t nodeLimit)
      : residual_(a), bound_(bound), nodeLimit_(nodeLimit) {}

  // Tries to write the residual as a sum of exactly `terms` rank-one natural
  // terms. Returns false on exhaustion or when the node limit is hit.
  bool run(std::size_t terms) {
    nodes_ = 0;
    aborted_ = false;
    chosen_.clear();
    return dfs(terms);
  }

  bool aborted() const { return aborted_; }
  const std::vector<Term>& terms() const { return chosen_; }

private:
  bool dfs(std::size_t left) {
    if (++nodes_ > nodeLimit_) {
      aborted_ = true;
      return false;
    }
    std::size_t fi = 0, fj = 0;
    bool found = false;
    for (std::size_t i = 0; i < residual_.rows && !found; ++i)
      for (std::size_t j = 0; j < residual_.cols; ++j)
        if (residual_.at(i, j) != 0) {
          fi = i;
          fj = j;
          found = true;
          break;
        }
    if (!found) return true;
    if (left == 0) return false;
    if (smallRank(residual_) > left) return false;

    const std::int64_t rij = residual_.at(fi, fj);
    for (std::int64_t ci = std::min(rij, bound_); ci >= 1; --ci)
      for (std::int64_t bj = std::min(rij / ci, bound_); bj >= 1; --bj) {
        Term t;
        t.c.assign(residual_.rows, 0);
        t.b.assign(residual_.cols, 0);
        t.c[fi] = ci;
        t.b[fj] = bj;
        if (chooseC(t, 0, fi, fj, left)) return true;
        if (aborted_) return false;
      }
    return false;
  }

  bool chooseC(Term& t, std::size_t k, std::size_t fi, std::size_t fj,
               std::size_t left) {
    if (k == residual_.rows) return chooseB(t, 0, fi, fj, left);
    if (k == fi || k < fi) {
      // rows above fi are zero in the residual, so their c entry must be 0
      return chooseC(t, k + 1, fi, fj, left);
    }
    const std::int64_t cap = std::min(bound_, residual_.at(k, fj) / t.b[fj]);
    for (std::int64_t v = cap; v >= 0; --v) {
      t.c[k] = v;
      if (chooseC(t, k + 1, fi, fj, left)) return true;
      if (aborted_) return false;
    }
    t.c[k] = 0;
    return false;
  }

  bool chooseB(Term& t, std::size_t l, std::size_t fi, std::size_t fj,
               std::size_t left) {
    if (l == residual_.cols) return apply(t, left);
    if (l == fj) return chooseB(t, l + 1, fi, fj, left);
    std::int64_t cap = bound_;
    for (std::size_t k = 0; k < residual_.rows; ++k)
      if (t.c[k] > 0) cap = std::min(cap, residual_.at(k, l) / t.c[k]);
    for (std::int64_t v = cap; v >= 0; --v) {
      t.b[l] = v;
      if (chooseB(t, l + 1, fi, fj, left)) return true;
      if (aborted_) return false;
    }
    t.b[l] = 0;
    return false;
  }

  bool apply(const Term& t, std::size_t left) {
    for (std::size_t k = 0; k < residual_.rows; ++k)
      for (std::size_t l = 0; l < residual_.cols; ++l)
        residual_.at(k, l) -= t.c[k] * t.b[l];
    chosen_.push_back(t);
    if (dfs(left - 1)) return true;
    chosen_.pop_back();
    for (std::size_t k = 0; k < residual_.rows; ++k)
      for (std::size_t l = 0; l < residual_.cols; ++l)
        residual_.at(k, l) += t.c[k] * t.b[l];
    return false;
  }

  SmallMat residual_;
  std::int64_t bound_;
  std::uint64_t nodeLimit_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<Term> chosen_;
};

}  // namespace

NatMatrix zeros(std::size_t rows, std::size_t cols) {
  return NatMatrix::Zero(idx(rows), idx(cols));
}

NatMatrix identity(std::size_t n) { return NatMatrix::Identity(idx(n), idx(n)); }

NatMatrix fromRows(std::size_t rows, std::size_t cols,
                   const std::vector<std::int64_t>& rowMajor) {
  if (rowMajor.size() != rows * cols)
    throw DimensionMismatch("fromRows: expected " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(rowMajor.size()));
  NatMatrix a(idx(rows), idx(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = rowMajor[i * cols + j];
      if (v < 0)
        throw NegativeEntry("fromRows: negative entry at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
      a(idx(i), idx(j)) = Nat(v);
    }
  return a;
}

void requireNatural(const NatMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0)
        throw NegativeEntry("negative entry at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
}

NatMatrix multiply(const NatMatrix& a, const NatMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("multiply: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  if (a.cols() == 0) return NatMatrix::Zero(a.rows(), b.cols());
  return a * b;
}

NatMatrix directSum(const NatMatrix& a, const NatMatrix& b) {
  NatMatrix r = NatMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

NatMatrix directSum(const std::vector<NatMatrix>& blocks) {
  NatMatrix r(0, 0);
  for (const auto& b : blocks) r = directSum(r, b);
  return r;
}

NatMatrix hcat(const NatMatrix& a, const NatMatrix& b) {
  requireSameRows(a, b, "hcat");
  NatMatrix r(a.rows(), a.cols() + b.cols());
  r.leftCols(a.cols()) = a;
  r.rightCols(b.cols()) = b;
  return r;
}

NatMatrix vcat(const NatMatrix& a, const NatMatrix& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatch("vcat: column counts differ (" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.cols()) + ")");
  NatMatrix r(a.rows() + b.rows(), a.cols());
  r.topRows(a.rows()) = a;
  r.bottomRows(b.rows()) = b;
  return r;
}

NatMatrix transpose(const NatMatrix& a) { return a.transpose(); }

Nat maxEntry(const NatMatrix& a) {
  Nat m = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, a(i, j));
  return m;
}

bool isZero(const NatMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

NatMatrix selectRows(const NatMatrix& a, const std::vector<std::size_t>& rows) {
  NatMatrix r(idx(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) r.row(idx(i)) = a.row(idx(rows[i]));
  return r;
}

NatMatrix selectCols(const NatMatrix& a, const std::vector<std::size_t>& cols) {
  NatMatrix r(a.rows(), idx(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) r.col(idx(j)) = a.col(idx(cols[j]));
  return r;
}

NatMatrix selectBlock(const NatMatrix& a, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  return selectCols(selectRows(a, rows), cols);
}

namespace detail {

std::size_t rankBareiss(std::vector<std::vector<Nat>> a) {
  const std::size_t R = a.size();
  if (R == 0) return 0;
  const std::size_t C = a[0].size();
  std::size_t rank = 0;
  Nat prev = 1;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && a[piv][col] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[rank]);
    const Nat p = a[rank][col];
    for (std::size_t i = rank + 1; i < R; ++i) {
      const Nat f = a[i][col];
      for (std::size_t j = col; j < C; ++j)
        a[i][j] = (p * a[i][j] - f * a[rank][j]) / prev;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::size_t rankGF2(std::vector<std::vector<Nat>> a) {
  const std::size_t R = a.size();
  if (R == 0) return 0;
  const std::size_t C = a[0].size();
  std::vector<std::vector<char>> b(R, std::vector<char>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) b[i][j] = (a[i][j] % 2 != 0) ? 1 : 0;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && !b[piv][col]) ++piv;
    if (piv == R) continue;
    std::swap(b[piv], b[rank]);
    for (std::size_t i = 0; i < R; ++i)
      if (i != rank && b[i][col])
        for (std::size_t j = col; j < C; ++j) b[i][j] ^= b[rank][j];
    ++rank;
  }
  return rank;
}

}  // namespace detail

RankFactorization natRankFactorize(const NatMatrix& a,
                                   const FactorizationBudget& budget) {
  requireNatural(a);
  const std::size_t m = static_cast<std::size_t>(a.rows());
  const std::size_t n = static_cast<std::size_t>(a.cols());
  RankFactorization out;
  out.fieldRank = rank(a);
  const std::size_t trivialDim = std::min(m, n);
  const std::size_t cap = std::min(budget.dimCap, trivialDim);

  bool certified = true;
  auto finish = [&](NatMatrix l, NatMatrix r) {
    out.innerDim = static_cast<std::size_t>(l.cols());
    out.left = std::move(l);
    out.right = std::move(r);
    out.exactOverNaturals = certified;
    return out;
  };

  if (out.fieldRank == 0) return finish(zeros(m, 0), zeros(0, n));

  const Nat top = maxEntry(a);
  const std::int64_t bound =
      budget.entryBound >= 0 ? budget.entryBound : top.convert_to<std::int64_t>();
  // Entries beyond this make the search meaningless; only the trivial
  // factorization is offered then.
  const bool searchable = top <= Nat(1) << 20 && m * n <= 256;
  if (!searchable && out.fieldRank < trivialDim) certified = false;

  if (searchable) {
    SmallMat s{m, n, std::vector<std::int64_t>(m * n)};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        s.at(i, j) = a(idx(i), idx(j)).convert_to<std::int64_t>();
    for (std::size_t r = out.fieldRank; r <= cap && r < trivialDim; ++r) {
      NatSearch search(s, bound, budget.nodeLimit);
      if (!search.run(r)) {
        if (search.aborted()) certified = false;
        continue;
      }
      const auto& terms = search.terms();
      NatMatrix l = zeros(m, terms.size()), rr = zeros(terms.size(), n);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        for (std::size_t i = 0; i < m; ++i) l(idx(i), idx(t)) = terms[t].c[i];
        for (std::size_t j = 0; j < n; ++j) rr(idx(t), idx(j)) = terms[t].b[j];
      }
      return finish(std::move(l), std::move(rr));
    }
  }
  if (trivialDim > cap)
    throw FactorizationCapExceeded(
        "no natural-number factorization with inner dimension <= " +
        std::to_string(cap) + " (rank over Q is " +
        std::to_string(out.fieldRank) + ")");
  if (m <= n) return finish(identity(m), a);
  return finish(a, identity(n));
}

std::vector<Block> blockSplit(const NatMatrix& a) {
  const std::size_t m = static_cast<std::size_t>(a.rows());
  const std::size_t n = static_cast<std::size_t>(a.cols());
  auto nz = [&](std::size_t i, std::size_t j) { return a(idx(i), idx(j)) != 0; };
  std::vector<Block> out;
  auto emit = [&](std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) {
    out.push_back(Block{r0, c0, a.block(idx(r0), idx(c0), idx(r1 - r0), idx(c1 - c0))});
  };

  std::size_t r = 0, c = 0;
  while (r < m && c < n) {
    std::size_t rz = r;
    while (rz < m && [&] {
      for (std::size_t j = c; j < n; ++j)
        if (nz(rz, j)) return false;
      return true;
    }())
      ++rz;
    if (rz > r) {
      emit(r, c, rz, c);
      r = rz;
    }
    if (r == m) break;
    std::size_t cz = c;
    while (cz < n && [&] {
      for (std::size_t i = r; i < m; ++i)
        if (nz(i, cz)) return false;
      return true;
    }())
      ++cz;
    if (cz > c) {
      emit(r, c, r, cz);
      c = cz;
    }
    if (c == n) break;

    // smallest valid split point strictly beyond (r, c)
    std::size_t r1 = r + 1, c1 = c + 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = r; i < r1; ++i)
        for (std::size_t j = c1; j < n; ++j)
          if (nz(i, j)) {
            c1 = j + 1;
            grew = true;
          }
      for (std::size_t i = r1; i < m; ++i)
        for (std::size_t j = c; j < c1; ++j)
          if (nz(i, j)) {
            r1 = i + 1;
            grew = true;
          }
    }
    emit(r, c, r1, c1);
    r = r1;
    c = c1;
  }
  if (r < m) emit(r, c, m, c);
  if (c < n) emit(m, c, m, n);
  return out;
}

std::string toString(const NatMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols() << " [";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace monowidth
