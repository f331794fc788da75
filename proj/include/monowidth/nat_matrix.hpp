#ifndef MONOWIDTH_NAT_MATRIX_HPP
#define MONOWIDTH_NAT_MATRIX_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace monowidth {

/// Arbitrary precision integer. Matrices over it are expected to hold
/// non-negative entries; the signed type is only used inside elimination.
using Nat = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

template <class T, int M = Eigen::Dynamic, int N = Eigen::Dynamic>
using matrix = Eigen::Matrix<T, M, N>;

/// A morphism n -> m of the prop of natural-number matrices is an m x n
/// matrix (rows are outputs, columns are inputs).
using NatMatrix = matrix<Nat>;

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NegativeEntry : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class FactorizationCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Field { Q, GF2 };

// construction ---------------------------------------------------------------

NatMatrix zeros(std::size_t rows, std::size_t cols);
NatMatrix identity(std::size_t n);
NatMatrix fromRows(std::size_t rows, std::size_t cols,
                   const std::vector<std::int64_t>& rowMajor);

/// Throws NegativeEntry if any entry is negative.
void requireNatural(const NatMatrix& a);

// algebra --------------------------------------------------------------------

/// Matrix product a*b. Throws DimensionMismatch.
NatMatrix multiply(const NatMatrix& a, const NatMatrix& b);
/// Block diagonal [[a,0],[0,b]].
NatMatrix directSum(const NatMatrix& a, const NatMatrix& b);
NatMatrix directSum(const std::vector<NatMatrix>& blocks);
/// (a | b)
NatMatrix hcat(const NatMatrix& a, const NatMatrix& b);
/// [a ; b]
NatMatrix vcat(const NatMatrix& a, const NatMatrix& b);
NatMatrix transpose(const NatMatrix& a);

/// Largest entry, 0 for an empty matrix.
Nat maxEntry(const NatMatrix& a);
bool isZero(const NatMatrix& a);

/// Rows picked by index, in the given order.
NatMatrix selectRows(const NatMatrix& a, const std::vector<std::size_t>& rows);
NatMatrix selectCols(const NatMatrix& a, const std::vector<std::size_t>& cols);
NatMatrix selectBlock(const NatMatrix& a, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols);

// rank -----------------------------------------------------------------------

namespace detail {
std::size_t rankBareiss(std::vector<std::vector<Nat>> rows);
std::size_t rankGF2(std::vector<std::vector<Nat>> rows);
}  // namespace detail

/// Exact rank. Over Q this is fraction-free Bareiss elimination, so the
/// scalar only needs exact ring arithmetic.
template <class Derived>
std::size_t rank(const Eigen::MatrixBase<Derived>& a, Field field = Field::Q) {
  std::vector<std::vector<Nat>> rows(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    rows[i].reserve(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index j = 0; j < a.cols(); ++j) rows[i].push_back(Nat(a(i, j)));
  }
  return field == Field::Q ? detail::rankBareiss(std::move(rows))
                           : detail::rankGF2(std::move(rows));
}

// factorization ----------------------------------------------------------------

/// a == left * right with inner dimension innerDim.
struct RankFactorization {
  NatMatrix left;
  NatMatrix right;
  std::size_t innerDim = 0;
  std::size_t fieldRank = 0;
  /// True when the search proved innerDim minimal over the naturals.
  bool exactOverNaturals = false;

  /// The natural-number factorization is as small as the rational rank.
  bool attainsFieldRank() const { return innerDim == fieldRank; }
};

struct FactorizationBudget {
  /// Largest inner dimension tried; defaults to min(rows, cols).
  std::size_t dimCap = static_cast<std::size_t>(-1);
  /// Upper bound on factor entries; defaults to the largest entry of a.
  /// Factors whose inner wires are all used never need larger entries.
  std::int64_t entryBound = -1;
  /// Search nodes per inner dimension before giving up on that dimension.
  std::uint64_t nodeLimit = 2'000'000;
};

/// Smallest-inner-dimension factorization over the naturals found by
/// exhaustive search from the rational rank upward. The trivial factorization
/// through min(rows, cols) is always available. Throws
/// FactorizationCapExceeded when nothing is found within budget.dimCap.
RankFactorization natRankFactorize(const NatMatrix& a,
                                   const FactorizationBudget& budget = {});

// block structure --------------------------------------------------------------

struct Block {
  std::size_t rowOffset = 0;
  std::size_t colOffset = 0;
  NatMatrix value;
};

/// Finest contiguous block-diagonal split. A maximal run of zero rows becomes
/// one (run x 0) block, a run of zero columns one (0 x run) block; both go
/// before the next block with nonzero entries, rows first.
std::vector<Block> blockSplit(const NatMatrix& a);

std::string toString(const NatMatrix& a);

}  // namespace monowidth

#endif
