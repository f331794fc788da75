#ifndef MONOWIDTH_ORACLE_HPP
#define MONOWIDTH_ORACLE_HPP

#include "monowidth/boundary_graph.hpp"
#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/nat_matrix.hpp"

#include <chrono>
#include <cstddef>
#include <stdexcept>

namespace monowidth {

/// Raised instead of running past a budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  std::size_t maxEdges = 10;
  std::size_t maxVertices = 8;
  /// entries and shapes for exactMatrixMwd
  std::size_t maxEntry = 3;
  std::size_t maxInnerDim = 4;
  std::chrono::milliseconds timeLimit{60'000};
};

struct BranchWidthResult {
  std::size_t width = 0;
  /// an optimal decomposition
  BranchDec dec;
};

/// Subset recursion over edge bipartitions.
BranchWidthResult exactBranchWidth(const Hypergraph& g, const OracleBudget& budget = {});

struct RankWidthResult {
  std::size_t width = 0;
  RankDec dec;
};

/// Cut ranks of the symmetrized adjacency matrix, over the chosen field.
RankWidthResult exactRankWidth(const NatMatrix& adjacency, Field field = Field::Q,
                               const OracleBudget& budget = {});

/// Max bag size of an optimal tree decomposition of the primal graph, with
/// nothing subtracted.
std::size_t exactTreeWidth(const Hypergraph& g, const OracleBudget& budget = {});

/// Minimum width over Bialg decompositions of a, searched exhaustively
/// over compositions through factorizations with entries at most those
/// of a.
std::size_t exactMatrixMwd(const NatMatrix& a, const OracleBudget& budget = {});

/// Isomorphism of hypergraphs without boundary.
IsoOutcome graphIso(const Hypergraph& g, const Hypergraph& h, const IsoBudget& budget = {});

}  // namespace monowidth

#endif
