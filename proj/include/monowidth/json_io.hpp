#ifndef MONOWIDTH_JSON_IO_HPP
#define MONOWIDTH_JSON_IO_HPP

#include "monowidth/bialgebra.hpp"
#include "monowidth/boundary_graph.hpp"
#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/decomposition.hpp"
#include "monowidth/nat_matrix.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace monowidth {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending position or field.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Text to JSON, rethrowing syntax errors as ParseError with the byte offset.
Json parseJson(const std::string& text);

/// {"rows":m,"cols":n,"entries":[["1","0"],...]}; integer entries are also
/// accepted on input.
Json toJson(const NatMatrix& a);
NatMatrix matrixFromJson(const Json& j);

/// {"vertices":k,"edges":[[v,...],...]}
Json toJson(const Hypergraph& g);
Hypergraph hypergraphFromJson(const Json& j);

/// A hypergraph object with "left" and "right" added.
Json toJson(const CospanHG& c);
CospanHG cospanFromJson(const Json& j);

/// {"G":..,"L":..,"R":..,"P":..,"F":..}
Json toJson(const GraphWithBoundaries& g);
GraphWithBoundaries boundaryGraphFromJson(const Json& j);

/// {"G":..,"B":..}
Json toJson(const DanglingGraph& d);
DanglingGraph danglingFromJson(const Json& j);

/// {"leaf":id} | {"tensor":[t1,t2]} | {"compose":{"cut":n,"left":t1,"right":t2}}
Json toJson(const DecompTree& t);
DecompTree treeFromJson(const Json& j);

/// {"nodes":n,"treeEdges":[[a,b],...],"leafEdge":[[leaf,edge],...]}
Json toJson(const BranchDec& d);
BranchDec branchDecFromJson(const Json& j);

/// {"nodes":n,"treeEdges":[[a,b],...],"leafVertex":[[leaf,vertex],...]}
Json toJson(const RankDec& d);
RankDec rankDecFromJson(const Json& j);

/// {"graph":hypergraph,"root":node}, node {"edges","vertices","sources",
/// "empty","children"}
Json toJson(const InductiveBranchDec& t);
InductiveBranchDec inductiveBranchFromJson(const Json& j);

/// {"graph":dangling,"order":[...],"root":node|null}, node {"label","children"}
Json toJson(const InductiveRankDec& t);
InductiveRankDec inductiveRankFromJson(const Json& j);

enum class AlgebraKind { matrix, cospan, boundary };

std::string algebraName(AlgebraKind k);
AlgebraKind algebraFromName(const std::string& name);

/// A tree with its atoms: {"algebra":..,"tree":..,"atoms":{id:{"weight":w,
/// "morphism":..}}}. Exactly one of the signatures is filled, by algebra.
struct DecompositionFile {
  AlgebraKind algebra = AlgebraKind::matrix;
  DecompTree tree;
  Signature<NatMatrix> matrixAtoms;
  Signature<CospanHG> cospanAtoms;
  Signature<GraphWithBoundaries> boundaryAtoms;
};

Json toJson(const DecompositionFile& f);
DecompositionFile decompositionFromJson(const Json& j);

}  // namespace monowidth

#endif
