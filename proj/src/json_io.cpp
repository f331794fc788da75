#include "monowidth/json_io.hpp"

#include <algorithm>
#include <cctype>

namespace monowidth {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ParseError(std::string(what) + " must be a natural number");
  return j.get<std::size_t>();
}

Nat natFrom(const Json& j) {
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) throw ParseError("negative matrix entry");
    return Nat(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("matrix entry '" + s + "' is not a decimal natural number");
    return Nat(s);
  }
  throw ParseError("matrix entry must be a string or an integer");
}

std::vector<std::size_t> sizes(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(size(x, what));
  return out;
}

Json edgesJson(const TreeEdges& e) {
  Json out = Json::array();
  for (const auto& [a, b] : e) out.push_back({a, b});
  return out;
}

TreeEdges edgesFrom(const Json& j) {
  if (!j.is_array()) throw ParseError("treeEdges must be an array");
  TreeEdges out;
  for (const auto& e : j) {
    const auto p = sizes(e, "tree edge");
    if (p.size() != 2) throw ParseError("a tree edge has two ends");
    out.emplace_back(p[0], p[1]);
  }
  return out;
}

Json mapJson(const std::map<std::size_t, std::size_t>& m) {
  Json out = Json::array();
  for (const auto& [a, b] : m) out.push_back({a, b});
  return out;
}

std::map<std::size_t, std::size_t> mapFrom(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::map<std::size_t, std::size_t> out;
  for (const auto& e : j) {
    const auto p = sizes(e, what);
    if (p.size() != 2) throw ParseError(std::string(what) + " entries are pairs");
    if (!out.emplace(p[0], p[1]).second) throw ParseError(std::string(what) + " repeats a leaf");
  }
  return out;
}

Json ibNodeJson(const IBNode& n) {
  Json out{{"edges", n.label.edges},
           {"vertices", n.label.vertices},
           {"sources", n.label.sources},
           {"empty", n.empty}};
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(ibNodeJson(c));
  out["children"] = kids;
  return out;
}

IBNode ibNodeFrom(const Json& j, std::size_t depth) {
  if (depth > 10000) throw ParseError("decomposition nested too deeply");
  IBNode n;
  n.label.edges = sizes(field(j, "edges"), "edges");
  n.label.vertices = sizes(field(j, "vertices"), "vertices");
  n.label.sources = sizes(field(j, "sources"), "sources");
  if (j.contains("empty")) n.empty = j.at("empty").get<bool>();
  if (j.contains("children")) {
    const Json& kids = j.at("children");
    if (!kids.is_array() || (kids.size() != 0 && kids.size() != 2))
      throw ParseError("a node has zero or two children");
    for (const auto& c : kids) n.children.push_back(ibNodeFrom(c, depth + 1));
  }
  return n;
}

Json irNodeJson(const IRNode& n) {
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(irNodeJson(c));
  return Json{{"label", toJson(n.label)}, {"children", kids}};
}

IRNode irNodeFrom(const Json& j, std::size_t depth) {
  if (depth > 10000) throw ParseError("decomposition nested too deeply");
  IRNode n;
  n.label = danglingFromJson(field(j, "label"));
  if (j.contains("children")) {
    const Json& kids = j.at("children");
    if (!kids.is_array() || (kids.size() != 0 && kids.size() != 2))
      throw ParseError("a node has zero or two children");
    for (const auto& c : kids) n.children.push_back(irNodeFrom(c, depth + 1));
  }
  return n;
}

DecompTree treeFrom(const Json& j, std::size_t depth) {
  if (depth > 10000) throw ParseError("decomposition nested too deeply");
  if (!j.is_object() || j.size() != 1) throw ParseError("a tree node has exactly one of leaf, tensor, compose");
  if (j.contains("leaf")) {
    if (!j.at("leaf").is_string()) throw ParseError("leaf id must be a string");
    return DecompTree::leaf(j.at("leaf").get<std::string>());
  }
  if (j.contains("tensor")) {
    const Json& kids = j.at("tensor");
    if (!kids.is_array() || kids.size() != 2) throw ParseError("tensor takes two subtrees");
    return DecompTree::tensor(treeFrom(kids[0], depth + 1), treeFrom(kids[1], depth + 1));
  }
  if (j.contains("compose")) {
    const Json& c = j.at("compose");
    return DecompTree::compose(treeFrom(field(c, "left"), depth + 1),
                               treeFrom(field(c, "right"), depth + 1), size(field(c, "cut"), "cut"));
  }
  throw ParseError("unknown tree node kind");
}

template <class M, class Read>
void atomsFrom(const Json& j, Signature<M>& sig, Read read) {
  if (!j.is_object()) throw ParseError("atoms must be an object");
  for (const auto& [id, a] : j.items())
    sig.add(id, read(field(a, "morphism")), size(field(a, "weight"), "weight"));
}

template <class M>
Json atomsJson(const Signature<M>& sig) {
  Json out = Json::object();
  for (const auto& [id, a] : sig.atoms()) out[id] = Json{{"weight", a.weight}, {"morphism", toJson(a.morphism)}};
  return out;
}

}  // namespace

Json parseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

Json toJson(const NatMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j).str());
    rows.push_back(row);
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", rows}};
}

NatMatrix matrixFromJson(const Json& j) {
  return guarded("matrix", [&] {
    const std::size_t r = size(field(j, "rows"), "rows");
    const std::size_t c = size(field(j, "cols"), "cols");
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != r) throw ParseError("matrix needs " + std::to_string(r) + " rows");
    NatMatrix a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
      if (!e[i].is_array() || e[i].size() != c)
        throw ParseError("matrix row " + std::to_string(i) + " needs " + std::to_string(c) + " entries");
      for (std::size_t k = 0; k < c; ++k)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = natFrom(e[i][k]);
    }
    return a;
  });
}

Json toJson(const Hypergraph& g) { return Json{{"vertices", g.vertices}, {"edges", g.edges}}; }

Hypergraph hypergraphFromJson(const Json& j) {
  return guarded("hypergraph", [&] {
    Hypergraph g;
    g.vertices = size(field(j, "vertices"), "vertices");
    const Json& e = field(j, "edges");
    if (!e.is_array()) throw ParseError("edges must be an array");
    for (const auto& x : e) g.addEdge(sizes(x, "edge"));
    return g;
  });
}

Json toJson(const CospanHG& c) {
  Json out = toJson(c.apex);
  out["left"] = c.left;
  out["right"] = c.right;
  return out;
}

CospanHG cospanFromJson(const Json& j) {
  return guarded("cospan", [&] {
    CospanHG c;
    c.apex = hypergraphFromJson(j);
    c.left = sizes(field(j, "left"), "left");
    c.right = sizes(field(j, "right"), "right");
    checkCospan(c);
    return c;
  });
}

Json toJson(const GraphWithBoundaries& g) {
  return Json{{"G", toJson(g.G)}, {"L", toJson(g.L)}, {"R", toJson(g.R)}, {"P", toJson(g.P)}, {"F", toJson(g.F)}};
}

GraphWithBoundaries boundaryGraphFromJson(const Json& j) {
  return guarded("graph with boundaries", [&] {
    GraphWithBoundaries g{matrixFromJson(field(j, "G")), matrixFromJson(field(j, "L")),
                          matrixFromJson(field(j, "R")), matrixFromJson(field(j, "P")),
                          matrixFromJson(field(j, "F"))};
    checkShapes(g);
    return g;
  });
}

Json toJson(const DanglingGraph& d) { return Json{{"G", toJson(d.G)}, {"B", toJson(d.B)}}; }

DanglingGraph danglingFromJson(const Json& j) {
  return guarded("dangling graph", [&] {
    DanglingGraph d{matrixFromJson(field(j, "G")), matrixFromJson(field(j, "B"))};
    if (d.G.rows() != d.G.cols() || d.B.rows() != d.G.rows())
      throw ParseError("G must be square with as many rows as B");
    return d;
  });
}

Json toJson(const DecompTree& t) {
  switch (t.kind) {
    case DecompTree::Kind::leaf:
      return Json{{"leaf", t.atom}};
    case DecompTree::Kind::tensor:
      return Json{{"tensor", Json::array({toJson(t.left()), toJson(t.right())})}};
    case DecompTree::Kind::compose:
      return Json{{"compose", Json{{"cut", t.cut}, {"left", toJson(t.left())}, {"right", toJson(t.right())}}}};
  }
  return {};
}

DecompTree treeFromJson(const Json& j) {
  return guarded("decomposition tree", [&] { return treeFrom(j, 0); });
}

Json toJson(const BranchDec& d) {
  return Json{{"nodes", d.nodes}, {"treeEdges", edgesJson(d.treeEdges)}, {"leafEdge", mapJson(d.leafEdge)}};
}

BranchDec branchDecFromJson(const Json& j) {
  return guarded("branch decomposition", [&] {
    BranchDec d;
    d.nodes = size(field(j, "nodes"), "nodes");
    d.treeEdges = edgesFrom(field(j, "treeEdges"));
    d.leafEdge = mapFrom(field(j, "leafEdge"), "leafEdge");
    return d;
  });
}

Json toJson(const RankDec& d) {
  return Json{{"nodes", d.nodes}, {"treeEdges", edgesJson(d.treeEdges)}, {"leafVertex", mapJson(d.leafVertex)}};
}

RankDec rankDecFromJson(const Json& j) {
  return guarded("rank decomposition", [&] {
    RankDec d;
    d.nodes = size(field(j, "nodes"), "nodes");
    d.treeEdges = edgesFrom(field(j, "treeEdges"));
    d.leafVertex = mapFrom(field(j, "leafVertex"), "leafVertex");
    return d;
  });
}

Json toJson(const InductiveBranchDec& t) {
  return Json{{"graph", toJson(t.graph)}, {"root", ibNodeJson(t.root)}};
}

InductiveBranchDec inductiveBranchFromJson(const Json& j) {
  return guarded("inductive branch decomposition", [&] {
    return InductiveBranchDec{hypergraphFromJson(field(j, "graph")), ibNodeFrom(field(j, "root"), 0)};
  });
}

Json toJson(const InductiveRankDec& t) {
  return Json{{"graph", toJson(t.graph)},
              {"order", t.order},
              {"root", t.root ? irNodeJson(*t.root) : Json(nullptr)}};
}

InductiveRankDec inductiveRankFromJson(const Json& j) {
  return guarded("inductive rank decomposition", [&] {
    InductiveRankDec t;
    t.graph = danglingFromJson(field(j, "graph"));
    t.order = sizes(field(j, "order"), "order");
    const Json& r = field(j, "root");
    if (!r.is_null()) t.root = irNodeFrom(r, 0);
    return t;
  });
}

std::string algebraName(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::matrix: return "matrix";
    case AlgebraKind::cospan: return "cospan";
    case AlgebraKind::boundary: return "boundary";
  }
  return {};
}

AlgebraKind algebraFromName(const std::string& name) {
  if (name == "matrix") return AlgebraKind::matrix;
  if (name == "cospan") return AlgebraKind::cospan;
  if (name == "boundary") return AlgebraKind::boundary;
  throw ParseError("unknown algebra '" + name + "'");
}

Json toJson(const DecompositionFile& f) {
  Json out{{"algebra", algebraName(f.algebra)}, {"tree", toJson(f.tree)}};
  switch (f.algebra) {
    case AlgebraKind::matrix: out["atoms"] = atomsJson(f.matrixAtoms); break;
    case AlgebraKind::cospan: out["atoms"] = atomsJson(f.cospanAtoms); break;
    case AlgebraKind::boundary: out["atoms"] = atomsJson(f.boundaryAtoms); break;
  }
  return out;
}

DecompositionFile decompositionFromJson(const Json& j) {
  return guarded("decomposition", [&] {
    DecompositionFile f;
    const Json& a = field(j, "algebra");
    if (!a.is_string()) throw ParseError("algebra must be a string");
    f.algebra = algebraFromName(a.get<std::string>());
    f.tree = treeFromJson(field(j, "tree"));
    const Json& atoms = field(j, "atoms");
    switch (f.algebra) {
      case AlgebraKind::matrix: atomsFrom(atoms, f.matrixAtoms, matrixFromJson); break;
      case AlgebraKind::cospan: atomsFrom(atoms, f.cospanAtoms, cospanFromJson); break;
      case AlgebraKind::boundary: atomsFrom(atoms, f.boundaryAtoms, boundaryGraphFromJson); break;
    }
    return f;
  });
}

}  // namespace monowidth
