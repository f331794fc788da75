// monowidth: widths and decompositions of graphs and matrices from the
// command line. Exit codes: 0 success, 1 usage, 2 validation failure,
// 3 budget refusal, 4 parse error.

#include "monowidth/bialgebra.hpp"
#include "monowidth/boundary_graph.hpp"
#include "monowidth/branch.hpp"
#include "monowidth/cospan.hpp"
#include "monowidth/json_io.hpp"
#include "monowidth/oracle.hpp"
#include "monowidth/random_instances.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace monowidth;

enum Exit : int { ok = 0, usage = 1, invalid = 2, refused = 3, unparsable = 4 };

struct Options {
  std::string input;
  std::string original;
  std::string graph;
  std::string out;
  std::string dot;
  std::string algebra = "cospan";
  std::string field = "Q";
  bool json = false;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  OracleBudget budget;
  std::size_t timeMs = 60'000;
};

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream s;
  for (unsigned int i = 0; i < n; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return s.str();
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

bool looksLikeJson(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

// Lines "u v ..." give an edge on the listed vertices; a line with one
// vertex only declares it. '#' starts a comment.
Hypergraph parseEdgeList(const std::string& text) {
  std::vector<std::vector<std::size_t>> edges;
  std::size_t vertices = 0;
  std::istringstream in(text);
  std::string line;
  for (std::size_t lineNo = 1; std::getline(in, line); ++lineNo) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::size_t> ends;
    std::size_t pos = 0;
    while (true) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) break;
      const auto stop = std::min(line.find_first_of(" \t\r", pos), line.size());
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + stop, v);
      if (ec != std::errc() || ptr != line.data() + stop)
        throw ParseError("line " + std::to_string(lineNo) + ", column " + std::to_string(pos + 1) +
                         ": expected a vertex number, got '" + line.substr(pos, stop - pos) + "'");
      ends.push_back(v);
      vertices = std::max(vertices, v + 1);
      pos = stop;
    }
    if (ends.size() >= 2) edges.push_back(std::move(ends));
  }
  Hypergraph g;
  g.vertices = vertices;
  try {
    for (auto& e : edges) g.addEdge(std::move(e));
  } catch (const std::logic_error& e) {
    throw ParseError(e.what());
  }
  return g;
}

struct Loaded {
  std::string text;
  std::string source;
};

Loaded loadInput(const Options& o) {
  if (o.random > 0) {
    Rng rng(o.seed);
    std::ostringstream s;
    s << "# random simple graph, " << o.random << " vertices, seed " << o.seed << "\n";
    for (std::size_t v = 0; v < o.random; ++v) s << v << "\n";
    for (const auto& [u, v] : randomSimpleGraph(rng, o.random, 0.5)) s << u << " " << v << "\n";
    return {s.str(), "random:" + std::to_string(o.random) + ":seed=" + std::to_string(o.seed)};
  }
  if (o.input.empty()) throw ParseError("no input file given");
  return {readFile(o.input), o.input};
}

Hypergraph graphOf(const std::string& text) {
  return looksLikeJson(text) ? hypergraphFromJson(parseJson(text)) : parseEdgeList(text);
}

// Upper-triangular adjacency of a graph whose edges all have two ends;
// parallel edges collapse.
NatMatrix simpleAdjacency(const Hypergraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : g.edges) {
    if (e.size() != 2) throw ParseError("a simple graph is needed, found an edge with " +
                                        std::to_string(e.size()) + " distinct ends");
    pairs.emplace(e[0], e[1]);
  }
  return adjacencyFromEdges(g.vertices, {pairs.begin(), pairs.end()});
}

Field fieldOf(const std::string& name) { return name == "GF2" ? Field::GF2 : Field::Q; }

// Tree edges of a caterpillar whose leaves are 0..n-1.
std::pair<std::size_t, TreeEdges> caterpillar(std::size_t n) {
  if (n <= 1) return {n, {}};
  if (n == 2) return {2, {{0, 1}}};
  TreeEdges e{{0, n}, {1, n}};
  for (std::size_t i = 2; i + 1 < n; ++i) {
    e.emplace_back(i, n + i - 1);
    e.emplace_back(n + i - 2, n + i - 1);
  }
  e.emplace_back(n - 1, 2 * n - 3);
  return {2 * n - 2, e};
}

BranchDec caterpillarBranch(const Hypergraph& g) {
  BranchDec d;
  std::tie(d.nodes, d.treeEdges) = caterpillar(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) d.leafEdge[i] = i;
  return d;
}

RankDec caterpillarRankDec(std::size_t k) {
  RankDec d;
  std::tie(d.nodes, d.treeEdges) = caterpillar(k);
  for (std::size_t i = 0; i < k; ++i) d.leafVertex[i] = i;
  return d;
}

class Report {
public:
  Report(std::string operation) : start_(std::chrono::steady_clock::now()) {
    j_["operation"] = std::move(operation);
  }
  Json& operator[](const char* key) { return j_[key]; }
  void input(const Loaded& in) {
    j_["input"] = Json{{"source", in.source}, {"sha256", sha256(in.text)}};
  }
  void check(const std::string& name, bool pass, const std::string& detail = {}) {
    Json c{{"check", name}, {"pass", pass}};
    if (!detail.empty()) c["detail"] = detail;
    j_["checks"].push_back(c);
    failed_ = failed_ || !pass;
  }
  bool failed() const { return failed_; }

  void print(bool json) {
    j_["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    if (json) {
      std::cout << j_.dump(2) << "\n";
      return;
    }
    printText(j_, "");
  }

private:
  static void printText(const Json& j, const std::string& prefix) {
    for (const auto& [key, value] : j.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (key == "checks") {
        for (const auto& c : value)
          std::cout << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["check"].get<std::string>()
                    << (c.contains("detail") ? ": " + c["detail"].get<std::string>() : "") << "\n";
      } else if (value.is_object()) {
        printText(value, name);
      } else {
        std::cout << name << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  }

  Json j_;
  bool failed_ = false;
  std::chrono::steady_clock::time_point start_;
};

// Each subcommand fills the report and returns its exit code.

int branchWidth(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  const Hypergraph g = graphOf(in.text);
  rep["graph"] = Json{{"vertices", g.vertices}, {"edges", g.edges.size()}};
  try {
    const auto r = exactBranchWidth(g, o.budget);
    checkBranchDec(r.dec, g);
    rep["widths"]["oracle"] = r.width;
    const auto ib = toInductiveBranch(r.dec, {g, {}});
    rep.check("inductive decomposition valid", validInductiveBranch(ib));
    const std::size_t iw = inductiveBranchWidth(ib);
    rep["widths"]["inductive"] = iw;
    rep.check("inductive width <= branch width + |sources|", iw <= r.width);
    if (!o.out.empty()) writeFile(o.out, toJson(r.dec).dump(2) + "\n");
    if (!o.dot.empty()) writeFile(o.dot, toDot(ib, "branch"));
    return rep.failed() ? invalid : ok;
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
    if (!g.edges.empty()) rep["widths"]["constructed"] = branchWidthOf(caterpillarBranch(g), g);
    return refused;
  }
}

int rankWidth(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  const NatMatrix a = simpleAdjacency(graphOf(in.text));
  const Field field = fieldOf(o.field);
  const std::size_t k = static_cast<std::size_t>(a.rows());
  rep["graph"] = Json{{"vertices", k}, {"field", o.field}};
  try {
    const auto r = exactRankWidth(a, field, o.budget);
    rep["widths"]["oracle"] = r.width;
    const auto ir = toInductiveRank(r.dec, DanglingGraph{a, zeros(k, 0)});
    rep.check("inductive decomposition valid", validateInductiveRank(ir));
    const std::size_t iw = inductiveRankWidth(ir, field);
    rep["widths"]["inductive"] = iw;
    rep.check("inductive width <= rank width + rank of dangling edges", iw <= r.width);
    if (!o.out.empty()) writeFile(o.out, toJson(r.dec).dump(2) + "\n");
    if (!o.dot.empty()) writeFile(o.dot, toDot(ir, "rank"));
    return rep.failed() ? invalid : ok;
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
    rep["widths"]["constructed"] = rankWidthOf(caterpillarRankDec(k), a, field);
    return refused;
  }
}

int treeWidth(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  const Hypergraph g = graphOf(in.text);
  rep["graph"] = Json{{"vertices", g.vertices}, {"edges", g.edges.size()}};
  rep["convention"] = "max bag size";
  try {
    rep["widths"]["oracle"] = exactTreeWidth(g, o.budget);
    return ok;
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
    rep["widths"]["constructed"] = g.vertices;
    return refused;
  }
}

template <class M>
DecompositionFile fileOf(AlgebraKind kind, const DecompTree& t, const Signature<M>& sig) {
  DecompositionFile f;
  f.algebra = kind;
  f.tree = t;
  if constexpr (std::is_same_v<M, NatMatrix>) f.matrixAtoms = sig;
  if constexpr (std::is_same_v<M, CospanHG>) f.cospanAtoms = sig;
  if constexpr (std::is_same_v<M, GraphWithBoundaries>) f.boundaryAtoms = sig;
  return f;
}

void emit(const Options& o, Report& rep, const DecompositionFile& f) {
  if (rep.failed()) return;
  if (!o.out.empty()) writeFile(o.out, toJson(f).dump(2) + "\n");
  if (!o.dot.empty()) writeFile(o.dot, toDot(f.tree, "mwd"));
}

int mwdUpperMatrix(const Options& o, Report& rep, const std::string& text) {
  const NatMatrix a = matrixFromJson(parseJson(text));
  rep["morphism"] = Json{{"rows", a.rows()}, {"cols", a.cols()}};
  const UpperBound up = matrixMonoidalUpper(a);
  const std::size_t w = widthBialg(up.tree);
  rep["widths"]["constructed"] = w;
  rep["widths"]["lower"] = up.lower;
  rep["widths"]["certified"] = up.certified;
  rep["bound"] = "constructed <= largest block inner dimension + 1";
  rep["certificates"]["attainsFieldRank"] = up.attainsFieldRank;
  try {
    rep["widths"]["oracle"] = exactMatrixMwd(a, o.budget);
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
  }
  rep.check("width within bound", w <= up.certified);
  rep.check("evaluates to the input", evaluateBialg(up.tree) == a);
  emit(o, rep, fileOf(AlgebraKind::matrix, up.tree, bialgSignature()));
  return rep.failed() ? invalid : ok;
}

int mwdUpperCospan(const Options& o, Report& rep, const std::string& text) {
  const Hypergraph g = graphOf(text);
  rep["graph"] = Json{{"vertices", g.vertices}, {"edges", g.edges.size()}};
  BranchDec dec;
  try {
    const auto r = exactBranchWidth(g, o.budget);
    dec = r.dec;
    rep["widths"]["oracle"] = r.width;
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
    dec = caterpillarBranch(g);
  }
  const auto ib = toInductiveBranch(dec, {g, {}});
  const auto d = bTomdec(ib);
  const std::size_t w = width(d.tree, d.atoms);
  const std::size_t bound = std::max(inductiveBranchWidth(ib) + 1, g.maxArity());
  rep["widths"]["constructed"] = w;
  rep["widths"]["branch"] = g.edges.empty() ? 0 : branchWidthOf(dec, g);
  rep["widths"]["certified"] = bound;
  rep["bound"] = "constructed <= max(inductive branch width + 1, max edge size)";
  rep.check("width within bound", w <= bound);
  const auto iso = cospanIso(evaluate(d.tree, d.atoms, CospanAlgebra{}), sourcesCospan(g, {}));
  if (iso.verdict == Iso::undecided) throw BudgetExceeded("isomorphism check undecided");
  rep.check("evaluates to the input", iso.verdict == Iso::isomorphic);
  emit(o, rep, fileOf(AlgebraKind::cospan, d.tree, d.atoms));
  return rep.failed() ? invalid : ok;
}

DanglingGraph danglingInput(const std::string& text) {
  if (!looksLikeJson(text)) {
    const NatMatrix a = simpleAdjacency(parseEdgeList(text));
    return {a, zeros(static_cast<std::size_t>(a.rows()), 0)};
  }
  const Json j = parseJson(text);
  if (j.contains("B")) return danglingFromJson(j);
  if (j.contains("entries")) {
    const NatMatrix a = matrixFromJson(j);
    if (a.rows() != a.cols()) throw ParseError("adjacency matrix must be square");
    return {a, zeros(static_cast<std::size_t>(a.rows()), 0)};
  }
  const NatMatrix a = simpleAdjacency(hypergraphFromJson(j));
  return {a, zeros(static_cast<std::size_t>(a.rows()), 0)};
}

int mwdUpperBoundary(const Options& o, Report& rep, const std::string& text) {
  const DanglingGraph gamma = danglingInput(text);
  const std::size_t k = gamma.vertices();
  rep["graph"] = Json{{"vertices", k}, {"ports", gamma.ports()}};
  InductiveRankDec ir;
  std::optional<std::size_t> oracle;
  try {
    const auto r = exactRankWidth(gamma.G, Field::Q, o.budget);
    oracle = r.width;
    rep["widths"]["oracle"] = r.width;
    ir = toInductiveRank(r.dec, gamma);
  } catch (const BudgetExceeded& e) {
    rep["oracle"] = std::string("refused: ") + e.what();
    ir = caterpillarRank(gamma);
  }
  rep.check("inductive decomposition valid", validateInductiveRank(ir));
  const std::size_t iw = inductiveRankWidth(ir);
  const auto pd = rTomdec(ir);
  const std::size_t w = width(pd.tree, pd.sig);
  rep["widths"]["inductive"] = iw;
  rep["widths"]["constructed"] = w;
  rep["widths"]["certified"] = pd.certified;
  rep["certificates"]["attainsFieldRank"] = pd.attainsFieldRank;
  rep["bound"] = "constructed <= 2 * largest inner dimension used, at least 1 with a vertex";
  rep.check("width within bound", w <= pd.certified);
  const PropGraphAlgebra alg{std::max<std::size_t>(10, o.budget.maxVertices)};
  const auto eq = equalUpToPermutation(evaluate(pd.tree, pd.sig, alg), asMorphism(gamma), alg.capK);
  if (eq.verdict == Iso::undecided) throw BudgetExceeded("permutation check undecided");
  rep.check("evaluates to the input up to vertex permutation", eq.verdict == Iso::isomorphic);
  emit(o, rep, fileOf(AlgebraKind::boundary, pd.tree, pd.sig));
  return rep.failed() ? invalid : ok;
}

int mwdUpper(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  rep["algebra"] = o.algebra;
  switch (algebraFromName(o.algebra)) {
    case AlgebraKind::matrix: return mwdUpperMatrix(o, rep, in.text);
    case AlgebraKind::cospan: return mwdUpperCospan(o, rep, in.text);
    case AlgebraKind::boundary: return mwdUpperBoundary(o, rep, in.text);
  }
  return usage;
}

void collectAtoms(const DecompTree& t, std::set<std::string>& ids) {
  if (t.isLeaf()) ids.insert(t.atom);
  for (const auto& c : t.children) collectAtoms(c, ids);
}

template <class A>
void checkAgainst(Report& rep, const DecompTree& t, const Signature<typename A::Morphism>& sig,
                  const A& alg, const typename A::Morphism& f) {
  std::set<std::string> ids;
  collectAtoms(t, ids);
  std::string missing;
  for (const auto& id : ids)
    if (!sig.contains(id)) missing += (missing.empty() ? "" : ", ") + id;
  rep.check("atoms known", missing.empty(), missing.empty() ? "" : "unknown atom " + missing);
  if (!missing.empty()) return;
  try {
    const Boundary b = typeOf(t, sig, alg);
    const bool same = b.domain == alg.domain(f) && b.codomain == alg.codomain(f);
    rep.check("boundaries agree", same,
              same ? "" : "boundary mismatch: tree is " + std::to_string(b.domain) + " -> " +
                              std::to_string(b.codomain) + ", morphism is " +
                              std::to_string(alg.domain(f)) + " -> " + std::to_string(alg.codomain(f)));
    if (!same) return;
  } catch (const TypeMismatch& e) {
    rep.check("boundaries agree", false, std::string("boundary mismatch: ") + e.what());
    return;
  }
  rep["widths"]["tree"] = width(t, sig);
  rep.check("evaluates to the morphism", alg.equal(evaluate(t, sig, alg), f));
}

int check(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  const std::string orig = readFile(o.original);
  rep["original"] = Json{{"source", o.original}, {"sha256", sha256(orig)}};
  const DecompositionFile f = decompositionFromJson(parseJson(in.text));
  rep["algebra"] = algebraName(f.algebra);
  const Json oj = parseJson(orig);
  switch (f.algebra) {
    case AlgebraKind::matrix:
      checkAgainst(rep, f.tree, f.matrixAtoms, BialgAlgebra{}, matrixFromJson(oj));
      break;
    case AlgebraKind::cospan:
      checkAgainst(rep, f.tree, f.cospanAtoms, CospanAlgebra{}, cospanFromJson(oj));
      break;
    case AlgebraKind::boundary:
      checkAgainst(rep, f.tree, f.boundaryAtoms, PropGraphAlgebra{}, boundaryGraphFromJson(oj));
      break;
  }
  return rep.failed() ? invalid : ok;
}

int convert(const Options& o, Report& rep) {
  const Loaded in = loadInput(o);
  rep.input(in);
  const Json j = parseJson(in.text);
  const auto needGraph = [&] {
    if (o.graph.empty()) throw ParseError("--graph is needed to convert a classical decomposition");
    return graphOf(readFile(o.graph));
  };
  Json out;
  if (j.contains("leafEdge")) {
    const Hypergraph g = needGraph();
    const BranchDec d = branchDecFromJson(j);
    try {
      checkBranchDec(d, g);
    } catch (const InvalidDecomposition& e) {
      rep.check("input decomposition valid", false, e.what());
      return invalid;
    }
    const auto t = toInductiveBranch(d, {g, {}});
    const std::size_t before = g.edges.empty() ? 0 : branchWidthOf(d, g);
    rep["kind"] = "branch -> inductive branch";
    rep["widths"]["input"] = before;
    rep["widths"]["output"] = inductiveBranchWidth(t);
    rep.check("output valid", validInductiveBranch(t));
    rep.check("output width <= input width + |sources|", inductiveBranchWidth(t) <= before);
    out = toJson(t);
    if (!o.dot.empty()) writeFile(o.dot, toDot(t, "branch"));
  } else if (j.contains("leafVertex")) {
    const NatMatrix a = simpleAdjacency(needGraph());
    const std::size_t k = static_cast<std::size_t>(a.rows());
    const RankDec d = rankDecFromJson(j);
    try {
      checkRankDec(d, k);
    } catch (const InvalidDecomposition& e) {
      rep.check("input decomposition valid", false, e.what());
      return invalid;
    }
    const auto t = toInductiveRank(d, DanglingGraph{a, zeros(k, 0)});
    const Field field = fieldOf(o.field);
    rep["kind"] = "rank -> inductive rank";
    rep["widths"]["input"] = rankWidthOf(d, a, field);
    rep["widths"]["output"] = inductiveRankWidth(t, field);
    rep.check("output valid", validateInductiveRank(t));
    rep.check("output width <= input width + rank of dangling edges",
              inductiveRankWidth(t, field) <= rankWidthOf(d, a, field));
    out = toJson(t);
    if (!o.dot.empty()) writeFile(o.dot, toDot(t, "rank"));
  } else if (j.contains("graph") && j["graph"].contains("vertices")) {
    const auto t = inductiveBranchFromJson(j);
    if (const auto err = inductiveBranchError(t)) {
      rep.check("input decomposition valid", false, *err);
      return invalid;
    }
    const BranchDec d = fromInductiveBranch(t);
    const std::size_t after = t.graph.edges.empty() ? 0 : branchWidthOf(d, t.graph);
    rep["kind"] = "inductive branch -> branch";
    rep["widths"]["input"] = inductiveBranchWidth(t);
    rep["widths"]["output"] = after;
    rep.check("output width <= input width", after <= inductiveBranchWidth(t));
    out = toJson(d);
  } else if (j.contains("graph")) {
    const auto t = inductiveRankFromJson(j);
    if (const auto err = inductiveRankError(t)) {
      rep.check("input decomposition valid", false, *err);
      return invalid;
    }
    const Field field = fieldOf(o.field);
    const RankDec d = fromInductiveRank(t);
    const std::size_t after = rankWidthOf(d, t.graph.G, field);
    rep["kind"] = "inductive rank -> rank";
    rep["widths"]["input"] = inductiveRankWidth(t, field);
    rep["widths"]["output"] = after;
    rep.check("output width <= input width", after <= inductiveRankWidth(t, field));
    out = toJson(d);
  } else {
    throw ParseError("not a branch, rank, inductive branch or inductive rank decomposition");
  }
  if (!rep.failed()) writeFile(o.out, out.dump(2) + "\n");
  return rep.failed() ? invalid : ok;
}

void budgetFlags(CLI::App* sub, Options& o) {
  sub->add_option("--budget-edges", o.budget.maxEdges, "oracle edge limit")->capture_default_str();
  sub->add_option("--budget-vertices", o.budget.maxVertices, "oracle vertex limit")->capture_default_str();
  sub->add_option("--budget-entry", o.budget.maxEntry, "largest matrix entry for the matrix oracle")
      ->capture_default_str();
  sub->add_option("--budget-inner-dim", o.budget.maxInnerDim, "largest matrix side for the matrix oracle")
      ->capture_default_str();
  sub->add_option("--budget-time-ms", o.timeMs, "oracle time limit")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monoidal width of matrices, cospans of hypergraphs and graphs with boundaries"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "print the report as JSON");

  const auto graphInput = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "edge list or JSON hypergraph");
    sub->add_option("--random", o.random, "use a random simple graph on this many vertices instead");
    sub->add_option("--seed", o.seed, "seed for --random")->capture_default_str();
    sub->add_option("--dot", o.dot, "write a Graphviz rendering of the decomposition");
    budgetFlags(sub, o);
  };

  auto* bw = app.add_subcommand("branch-width", "exact branch width and an inductive decomposition");
  graphInput(bw);
  bw->add_option("--out", o.out, "write the optimal branch decomposition");
  auto* rw = app.add_subcommand("rank-width", "exact rank width and an inductive decomposition");
  graphInput(rw);
  rw->add_option("--field", o.field, "field for ranks")->check(CLI::IsMember({"Q", "GF2"}))->capture_default_str();
  rw->add_option("--out", o.out, "write the optimal rank decomposition");
  auto* tw = app.add_subcommand("tree-width", "exact tree width as max bag size");
  graphInput(tw);
  auto* mu = app.add_subcommand("mwd-upper", "construct and validate a monoidal decomposition");
  graphInput(mu);
  mu->add_option("--algebra", o.algebra, "matrix, cospan or boundary")
      ->check(CLI::IsMember({"matrix", "cospan", "boundary"}))
      ->capture_default_str();
  mu->add_option("--out", o.out, "write the decomposition file");
  auto* ck = app.add_subcommand("check", "validate a decomposition file against a morphism");
  ck->add_option("decomposition", o.input, "decomposition file")->required();
  ck->add_option("morphism", o.original, "matrix, cospan or graph with boundaries")->required();
  auto* cv = app.add_subcommand("convert", "between classical and inductive branch or rank decompositions");
  cv->add_option("input", o.input, "decomposition file")->required();
  cv->add_option("--graph", o.graph, "graph of a classical decomposition");
  cv->add_option("--field", o.field, "field for ranks")->check(CLI::IsMember({"Q", "GF2"}))->capture_default_str();
  cv->add_option("--out", o.out, "write the converted decomposition")->required();
  cv->add_option("--dot", o.dot, "write a Graphviz rendering of an inductive output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  o.budget.timeLimit = std::chrono::milliseconds(o.timeMs);

  CLI::App* sub = app.get_subcommands().front();
  Report rep(sub->get_name());
  int code = ok;
  try {
    if (sub == bw) code = branchWidth(o, rep);
    else if (sub == rw) code = rankWidth(o, rep);
    else if (sub == tw) code = treeWidth(o, rep);
    else if (sub == mu) code = mwdUpper(o, rep);
    else if (sub == ck) code = check(o, rep);
    else code = convert(o, rep);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return unparsable;
  } catch (const BudgetExceeded& e) {
    rep["refused"] = e.what();
    code = refused;
  } catch (const FactorizationCapExceeded& e) {
    rep["refused"] = e.what();
    code = refused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
  rep["exit"] = code;
  rep.print(o.json);
  return code;
}
