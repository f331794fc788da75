#include "monowidth/decomposition.hpp"

#include <sstream>

namespace monowidth {

std::size_t nodeCount(const DecompTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += nodeCount(c);
  return n;
}

std::size_t depth(const DecompTree& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, depth(c));
  return d + 1;
}

namespace {

std::size_t emit(const DecompTree& t, std::ostringstream& os, std::size_t& next) {
  const std::size_t id = next++;
  switch (t.kind) {
    case DecompTree::Kind::leaf:
      os << "  n" << id << " [shape=box,label=\"" << t.atom << "\"];\n";
      break;
    case DecompTree::Kind::tensor:
      os << "  n" << id << " [shape=circle,label=\"&otimes;\"];\n";
      break;
    case DecompTree::Kind::compose:
      os << "  n" << id << " [shape=circle,label=\";" << t.cut << "\"];\n";
      break;
  }
  for (const auto& c : t.children) {
    const std::size_t child = emit(c, os, next);
    os << "  n" << id << " -> n" << child << ";\n";
  }
  return id;
}

}  // namespace

std::string toDot(const DecompTree& t, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  std::size_t next = 0;
  emit(t, os, next);
  os << "}\n";
  return os.str();
}

}  // namespace monowidth
