#include "coxq/dot.hpp"

#include <sstream>

namespace coxq {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string graph_dot(const BwGraph& g) {
  std::ostringstream out;
  out << "graph coxeter {\n  node [shape=circle];\n";
  for (int i = 0; i < g.size(); ++i) {
    out << "  " << quoted(g.name(i));
    if (g.black(i)) out << " [style=filled, fillcolor=black, fontcolor=white]";
    out << ";\n";
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      int m = g.bond(a, b);
      if (m == 2) continue;
      out << "  " << quoted(g.name(a)) << " -- " << quoted(g.name(b));
      if (m >= 4) {
        out << " [label=\"";
        if (m == kInfiniteBond)
          out << "inf";
        else
          out << m;
        out << "\"]";
      }
      out << ";\n";
    }
  out << "}\n";
  return out.str();
}

std::string poset_dot(const Poset& p) {
  std::ostringstream out;
  out << "graph bruhat {\n  rankdir=BT;\n  node [shape=box];\n";
  auto node_name = [&](int v) {
    return quoted(p.labels[v].empty() ? std::string("e") : p.labels[v]);
  };
  for (int l = 0; l <= p.top_rank(); ++l) {
    auto [a, b] = p.level_range(l);
    out << "  { rank=same;";
    for (int v = a; v < b; ++v) out << ' ' << node_name(v) << ';';
    out << " }\n";
  }
  for (auto [lo, hi] : p.covers)
    out << "  " << node_name(lo) << " -- " << node_name(hi) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace coxq
