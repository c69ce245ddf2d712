#include "coxq/coxeter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace coxq {

// ---------------------------------------------------------------------------
// BwGraph

BwGraph::BwGraph(std::vector<std::string> names)
    : names_(std::move(names)),
      m_(names_.size() * names_.size(), 2),
      black_(names_.size(), 0) {
  for (int i = 0; i < size(); ++i) m_[i * size() + i] = 1;
}

std::optional<Gen> BwGraph::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

void BwGraph::set_bond(Gen a, Gen b, int m) {
  if (a == b) throw std::invalid_argument("set_bond: a == b");
  m_[a * size() + b] = m;
  m_[b * size() + a] = m;
}

std::vector<Gen> BwGraph::black_gens() const {
  std::vector<Gen> out;
  for (int i = 0; i < size(); ++i)
    if (black_[i]) out.push_back(i);
  return out;
}

std::vector<Gen> BwGraph::white_gens() const {
  std::vector<Gen> out;
  for (int i = 0; i < size(); ++i)
    if (!black_[i]) out.push_back(i);
  return out;
}

bool BwGraph::any_black() const {
  return std::any_of(black_.begin(), black_.end(), [](char c) { return c; });
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

BwGraph parse_bw_graph(std::string_view text) {
  std::vector<std::string> node_names;
  std::vector<std::string> black_names;
  std::vector<std::array<std::string, 3>> edges;
  bool saw_nodes = false, in_edges = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto tok = tokenize(raw);
    if (tok.empty()) continue;
    auto err = [&](const std::string& msg) -> ParseError {
      return ParseError("graph line " + std::to_string(lineno) + ": " + msg);
    };
    if (tok[0] == "nodes:") {
      if (saw_nodes) throw err("duplicate nodes: line");
      saw_nodes = true;
      node_names.assign(tok.begin() + 1, tok.end());
      if (node_names.empty()) throw err("empty node list");
    } else if (tok[0] == "black:") {
      black_names.insert(black_names.end(), tok.begin() + 1, tok.end());
    } else if (tok[0] == "edges:") {
      if (tok.size() != 1) throw err("edges: takes no inline arguments");
      in_edges = true;
    } else if (in_edges) {
      if (tok.size() != 3) throw err("expected '<name> <name> <label>'");
      edges.push_back({tok[0], tok[1], tok[2]});
    } else {
      throw err("unexpected content before edges:");
    }
  }
  if (!saw_nodes) throw ParseError("graph: missing nodes: line");
  {
    auto sorted = node_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("graph: duplicate node name");
  }

  BwGraph g(node_names);
  for (const auto& b : black_names) {
    auto i = g.find(b);
    if (!i) throw ParseError("graph: unknown black node '" + b + "'");
    g.set_black(*i, true);
  }
  for (const auto& [an, bn, label] : edges) {
    auto a = g.find(an), b = g.find(bn);
    if (!a || !b)
      throw ParseError("graph: unknown edge endpoint '" + an + " " + bn + "'");
    if (*a == *b) throw ParseError("graph: self edge on '" + an + "'");
    if (g.bond(*a, *b) != 2)
      throw ParseError("graph: duplicate edge '" + an + " " + bn + "'");
    int m;
    if (label == "inf") {
      m = kInfiniteBond;
    } else {
      try {
        size_t pos = 0;
        m = std::stoi(label, &pos);
        if (pos != label.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("graph: bad edge label '" + label + "'");
      }
      if (m < 3) throw ParseError("graph: edge label must be >= 3 or inf");
    }
    g.set_bond(*a, *b, m);
  }
  return g;
}

std::string format_bw_graph(const BwGraph& g) {
  std::ostringstream out;
  out << "nodes:";
  for (int i = 0; i < g.size(); ++i) out << ' ' << g.name(i);
  out << "\nblack:";
  for (Gen b : g.black_gens()) out << ' ' << g.name(b);
  out << "\nedges:\n";
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      int m = g.bond(a, b);
      if (m == 2) continue;
      out << g.name(a) << ' ' << g.name(b) << ' ';
      if (m == kInfiniteBond)
        out << "inf";
      else
        out << m;
      out << '\n';
    }
  return out.str();
}

BwGraph induced_subgraph(const BwGraph& g, const std::vector<Gen>& gens) {
  std::vector<std::string> names;
  names.reserve(gens.size());
  for (Gen a : gens) names.push_back(g.name(a));
  BwGraph sub(names);
  for (size_t i = 0; i < gens.size(); ++i) {
    sub.set_black(static_cast<Gen>(i), g.black(gens[i]));
    for (size_t j = i + 1; j < gens.size(); ++j)
      sub.set_bond(static_cast<Gen>(i), static_cast<Gen>(j),
                   g.bond(gens[i], gens[j]));
  }
  return sub;
}

std::string format_word(const BwGraph& g, const Word& w) {
  bool single = true;
  for (int i = 0; i < g.size(); ++i)
    if (g.name(i).size() != 1) single = false;
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += '.';
    out += g.name(w[i]);
  }
  return out;
}

Word parse_word(const BwGraph& g, std::string_view text) {
  Word out;
  if (text.empty()) return out;
  bool single = true;
  for (int i = 0; i < g.size(); ++i)
    if (g.name(i).size() != 1) single = false;
  if (single) {
    for (char c : text) {
      auto i = g.find(std::string_view(&c, 1));
      if (!i) throw ParseError("word: unknown generator '" + std::string(1, c) + "'");
      out.push_back(*i);
    }
  } else {
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t dot = text.find('.', pos);
      auto piece = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
      auto i = g.find(piece);
      if (!i) throw ParseError("word: unknown generator '" + std::string(piece) + "'");
      out.push_back(*i);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Braid closure / reduction.  Words are packed as std::string (one char per
// generator id) internally; lexicographic comparison on the packed form
// matches generator-id order.

namespace {

std::string pack(const Word& w) {
  std::string s(w.size(), '\0');
  for (size_t i = 0; i < w.size(); ++i) s[i] = static_cast<char>(w[i]);
  return s;
}

Word unpack(const std::string& s) {
  Word w(s.size());
  for (size_t i = 0; i < s.size(); ++i) w[i] = static_cast<unsigned char>(s[i]);
  return w;
}

// Applies every braid move available in `w`, invoking fn(result).
template <typename Fn>
void for_each_braid_move(const BwGraph& g, const std::string& w, Fn&& fn) {
  const int n = static_cast<int>(w.size());
  for (int i = 0; i + 1 < n; ++i) {
    const char a = w[i], b = w[i + 1];
    if (a == b) continue;
    const int m = g.bond(a, b);
    if (m == kInfiniteBond || i + m > n) continue;
    bool alt = true;
    for (int j = 2; j < m; ++j)
      if (w[i + j] != w[i + (j % 2)]) {
        alt = false;
        break;
      }
    if (!alt) continue;
    std::string next = w;
    for (int j = 0; j < m; ++j) next[i + j] = (j % 2) ? a : b;
    fn(std::move(next));
  }
}

// Position of an adjacent equal pair, or -1.
int find_nil(const std::string& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return static_cast<int>(i);
  return -1;
}

// BFS over braid moves from `start`.  If a word containing a nil move is
// found, returns it via `nil_word` and stops early.  Otherwise fills
// `visited` with the complete closure.
bool closure_bfs(const BwGraph& g, const std::string& start, std::uint64_t cap,
                 std::unordered_set<std::string>& visited,
                 std::string* nil_word) {
  if (int i = find_nil(start); i >= 0) {
    *nil_word = start;
    return true;
  }
  visited.insert(start);
  std::deque<std::string> queue{start};
  bool found_nil = false;
  while (!queue.empty() && !found_nil) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    for_each_braid_move(g, cur, [&](std::string next) {
      if (found_nil || visited.count(next)) return;
      if (find_nil(next) >= 0) {
        *nil_word = std::move(next);
        found_nil = true;
        return;
      }
      if (visited.size() >= cap)
        throw ResourceError("braid closure cap exceeded (" +
                            std::to_string(cap) + " words)");
      visited.insert(next);
      queue.push_back(std::move(next));
    });
  }
  return found_nil;
}

struct PackedReduced {
  std::string canonical;
  bool min_rep;
};

PackedReduced reduce_packed(const BwGraph& g, std::string w, std::uint64_t cap) {
  for (;;) {
    // Strip directly visible nil moves first.
    for (int i; (i = find_nil(w)) >= 0;) w.erase(i, 2);
    std::unordered_set<std::string> visited;
    std::string nil_word;
    if (closure_bfs(g, w, cap, visited, &nil_word)) {
      int i = find_nil(nil_word);
      nil_word.erase(i, 2);
      w = std::move(nil_word);
      continue;
    }
    // `w` is reduced; the closure is complete in `visited`.
    std::string best = w;
    bool min_rep = true;
    for (const auto& x : visited) {
      if (x < best) best = x;
      if (!x.empty() && !g.black(static_cast<unsigned char>(x.back())))
        min_rep = false;
    }
    if (w.empty()) min_rep = true;  // identity is always a representative
    return {std::move(best), min_rep};
  }
}

}  // namespace

std::vector<Word> braid_closure(const BwGraph& g, const Word& w,
                                std::uint64_t cap) {
  std::unordered_set<std::string> visited;
  std::deque<std::string> queue{pack(w)};
  visited.insert(queue.front());
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    for_each_braid_move(g, cur, [&](std::string next) {
      if (visited.count(next)) return;
      if (visited.size() >= cap)
        throw ResourceError("braid closure cap exceeded (" +
                            std::to_string(cap) + " words)");
      visited.insert(next);
      queue.push_back(std::move(next));
    });
  }
  std::vector<std::string> packed(visited.begin(), visited.end());
  std::sort(packed.begin(), packed.end());
  std::vector<Word> out;
  out.reserve(packed.size());
  for (const auto& p : packed) out.push_back(unpack(p));
  return out;
}

Element reduce(const BwGraph& g, const Word& w, std::uint64_t cap) {
  return {unpack(reduce_packed(g, pack(w), cap).canonical)};
}

Element multiply_left(const BwGraph& g, Gen s, const Element& w,
                      std::uint64_t cap) {
  Word prod;
  prod.reserve(w.canonical.size() + 1);
  prod.push_back(s);
  prod.insert(prod.end(), w.canonical.begin(), w.canonical.end());
  return reduce(g, prod, cap);
}

bool is_min_coset_rep(const BwGraph& g, const Element& w, std::uint64_t cap) {
  return reduce_packed(g, pack(w.canonical), cap).min_rep;
}

ReducedInfo reduce_with_coset_info(const BwGraph& g, const Word& w,
                                   std::uint64_t cap) {
  auto r = reduce_packed(g, pack(w), cap);
  return {Element{unpack(r.canonical)}, r.min_rep};
}

}  // namespace coxq
