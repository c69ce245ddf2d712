#include "coxq/reconstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "coxq/isomorphism.hpp"
#include "coxq/recognize.hpp"

namespace coxq {

namespace {

constexpr size_t kMaxBlindAssignments = 20'000;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Partition `elems` into ~-classes; pairs undecidable at the truncation
// boundary are treated as unrelated and recorded in `caveats`.
std::vector<std::vector<int>> sim_classes(const Analyzer& a,
                                          const std::vector<int>& elems,
                                          std::vector<std::string>& caveats) {
  UnionFind uf(static_cast<int>(elems.size()));
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j) {
      auto s = a.sim(elems[i], elems[j]);
      if (!s) {
        caveats.push_back("~ undecided for " + a.poset().labels[elems[i]] +
                          ", " + a.poset().labels[elems[j]] +
                          " at the truncation boundary");
        continue;
      }
      if (*s) uf.unite(static_cast<int>(i), static_cast<int>(j));
    }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < elems.size(); ++i)
    groups[uf.find(static_cast<int>(i))].push_back(elems[i]);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  return out;
}

// Merge an edge label obtained from a second rule instance.
BoundVal merge_label(const BoundVal& a, const BoundVal& b) {
  using S = BoundVal::Status;
  if (a.status == S::Exact && b.status == S::Exact) {
    if (a.value != b.value)
      throw ConsistencyError("conflicting edge labels " + a.to_string() +
                             " vs " + b.to_string());
    return a;
  }
  if (a.status == S::Exact) {
    if (b.status == S::AtLeast && b.value > a.value)
      throw ConsistencyError("edge label " + a.to_string() +
                             " contradicts bound " + b.to_string());
    return a;
  }
  if (b.status == S::Exact) return merge_label(b, a);
  return BoundVal::at_least(std::max(a.value, b.value));
}

struct EdgeTable {
  int n;
  std::vector<char> drawn;
  std::vector<BoundVal> label;  // Unknown = no label yet
  explicit EdgeTable(int nodes)
      : n(nodes), drawn(nodes * nodes, 0), label(nodes * nodes) {}

  void draw(int i, int j) { drawn[i * n + j] = drawn[j * n + i] = 1; }
  void set_label(int i, int j, BoundVal v) {
    draw(i, j);
    BoundVal& cur = label[i * n + j];
    cur = (cur.status == BoundVal::Status::Unknown) ? v : merge_label(cur, v);
    label[j * n + i] = cur;
  }
};

Reconstruction finish(const Poset& p, const std::vector<std::vector<int>>& classes,
                      const EdgeTable& edges, std::vector<std::string> caveats) {
  Reconstruction r;
  const int n = static_cast<int>(classes.size());
  r.caveats = std::move(caveats);
  r.bonds.assign(n * n, BoundVal::exact(2));
  for (int i = 0; i < n; ++i) {
    r.names.push_back("c" + std::to_string(i));
    bool blk = false;
    for (int v : classes[i]) {
      r.class_of[v] = i;
      if (p.rank[v] == 1) blk = true;
    }
    r.black.push_back(blk ? 1 : 0);
    r.bonds[i * n + i] = BoundVal::exact(1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!edges.drawn[i * edges.n + j]) continue;
      BoundVal l = edges.label[i * edges.n + j];
      if (l.status == BoundVal::Status::Unknown) l = BoundVal::exact(3);
      r.bonds[i * n + j] = r.bonds[j * n + i] = l;
    }
  return r;
}

}  // namespace

std::optional<BwGraph> Reconstruction::to_graph() const {
  for (const auto& b : bonds)
    if (b.status != BoundVal::Status::Exact) return std::nullopt;
  BwGraph g(names);
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i) {
    g.set_black(i, black[i] != 0);
    for (int j = i + 1; j < n; ++j)
      g.set_bond(i, j, static_cast<int>(bond(i, j).value));
  }
  return g;
}

std::string Reconstruction::to_text() const {
  std::ostringstream out;
  out << "nodes:";
  for (const auto& name : names) out << ' ' << name;
  out << "\nblack:";
  for (size_t i = 0; i < size(); ++i)
    if (black[i]) out << ' ' << names[i];
  out << "\nedges:\n";
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BoundVal b = bond(i, j);
      if (b.exact_eq(2)) continue;
      out << names[i] << ' ' << names[j] << ' ';
      if (b.status == BoundVal::Status::Exact)
        out << b.value;
      else
        out << ">=" << b.value;
      out << '\n';
    }
  for (const auto& c : caveats) out << "# caveat: " << c << '\n';
  return out.str();
}

std::string Reconstruction::to_dot() const {
  std::ostringstream out;
  out << "graph coxeter {\n  node [shape=circle];\n";
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i) {
    out << "  \"" << names[i] << "\"";
    if (black[i]) out << " [style=filled, fillcolor=black, fontcolor=white]";
    out << ";\n";
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BoundVal b = bond(i, j);
      if (b.exact_eq(2)) continue;
      out << "  \"" << names[i] << "\" -- \"" << names[j] << "\"";
      if (!b.exact_eq(3)) {
        out << " [label=\"";
        if (b.status == BoundVal::Status::Exact) {
          if (b.value == kInfiniteBond)
            out << "inf";
          else
            out << b.value;
        } else {
          out << ">=" << b.value;
        }
        out << "\"]";
      }
      out << ";\n";
    }
  out << "}\n";
  return out.str();
}

Reconstruction reconstruct_simply_laced(const Poset& p) {
  Analyzer a(p);
  std::vector<std::string> caveats;
  const auto& chain = a.chainlikes();
  auto classes = sim_classes(a, chain, caveats);
  std::map<int, int> node_of;
  for (size_t c = 0; c < classes.size(); ++c)
    for (int v : classes[c]) node_of[v] = static_cast<int>(c);

  EdgeTable edges(static_cast<int>(classes.size()));
  for (int v : chain) {
    int u = a.parent(v);
    if (u != 0 && node_of.at(u) != node_of.at(v))
      edges.draw(node_of.at(u), node_of.at(v));
  }
  for (size_t i = 0; i < chain.size(); ++i)
    for (size_t j = i + 1; j < chain.size(); ++j) {
      int u = chain[i], v = chain[j];
      if (a.parent(u) != a.parent(v) || node_of.at(u) == node_of.at(v))
        continue;
      if (!p.ups_complete(u) || !p.ups_complete(v)) {
        caveats.push_back("common covers of " + p.labels[u] + ", " +
                          p.labels[v] + " unknown at the truncation boundary");
        continue;
      }
      int common = 0;
      for (int w : p.ups(u)) {
        const auto& d = p.downs(w);
        if (std::find(d.begin(), d.end(), v) != d.end()) ++common;
      }
      if (common == 2) edges.draw(node_of.at(u), node_of.at(v));
    }
  return finish(p, classes, edges, std::move(caveats));
}

Reconstruction reconstruct(const Poset& p, const std::map<int, Form>& forms) {
  Analyzer a(p);
  std::vector<std::string> caveats;

  // Validate the form assignment before using it.
  for (int v : a.chainlikes()) {
    auto it = forms.find(v);
    if (it == forms.end())
      throw std::invalid_argument("reconstruct: no form for chainlike " +
                                  p.labels[v]);
    Form f = it->second;
    if ((f == Form::II && p.rank[v] < 3) || (f == Form::III && p.rank[v] < 4))
      throw ConsistencyError("form " + form_name(f) + " impossible at length " +
                             std::to_string(p.rank[v]));
    int u = a.parent(v);
    if (u != 0) {
      Form fu = forms.at(u);
      bool ok = (f == Form::I && fu == Form::I) ||
                (f == Form::II && fu != Form::III) ||
                (f == Form::III && fu != Form::I);
      if (!ok)
        throw ConsistencyError("form " + form_name(f) + " below form " +
                               form_name(fu) + " is inconsistent");
    } else if (f != Form::I) {
      throw ConsistencyError("atoms must be simple");
    }
  }

  std::vector<int> form1;
  for (int v : a.chainlikes())
    if (forms.at(v) == Form::I) form1.push_back(v);
  auto classes = sim_classes(a, form1, caveats);
  std::map<int, int> node_of;
  for (size_t c = 0; c < classes.size(); ++c)
    for (int v : classes[c]) node_of[v] = static_cast<int>(c);

  EdgeTable edges(static_cast<int>(classes.size()));
  // Step 2 (a): parent crossings between classes.
  for (int v : form1) {
    int u = a.parent(v);
    if (u != 0 && node_of.at(u) != node_of.at(v))
      edges.draw(node_of.at(u), node_of.at(v));
  }
  // Step 2 (b): shared parents, labels from the M iteration.
  for (size_t i = 0; i < form1.size(); ++i)
    for (size_t j = i + 1; j < form1.size(); ++j) {
      int u = form1[i], v = form1[j];
      if (a.parent(u) != a.parent(v) || node_of.at(u) == node_of.at(v))
        continue;
      BoundVal m = a.M_shared_parent(u, v);
      int cu = node_of.at(u), cv = node_of.at(v);
      switch (m.status) {
        case BoundVal::Status::Exact:
          if (m.value >= 4)
            edges.set_label(cu, cv, m);
          else if (m.value == 3)
            edges.draw(cu, cv);
          break;
        case BoundVal::Status::AtLeast:
          if (m.value >= 4) {
            edges.set_label(cu, cv, m);
          } else if (m.value == 3) {
            edges.set_label(cu, cv, m);
            caveats.push_back("label of edge " + std::to_string(cu) + "-" +
                              std::to_string(cv) + " truncated at M >= 3");
          } else {
            caveats.push_back("M(" + p.labels[u] + ", " + p.labels[v] +
                              ") unknown at the truncation boundary");
          }
          break;
        case BoundVal::Status::Unknown:
          throw ConsistencyError("M iteration ran off the top of the poset");
      }
    }
  // Step 3: a form-II element u over a form-I parent carries the label
  // q + 4, with q the number of form-III elements above u.
  for (int v : a.chainlikes()) {
    if (forms.at(v) != Form::II) continue;
    int u1 = a.parent(v);
    if (forms.at(u1) != Form::I) continue;
    int u2 = a.parent(u1);
    if (u2 == 0)
      throw ConsistencyError("form-II element " + p.labels[v] +
                             " has no grandparent");
    long long q = 0;
    int w = v;
    BoundVal lab = BoundVal::unknown();
    for (;;) {
      if (!p.ups_complete(w)) {
        lab = BoundVal::at_least(q + 4);
        caveats.push_back("form-III tower above " + p.labels[v] +
                          " reaches the truncation boundary");
        break;
      }
      int next = -1;
      for (int z : p.ups(w)) {
        auto it = forms.find(z);
        if (it != forms.end() && it->second == Form::III) next = z;
      }
      if (next < 0) {
        lab = BoundVal::exact(q + 4);
        break;
      }
      w = next;
      ++q;
    }
    edges.set_label(node_of.at(u1), node_of.at(u2), lab);
  }
  return finish(p, classes, edges, std::move(caveats));
}

// ---------------------------------------------------------------------------
// Blind form resolution.

namespace {

void enumerate_assignments(const Poset& p, const Analyzer& a,
                           const std::vector<int>& order, size_t at,
                           std::map<int, Form>& current,
                           std::vector<std::map<int, Form>>& out) {
  if (at == order.size()) {
    out.push_back(current);
    if (out.size() > kMaxBlindAssignments)
      throw ResourceError("too many candidate form assignments");
    return;
  }
  int v = order[at];
  int u = a.parent(v);
  Form fu = (u == 0) ? Form::I : current.at(u);
  auto allowed = [&](Form f) {
    if (f == Form::II && p.rank[v] < 3) return false;
    if (f == Form::III && p.rank[v] < 4) return false;
    switch (f) {
      case Form::I: return fu == Form::I;
      case Form::II: return fu != Form::III;
      case Form::III: return fu != Form::I;
    }
    return false;
  };
  for (Form f : {Form::I, Form::II, Form::III}) {
    if (!allowed(f)) continue;
    current[v] = f;
    enumerate_assignments(p, a, order, at + 1, current, out);
    current.erase(v);
  }
}

}  // namespace

BlindResolution resolve_forms_blind(const Poset& p) {
  if (!p.complete)
    throw std::invalid_argument(
        "blind form resolution requires a complete poset");
  Analyzer a(p);
  std::vector<int> order = a.chainlikes();  // index order = rank order
  std::vector<std::map<int, Form>> candidates;
  std::map<int, Form> current;
  enumerate_assignments(p, a, order, 0, current, candidates);

  BlindResolution out;
  for (const auto& cand : candidates) {
    try {
      Reconstruction rec = reconstruct(p, cand);
      auto g = rec.to_graph();
      if (!g) continue;
      Poset regen = enumerate_quotient(*g, p.top_rank() + 1);
      if (!regen.complete || regen.size() != p.size()) continue;
      if (!are_isomorphic(p, regen)) continue;
      bool duplicate = false;
      for (const auto& prev : out.assignments) {
        auto pg = reconstruct(p, prev).to_graph();
        if (pg && graphs_isomorphic(*pg, *g)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) out.assignments.push_back(cand);
    } catch (const ConsistencyError&) {
    } catch (const ResourceError&) {
    }
  }
  out.exceptional = out.assignments.size() > 1;
  return out;
}

// ---------------------------------------------------------------------------
// Reducible decomposition.

Decomposition decompose(const Poset& p) {
  Analyzer a(p);
  auto [afirst, alast] = p.size() > 1 && p.top_rank() >= 1
                             ? p.level_range(1)
                             : std::pair<int, int>{0, 0};
  std::vector<int> atoms;
  for (int v = afirst; v < alast; ++v) atoms.push_back(v);
  const int na = static_cast<int>(atoms.size());
  std::vector<int> atom_slot(p.size(), -1);
  for (int i = 0; i < na; ++i) atom_slot[atoms[i]] = i;

  UnionFind uf(na);
  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j)
      if (a.M_shared_parent(atoms[i], atoms[j]).at_least_ge(3))
        uf.unite(i, j);
  const auto& chain = a.chainlikes();
  for (size_t i = 0; i < chain.size(); ++i)
    for (size_t j = i + 1; j < chain.size(); ++j) {
      int ai = atom_slot[a.atom_of(chain[i])];
      int aj = atom_slot[a.atom_of(chain[j])];
      if (uf.find(ai) == uf.find(aj)) continue;
      auto s = a.sim(chain[i], chain[j]);
      if (s && *s) uf.unite(ai, aj);
    }

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < na; ++i) groups[uf.find(i)].push_back(atoms[i]);

  Decomposition out;
  for (auto& [root, comp] : groups) out.atom_components.push_back(comp);
  std::sort(out.atom_components.begin(), out.atom_components.end());

  // Generator components of the source graph, when present, for attaching
  // factor graphs and counting all-white (trivial) components.
  std::vector<std::vector<Gen>> gcomps;
  if (p.graph) {
    std::vector<Gen> all(p.graph->size());
    std::iota(all.begin(), all.end(), 0);
    gcomps = graph_components(*p.graph, all);
    for (const auto& comp : gcomps) {
      bool has_black = false;
      for (Gen s : comp) has_black |= p.graph->black(s);
      if (!has_black) ++out.trivial_count;
    }
  }

  for (const auto& comp : out.atom_components) {
    std::vector<char> in_comp(p.size(), 0);
    for (int v : comp) in_comp[v] = 1;
    // Elements whose atoms all lie in this component (the identity included).
    std::vector<int> keep;
    std::vector<int> new_id(p.size(), -1);
    for (int v = 0; v < p.size(); ++v) {
      bool ok = true;
      for (int u = afirst; u < alast && ok; ++u)
        if (!in_comp[u] && a.leq(u, v)) ok = false;
      if (ok) {
        new_id[v] = static_cast<int>(keep.size());
        keep.push_back(v);
      }
    }
    Poset f;
    for (int v : keep) {
      f.labels.push_back(p.labels[v]);
      f.rank.push_back(p.rank[v]);
    }
    for (auto [lo, hi] : p.covers)
      if (new_id[lo] >= 0 && new_id[hi] >= 0)
        f.covers.push_back({new_id[lo], new_id[hi]});
    f.max_length = p.max_length;
    int ftop = f.rank.empty() ? 0 : *std::max_element(f.rank.begin(), f.rank.end());
    f.complete = p.complete || ftop < p.max_length;
    if (p.graph) {
      // Locate the graph component holding this factor's black generators.
      std::optional<int> which;
      for (int v : comp) {
        const Word& w = p.words[v];
        for (size_t c = 0; c < gcomps.size(); ++c)
          if (std::find(gcomps[c].begin(), gcomps[c].end(), w[0]) !=
              gcomps[c].end())
            which = static_cast<int>(c);
      }
      if (which) {
        const auto& gens = gcomps[*which];
        BwGraph sub = induced_subgraph(*p.graph, gens);
        std::vector<int> remap(p.graph->size(), -1);
        for (size_t i = 0; i < gens.size(); ++i)
          remap[gens[i]] = static_cast<int>(i);
        f.graph = sub;
        for (int v : keep) {
          Word w;
          for (Gen s : p.words[v]) {
            if (remap[s] < 0)
              throw ConsistencyError(
                  "factor element uses a generator outside its component");
            w.push_back(remap[s]);
          }
          f.words.push_back(std::move(w));
        }
        for (size_t i = 0; i < f.words.size(); ++i)
          f.labels[i] = format_word(sub, f.words[i]);
      }
    }
    f.finalize();
    out.factors.push_back(std::move(f));
  }
  return out;
}

}  // namespace coxq
