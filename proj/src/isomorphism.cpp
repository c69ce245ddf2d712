#include "coxq/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "coxq/catalog.hpp"
#include "coxq/chainlike.hpp"
#include "coxq/recognize.hpp"
#include "coxq/todd_coxeter.hpp"

namespace coxq {

namespace {

// ---------------------------------------------------------------------------
// Refinement + backtracking engine shared by the isomorphism and
// automorphism searches.

bool profiles_match(const Poset& p, const Poset& q) {
  if (p.size() != q.size() || p.complete != q.complete) return false;
  if (!p.complete && p.max_length != q.max_length) return false;
  if (p.covers.size() != q.covers.size()) return false;
  if (p.num_levels() != q.num_levels()) return false;
  for (int l = 0; l < p.num_levels(); ++l)
    if (p.level_range(l) != q.level_range(l)) return false;
  return true;
}

// Joint iterative color refinement over both posets; the initial color is
// the rank, then (color, down colors, up colors) signatures are hashed to
// shared ids until a fixpoint.
void refine_colors(const Poset& p, const Poset& q, std::vector<int>& cp,
                   std::vector<int>& cq) {
  const int n = p.size();
  cp.assign(n, 0);
  cq.assign(n, 0);
  for (int v = 0; v < n; ++v) cp[v] = p.rank[v], cq[v] = q.rank[v];
  int ncolors = p.num_levels();
  for (;;) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    auto sig_of = [](const Poset& ps, const std::vector<int>& cs, int v) {
      std::vector<int> d, u;
      for (int w : ps.downs(v)) d.push_back(cs[w]);
      for (int w : ps.ups(v)) u.push_back(cs[w]);
      std::sort(d.begin(), d.end());
      std::sort(u.begin(), u.end());
      return Sig{cs[v], std::move(d), std::move(u)};
    };
    std::map<Sig, int> ids;
    std::vector<int> np(n), nq(n);
    for (int v = 0; v < n; ++v) {
      auto s = sig_of(p, cp, v);
      np[v] = ids.emplace(std::move(s), static_cast<int>(ids.size()))
                  .first->second;
    }
    for (int v = 0; v < n; ++v) {
      auto s = sig_of(q, cq, v);
      auto it = ids.emplace(std::move(s), static_cast<int>(ids.size()));
      nq[v] = it.first->second;
    }
    int count = static_cast<int>(ids.size());
    cp.swap(np);
    cq.swap(nq);
    if (count == ncolors) break;
    ncolors = count;
  }
}

bool color_histograms_match(const std::vector<int>& cp,
                            const std::vector<int>& cq) {
  std::map<int, int> hp, hq;
  for (int c : cp) ++hp[c];
  for (int c : cq) ++hq[c];
  return hp == hq;
}

struct MatchSearch {
  const Poset* p;
  const Poset* q;
  std::vector<int> cp, cq;
  std::vector<std::vector<int>> candidates;  // per p-vertex, same-color q ids
  std::vector<int> map;                      // p index -> q index or -1
  std::vector<char> used;
  std::uint64_t budget = 0;
  std::uint64_t steps = 0;
  bool exhausted = false;
  bool collect_all = false;
  std::vector<std::vector<int>> found;

  bool run() {
    const int n = p->size();
    map.assign(n, -1);
    used.assign(n, 0);
    candidates.assign(n, {});
    std::vector<std::vector<int>> by_color_q;
    for (int u = 0; u < n; ++u) {
      if (cq[u] >= static_cast<int>(by_color_q.size()))
        by_color_q.resize(cq[u] + 1);
      by_color_q[cq[u]].push_back(u);
    }
    for (int v = 0; v < n; ++v)
      if (cp[v] < static_cast<int>(by_color_q.size()))
        candidates[v] = by_color_q[cp[v]];
    return extend(0);
  }

  // Vertices are processed in index order, so all lower covers of v are
  // already mapped; requiring the exact image of the down-set at every step
  // makes any completed map cover-preserving in both directions.
  bool extend(int v) {
    const int n = p->size();
    if (v == n) {
      found.push_back(map);
      return !collect_all;
    }
    std::vector<int> want;
    for (int w : p->downs(v)) want.push_back(map[w]);
    std::sort(want.begin(), want.end());
    for (int u : candidates[v]) {
      if (used[u]) continue;
      if (++steps > budget) {
        exhausted = true;
        return true;
      }
      const auto& du = q->downs(u);
      if (du.size() != want.size()) continue;
      std::vector<int> have(du.begin(), du.end());
      std::sort(have.begin(), have.end());
      if (have != want) continue;
      map[v] = u;
      used[u] = 1;
      if (extend(v + 1)) return true;
      used[u] = 0;
      map[v] = -1;
    }
    return false;
  }
};

bool verify_bijection(const Poset& p, const Poset& q,
                      const std::vector<int>& map) {
  if (map.size() != static_cast<size_t>(p.size()) || p.size() != q.size())
    return false;
  std::vector<char> hit(q.size(), 0);
  for (int u : map) {
    if (u < 0 || u >= q.size() || hit[u]) return false;
    hit[u] = 1;
  }
  if (p.covers.size() != q.covers.size()) return false;
  std::set<std::pair<int, int>> qc(q.covers.begin(), q.covers.end());
  for (auto [lo, hi] : p.covers)
    if (!qc.count({map[lo], map[hi]})) return false;
  return true;
}

std::vector<char> chainlike_flags(const Poset& p) {
  std::vector<char> flag(p.size(), 0);
  if (p.size() > 0) flag[0] = 1;
  for (int v = 1; v < p.size(); ++v)
    flag[v] = p.downs(v).size() == 1 && flag[p.downs(v)[0]];
  if (p.size() > 0) flag[0] = 0;  // the identity is not counted
  return flag;
}

}  // namespace

std::optional<std::vector<int>> are_isomorphic(const Poset& p, const Poset& q,
                                               std::uint64_t budget) {
  if (!profiles_match(p, q)) return std::nullopt;
  MatchSearch s;
  s.p = &p;
  s.q = &q;
  refine_colors(p, q, s.cp, s.cq);
  if (!color_histograms_match(s.cp, s.cq)) return std::nullopt;
  s.budget = budget;
  s.run();
  if (s.exhausted)
    throw ResourceError("isomorphism search budget exceeded");
  if (s.found.empty()) return std::nullopt;
  if (!verify_bijection(p, q, s.found[0]))
    throw ConsistencyError("isomorphism search returned an invalid witness");
  return s.found[0];
}

AutomorphismSet find_automorphisms(const Poset& p, std::uint64_t budget) {
  MatchSearch s;
  s.p = &p;
  s.q = &p;
  refine_colors(p, p, s.cp, s.cq);
  s.budget = budget;
  s.collect_all = true;
  s.run();
  AutomorphismSet out;
  out.search_complete = !s.exhausted;
  std::vector<char> chain = chainlike_flags(p);
  for (auto& m : s.found) {
    if (!verify_bijection(p, p, m))
      throw ConsistencyError("automorphism search returned an invalid map");
    Automorphism a;
    a.moves_chainlike = false;
    for (int v = 0; v < p.size(); ++v)
      if (chain[v] && m[v] != v) a.moves_chainlike = true;
    a.map = std::move(m);
    out.all.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Labeled colored graph isomorphism (brute-force with pruning; the graphs
// here have at most a dozen nodes).

namespace {

bool graph_extend(const BwGraph& a, const BwGraph& b, std::vector<int>& map,
                  std::vector<char>& used, int v) {
  if (v == a.size()) return true;
  for (int u = 0; u < b.size(); ++u) {
    if (used[u] || a.black(v) != b.black(u)) continue;
    bool ok = true;
    for (int w = 0; w < v && ok; ++w)
      ok = a.bond(v, w) == b.bond(map[w], u);
    if (!ok) continue;
    map[v] = u;
    used[u] = 1;
    if (graph_extend(a, b, map, used, v + 1)) return true;
    used[u] = 0;
  }
  return false;
}

}  // namespace

bool graphs_isomorphic(const BwGraph& a, const BwGraph& b) {
  if (a.size() != b.size()) return false;
  if (a.black_gens().size() != b.black_gens().size()) return false;
  std::vector<int> map(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  return graph_extend(a, b, map, used, 0);
}

// ---------------------------------------------------------------------------
// The verdict table.

namespace {

// Shape analysis of one connected component.
struct ComponentKey {
  enum class Tag { Trivial, I2Chain, AChain, BChain, B4End, DShort, H3, D6,
                   Generic };
  Tag tag = Tag::Generic;
  long long param = 0;     // chain size / family rank
  std::string key;         // equal keys <=> isomorphic quotient posets
};

std::string canonical_graph_string(const BwGraph& g) {
  const int n = g.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s;
    for (int i = 0; i < n; ++i) s += g.black(perm[i]) ? 'b' : 'w';
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int m = g.bond(perm[i], perm[j]);
        s += ',';
        s += (m == kInfiniteBond) ? std::string("inf") : std::to_string(m);
      }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Orders the nodes of a path graph end to end; empty when g is not a path.
std::vector<Gen> path_order(const BwGraph& g) {
  const int n = g.size();
  std::vector<std::vector<Gen>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.bond(i, j) >= 3) adj[i].push_back(j);
  if (n == 1) return {0};
  std::vector<Gen> ends;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 2) return {};
    if (adj[i].size() == 1) ends.push_back(i);
  }
  if (ends.size() != 2) return {};
  std::vector<Gen> order{ends[0]};
  int prev = -1, cur = ends[0];
  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    for (int w : adj[cur])
      if (w != prev) next = w;
    if (next < 0) return {};
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

ComponentKey analyze_component(const BwGraph& g) {
  ComponentKey out;
  const int n = g.size();
  auto blacks = g.black_gens();
  if (blacks.empty()) {
    out.tag = ComponentKey::Tag::Trivial;
    out.key = "trivial";
    return out;
  }
  auto generic = [&] {
    out.tag = ComponentKey::Tag::Generic;
    out.key = "g:" + canonical_graph_string(g);
    return out;
  };
  if (blacks.size() != 1) return generic();
  const Gen black = blacks[0];

  if (n == 1) {
    out.tag = ComponentKey::Tag::AChain;
    out.param = 2;
    out.key = "chain:2";
    return out;
  }
  std::vector<Gen> path = path_order(g);
  if (!path.empty()) {
    std::vector<int> labels;  // bonds along the path
    for (int i = 0; i + 1 < n; ++i)
      labels.push_back(g.bond(path[i], path[i + 1]));
    int fours = 0, fives = 0, others = 0;
    for (int m : labels) {
      if (m == 4)
        ++fours;
      else if (m == 5)
        ++fives;
      else if (m != 3)
        ++others;
    }
    if (n == 2) {
      int m = labels[0];
      if (m != kInfiniteBond) {
        out.tag = ComponentKey::Tag::I2Chain;
        out.param = m;
        out.key = "chain:" + std::to_string(m);
        return out;
      }
      return generic();
    }
    const bool black_at_end = (black == path.front() || black == path.back());
    if (fours == 0 && fives == 0 && others == 0 && black_at_end) {
      out.tag = ComponentKey::Tag::AChain;
      out.param = n + 1;
      out.key = "chain:" + std::to_string(n + 1);
      return out;
    }
    if (fours == 1 && fives == 0 && others == 0) {
      // Orient so the 4-bond sits on the first edge.
      if (labels.back() == 4) std::reverse(path.begin(), path.end());
      if (g.bond(path[0], path[1]) == 4) {
        if (black == path.back()) {  // far end: a 2n-element total order
          out.tag = ComponentKey::Tag::BChain;
          out.param = n;
          out.key = "chain:" + std::to_string(2 * n);
          return out;
        }
        if (black == path.front()) {  // 4-end: the 2^n Boolean family
          out.tag = ComponentKey::Tag::B4End;
          out.param = n;
          out.key = "BA-DA:" + std::to_string(n);
          return out;
        }
      }
      return generic();
    }
    if (n == 3 && fives == 1 && fours == 0 && others == 0) {
      if (labels[0] == 5) std::reverse(path.begin(), path.end());
      if (g.bond(path[1], path[2]) == 5 && black == path.front()) {
        out.tag = ComponentKey::Tag::H3;
        out.key = "H3D6";
        return out;
      }
      return generic();
    }
    return generic();
  }

  // Trees with one fork: candidates for the D and D6 patterns.
  std::vector<std::vector<Gen>> adj(n);
  bool simply_laced = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.bond(i, j) >= 3) {
        adj[i].push_back(j);
        if (g.bond(i, j) != 3) simply_laced = false;
      }
  if (!simply_laced) return generic();
  int fork = -1, forks = 0;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 3) return generic();
    if (adj[i].size() == 3) fork = i, ++forks;
  }
  if (forks != 1) return generic();
  std::vector<std::pair<int, Gen>> legs;  // (length, leaf at the end)
  for (Gen start : adj[fork]) {
    int prev = fork, cur = start, len = 1;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    if (adj[cur].size() != 1) return generic();  // nested fork/cycle
    legs.push_back({len, cur});
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0].first != 1 || legs[1].first != 1) return generic();
  const bool on_short_leg = black == legs[0].second || black == legs[1].second;
  if (on_short_leg) {  // D_{n+1} with a short-leg leaf black
    out.tag = ComponentKey::Tag::DShort;
    out.param = n - 1;
    out.key = "BA-DA:" + std::to_string(n - 1);
    return out;
  }
  if (n == 6 && legs[2].first == 3 && black == legs[2].second) {
    out.tag = ComponentKey::Tag::D6;
    out.key = "H3D6";
    return out;
  }
  return generic();
}

Verdict connected_case(const BwGraph& a, const BwGraph& b,
                       const ComponentKey& ka, const ComponentKey& kb) {
  Verdict v;
  if (graphs_isomorphic(a, b)) {
    v.case_name = "graph-isomorphic";
    return v;
  }
  using Tag = ComponentKey::Tag;
  auto has = [&](Tag x, Tag y) {
    return (ka.tag == x && kb.tag == y) || (ka.tag == y && kb.tag == x);
  };
  auto param_of = [&](Tag x) {
    return ka.tag == x ? ka.param : kb.param;
  };
  if (has(Tag::I2Chain, Tag::AChain)) {
    v.case_name = "I2n-A";
    v.parameters["n"] = param_of(Tag::I2Chain);
  } else if (has(Tag::BChain, Tag::AChain)) {
    v.case_name = "Bn-A2n";
    v.parameters["n"] = param_of(Tag::BChain);
  } else if (has(Tag::BChain, Tag::I2Chain)) {
    v.case_name = "Bn-I2";
    v.parameters["n"] = param_of(Tag::BChain);
  } else if (has(Tag::B4End, Tag::DShort)) {
    v.case_name = "BnA-DA";
    v.parameters["n"] = param_of(Tag::B4End);
  } else if (has(Tag::H3, Tag::D6)) {
    v.case_name = "H3-D6";
  } else {
    throw ConsistencyError(
        "equal quotient descriptors with no matching verdict case");
  }
  return v;
}

std::optional<unsigned long long> quotient_index(const BwGraph& g) {
  auto whole = group_order(g);
  if (!whole) return std::nullopt;
  const auto white = g.white_gens();
  if (white.empty()) return *whole;  // J empty: the quotient is the group
  auto sub = group_order(g, white);
  if (!sub) return std::nullopt;
  return *whole / *sub;
}

}  // namespace

std::string quotient_descriptor(const BwGraph& g) {
  return analyze_component(g).key;
}

Verdict classify_pair(const BwGraph& a, const BwGraph& b,
                      std::uint64_t verify_cap) {
  auto split = [](const BwGraph& g) {
    std::vector<Gen> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::pair<BwGraph, ComponentKey>> out;
    for (const auto& comp : graph_components(g, all)) {
      BwGraph sub = induced_subgraph(g, comp);
      out.push_back({sub, analyze_component(sub)});
    }
    return out;
  };
  auto ca = split(a), cb = split(b);
  auto nontrivial = [](std::vector<std::pair<BwGraph, ComponentKey>>& cs) {
    std::erase_if(cs, [](const auto& c) {
      return c.second.tag == ComponentKey::Tag::Trivial;
    });
    std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) {
      return x.second.key < y.second.key;
    });
  };
  nontrivial(ca);
  nontrivial(cb);

  Verdict verdict;
  if (ca.size() != cb.size()) {
    verdict.case_name = "not-isomorphic";
  } else if (ca.empty()) {
    verdict.case_name = "trivial";
  } else {
    bool match = true;
    for (size_t i = 0; i < ca.size(); ++i)
      if (ca[i].second.key != cb[i].second.key) match = false;
    if (!match) {
      verdict.case_name = "not-isomorphic";
    } else if (ca.size() == 1) {
      verdict = connected_case(ca[0].first, cb[0].first, ca[0].second,
                               cb[0].second);
    } else {
      verdict.case_name = "graph-isomorphic";
      for (size_t i = 0; i < ca.size(); ++i) {
        Verdict part = connected_case(ca[i].first, cb[i].first, ca[i].second,
                                      cb[i].second);
        if (part.case_name != "graph-isomorphic" &&
            verdict.case_name == "graph-isomorphic") {
          verdict.case_name = part.case_name;
          verdict.parameters = part.parameters;
        }
      }
    }
  }

  // Verification against the search engine for small finite quotients.
  auto ia = quotient_index(a), ib = quotient_index(b);
  if (ia && ib && *ia <= verify_cap && *ib <= verify_cap) {
    Poset pa = enumerate_quotient(a, 1 << 20);
    Poset pb = enumerate_quotient(b, 1 << 20);
    auto found = are_isomorphic(pa, pb);
    if (found.has_value() != verdict.isomorphic())
      throw ConsistencyError("verdict table disagrees with isomorphism search");
    if (found) {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < pa.size(); ++i) pairs.push_back({i, (*found)[i]});
      verdict.witness = std::move(pairs);
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Explicit B_n/A_{n-1} -> D_{n+1}/A_n bijection.

namespace {

// Evaluates the left-coset word a_1..a_L on the Schreier graph of right
// cosets: apply a_L first.
int eval_word(const CosetTable& ct, const Word& w) {
  int c = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) c = ct.act(c, *it);
  return c;
}

std::map<int, int> coset_index_map(const BwGraph& g, const Poset& p,
                                   const CosetTable& ct) {
  std::map<int, int> out;
  for (int i = 0; i < p.size(); ++i) {
    int c = eval_word(ct, p.words[i]);
    if (!out.emplace(c, i).second)
      throw ConsistencyError("duplicate coset while indexing quotient");
  }
  return out;
}

}  // namespace

ExplicitIso explicit_iso_B_to_D(int n) {
  if (n < 3) throw std::invalid_argument("explicit_iso_B_to_D: n must be >= 3");
  const int top = n * (n + 1) / 2;
  BwGraph gb = make_B(n, {"1"});

  std::vector<std::string> dnames;
  for (int i = 0; i <= n; ++i) dnames.push_back("t" + std::to_string(i));
  BwGraph gd(dnames);
  gd.set_bond(0, 2, 3);
  for (int i = 1; i < n; ++i) gd.set_bond(i, i + 1, 3);
  gd.set_black(0, true);

  ExplicitIso out;
  out.b = enumerate_quotient(gb, top + 1);
  out.d = enumerate_quotient(gd, top + 1);
  if (out.b.size() != (1 << n) || out.d.size() != (1 << n))
    throw ConsistencyError("unexpected quotient size in explicit_iso_B_to_D");

  const std::uint64_t cap = (std::uint64_t{1} << n) * 16 + 1024;
  CosetTable ctb = enumerate_cosets(gb, gb.white_gens(), cap);
  CosetTable ctd = enumerate_cosets(gd, gd.white_gens(), cap);
  auto idxb = coset_index_map(gb, out.b, ctb);
  auto idxd = coset_index_map(gd, out.d, ctd);

  out.map.assign(out.b.size(), -1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    // Block normal form: for each k in the subset, ascending, the block
    // s_k s_{k-1} .. s_1 (generator ids k-1 .. 0).
    Word bw;
    for (int k = 1; k <= n; ++k) {
      if (!(mask & (1u << (k - 1)))) continue;
      for (int i = k - 1; i >= 0; --i) bw.push_back(i);
    }
    // s_i -> t_i for i >= 2; the s_1 slots alternate t_1/t_0 from the right.
    Word dw(bw.size(), -1);
    int parity = 0;
    for (int pos = static_cast<int>(bw.size()) - 1; pos >= 0; --pos) {
      if (bw[pos] >= 1) {
        dw[pos] = bw[pos] + 1;
      } else {
        // The rightmost s_1 slot maps to the black fork node t_0, then the
        // slots alternate t_1 / t_0 leftwards.
        dw[pos] = (parity == 0) ? 0 : 1;
        parity ^= 1;
      }
    }
    int bi = idxb.at(eval_word(ctb, bw));
    int di = idxd.at(eval_word(ctd, dw));
    if (out.map[bi] != -1)
      throw ConsistencyError("explicit_iso_B_to_D: normal form collision");
    out.map[bi] = di;
  }
  if (!verify_bijection(out.b, out.d, out.map))
    throw ConsistencyError("explicit_iso_B_to_D: map is not cover-preserving");
  return out;
}

// ---------------------------------------------------------------------------
// Basket automorphism.

namespace {

// Extends a 3-bond path from `cur`, never revisiting `banned` nodes;
// returns the nodes appended.  Fails (nullopt) on branching.
std::optional<std::vector<Gen>> walk_threes(const BwGraph& g, Gen cur,
                                            std::vector<char>& seen) {
  std::vector<Gen> out;
  for (;;) {
    Gen next = -1;
    int count = 0;
    for (int w = 0; w < g.size(); ++w)
      if (!seen[w] && g.bond(cur, w) == 3) next = w, ++count;
    if (count == 0) return out;
    if (count > 1) return std::nullopt;
    seen[next] = 1;
    out.push_back(next);
    cur = next;
  }
}

// Matches g against the basket template; returns the spine s_0..s_2k.
std::vector<Gen> match_basket_template(const BwGraph& g) {
  auto blacks = g.black_gens();
  if (blacks.size() != 1)
    throw std::invalid_argument("basket template: exactly one black node required");
  const Gen s0 = blacks[0];
  std::vector<char> seen(g.size(), 0);
  seen[s0] = 1;
  auto prefix = walk_threes(g, s0, seen);
  if (!prefix)
    throw std::invalid_argument("basket template: branching black chain");
  std::vector<Gen> low{s0};
  low.insert(low.end(), prefix->begin(), prefix->end());
  const int k = static_cast<int>(low.size());
  const Gen sk1m = low.back();  // s_{k-1}

  for (int sk = 0; sk < g.size(); ++sk) {
    if (g.bond(sk1m, sk) != kInfiniteBond) continue;
    for (int skp = 0; skp < g.size(); ++skp) {
      if (skp == sk1m || g.bond(sk, skp) != kInfiniteBond) continue;
      if (g.bond(skp, sk1m) != 2) continue;  // extras touch s_{k-1}
      std::vector<char> seen2(g.size(), 0);
      for (Gen v : low) seen2[v] = 1;
      seen2[sk] = 1;
      seen2[skp] = 1;
      auto tail = walk_threes(g, skp, seen2);
      if (!tail || static_cast<int>(tail->size()) != k - 1) continue;
      std::vector<Gen> spine = low;
      spine.push_back(sk);
      spine.push_back(skp);
      spine.insert(spine.end(), tail->begin(), tail->end());
      // Validate: spine bonds, no chords, and the extra-node constraints.
      bool ok = true;
      const int len = static_cast<int>(spine.size());  // 2k + 1
      for (int i = 0; i < len && ok; ++i)
        for (int j = i + 1; j < len && ok; ++j) {
          int want = (j != i + 1)                ? 2
                     : (i == k - 1 || i == k)    ? kInfiniteBond
                                                 : 3;
          ok = g.bond(spine[i], spine[j]) == want;
        }
      std::vector<char> on_spine(g.size(), 0);
      for (Gen v : spine) on_spine[v] = 1;
      for (int s = 0; s < g.size() && ok; ++s) {
        if (on_spine[s]) continue;
        if (g.black(s)) ok = false;
        for (int i = 0; i < len && ok; ++i) {
          int m = g.bond(s, spine[i]);
          if (i == k - 1 || i == k + 1)
            ok = (m == 2 || m == kInfiniteBond) &&
                 m == g.bond(s, spine[i == k - 1 ? k + 1 : k - 1]);
          else if (i != k)
            ok = (m == 2);
        }
      }
      if (ok) return spine;
    }
  }
  throw std::invalid_argument("graph does not match the basket template");
}

}  // namespace

BasketAutomorphism basket_automorphism(const BwGraph& g, int bound) {
  std::vector<Gen> spine = match_basket_template(g);
  const int k = (static_cast<int>(spine.size()) - 1) / 2;
  if (bound < k + 1)
    throw std::invalid_argument("basket_automorphism: bound below u''");

  BasketAutomorphism out;
  out.k = k;
  out.p = enumerate_quotient(g, bound);
  const Poset& p = out.p;

  Word upp;  // u'' = s_k .. s_0
  for (int i = k; i >= 0; --i) upp.push_back(spine[i]);
  if (!p.find_label(format_word(g, upp)))
    throw ConsistencyError("basket_automorphism: u'' not enumerated");

  std::vector<int> spine_pos(g.size(), -1);
  for (size_t i = 0; i < spine.size(); ++i) spine_pos[spine[i]] = (int)i;

  // Reflect spine letters s_i -> s_{2k-i} everywhere except the rightmost k
  // positions.  Elements at or below u'' come out fixed, and elements kept
  // apart from u'' only by extra nodes are still carried to their mirror.
  out.map.assign(p.size(), 0);
  for (int v = 0; v < p.size(); ++v) {
    Word w = p.words[v];
    const int L = static_cast<int>(w.size());
    for (int pos = 0; pos < L - k; ++pos) {
      int sp = spine_pos[w[pos]];
      if (sp >= 0) w[pos] = spine[2 * k - sp];
    }
    auto img = p.find_label(format_word(g, reduce(g, w).canonical));
    if (!img)
      throw ConsistencyError("basket_automorphism: image left the truncation");
    out.map[v] = *img;
  }
  for (int v = 0; v < p.size(); ++v)
    if (out.map[out.map[v]] != v)
      throw ConsistencyError("basket_automorphism: phi is not an involution");
  if (!verify_bijection(p, p, out.map))
    throw ConsistencyError("basket_automorphism: phi is not cover-preserving");
  return out;
}

}  // namespace coxq
