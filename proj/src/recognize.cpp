#include "coxq/recognize.hpp"

#include <algorithm>
#include <numeric>

namespace coxq {

std::string ComponentType::to_string() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::E: return "E" + std::to_string(rank);
    case Family::F: return "F4";
    case Family::H: return "H" + std::to_string(rank);
    case Family::I2: return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

std::vector<std::vector<Gen>> graph_components(const BwGraph& g,
                                               const std::vector<Gen>& subset) {
  std::vector<Gen> gens = subset;
  if (gens.empty())
    for (int i = 0; i < g.size(); ++i) gens.push_back(i);
  std::vector<int> comp(g.size(), -1);
  int ncomp = 0;
  for (Gen root : gens) {
    if (comp[root] >= 0) continue;
    std::vector<Gen> stack{root};
    comp[root] = ncomp;
    while (!stack.empty()) {
      Gen u = stack.back();
      stack.pop_back();
      for (Gen v : gens)
        if (comp[v] < 0 && g.bond(u, v) >= 3) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<Gen>> out(ncomp);
  for (Gen v : gens) out[comp[v]].push_back(v);
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

namespace {

// Recognizes one connected component.  nullopt = not finite type.
std::optional<ComponentType> recognize_component(const BwGraph& g,
                                                 const std::vector<Gen>& c) {
  const int n = static_cast<int>(c.size());
  ComponentType t;
  t.gens = c;
  t.rank = n;
  if (n == 1) {
    t.family = Family::A;
    return t;
  }
  // Collect degrees and labeled-edge statistics within the component.
  int labeled = 0, max_label = 3, total_edges = 0;
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int m = g.bond(c[i], c[j]);
      if (m < 3) continue;
      ++total_edges;
      ++deg[i];
      ++deg[j];
      if (m > 3) {
        ++labeled;
        max_label = std::max(max_label, m == kInfiniteBond ? kInfiniteBond : m);
      }
    }
  if (n == 2) {
    int m = g.bond(c[0], c[1]);
    if (m == kInfiniteBond) return std::nullopt;
    t.family = Family::I2;
    t.m = m;
    return t;
  }
  if (total_edges != n - 1) return std::nullopt;  // cycles are never finite
  if (max_label == kInfiniteBond) return std::nullopt;
  int forks = 0, leaves = 0;
  for (int i = 0; i < n; ++i) {
    if (deg[i] >= 4) return std::nullopt;
    if (deg[i] == 3) ++forks;
    if (deg[i] == 1) ++leaves;
  }
  if (forks > 1) return std::nullopt;

  if (forks == 1) {
    // D or E shapes; no labels allowed.
    if (labeled > 0) return std::nullopt;
    // Leg lengths from the fork node.
    int fork = -1;
    for (int i = 0; i < n; ++i)
      if (deg[i] == 3) fork = i;
    std::vector<int> legs;
    for (int i = 0; i < n; ++i) {
      if (g.bond(c[fork], c[i]) < 3 || i == fork) continue;
      int len = 1, prev = fork, cur = i;
      for (;;) {
        int next = -1;
        for (int j = 0; j < n; ++j)
          if (j != prev && j != cur && g.bond(c[cur], c[j]) >= 3) next = j;
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs.size() != 3) return std::nullopt;
    if (legs[0] == 1 && legs[1] == 1) {
      t.family = Family::D;
      return t;
    }
    if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) {
      t.family = Family::E;
      return t;
    }
    return std::nullopt;
  }

  // A path.  Order it end to end.
  int end = -1;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 1) end = i;
  std::vector<int> path{end};
  int prev = -1, cur = end;
  while (static_cast<int>(path.size()) < n) {
    int next = -1;
    for (int j = 0; j < n; ++j)
      if (j != prev && j != cur && g.bond(c[cur], c[j]) >= 3) next = j;
    if (next < 0) return std::nullopt;
    path.push_back(next);
    prev = cur;
    cur = next;
  }
  std::vector<int> labels(n - 1);
  for (int i = 0; i + 1 < n; ++i) labels[i] = g.bond(c[path[i]], c[path[i + 1]]);
  if (labeled == 0) {
    t.family = Family::A;
    return t;
  }
  if (labeled > 1) return std::nullopt;
  // One labeled edge; normalize so it sits in the first half.
  int pos = 0;
  for (int i = 0; i + 1 < n; ++i)
    if (labels[i] > 3) pos = i;
  if (pos > (n - 2) - pos) pos = (n - 2) - pos;
  int m = max_label;
  if (m == 4 && pos == 0) {
    t.family = Family::B;
    return t;
  }
  if (m == 4 && n == 4 && pos == 1) {
    t.family = Family::F;
    return t;
  }
  if (m == 5 && pos == 0 && (n == 3 || n == 4)) {
    t.family = Family::H;
    return t;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<ComponentType>> recognize_finite(
    const BwGraph& g, const std::vector<Gen>& subset) {
  std::vector<ComponentType> out;
  for (const auto& comp : graph_components(g, subset)) {
    auto t = recognize_component(g, comp);
    if (!t) return std::nullopt;
    out.push_back(std::move(*t));
  }
  return out;
}

unsigned long long component_order(const ComponentType& t) {
  auto factorial = [](int k) {
    unsigned long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  switch (t.family) {
    case Family::A: return factorial(t.rank + 1);
    case Family::B: return (1ULL << t.rank) * factorial(t.rank);
    case Family::D: return (1ULL << (t.rank - 1)) * factorial(t.rank);
    case Family::E:
      if (t.rank == 6) return 51840ULL;
      if (t.rank == 7) return 2903040ULL;
      return 696729600ULL;
    case Family::F: return 1152ULL;
    case Family::H: return t.rank == 3 ? 120ULL : 14400ULL;
    case Family::I2: return 2ULL * t.m;
  }
  return 0;
}

std::optional<unsigned long long> group_order(const BwGraph& g,
                                              const std::vector<Gen>& subset) {
  auto types = recognize_finite(g, subset);
  if (!types) return std::nullopt;
  unsigned long long order = 1;
  for (const auto& t : *types) {
    unsigned long long o = component_order(t);
    if (order > 0 && o > std::numeric_limits<unsigned long long>::max() / order)
      throw ResourceError("group order overflow");
    order *= o;
  }
  return order;
}

}  // namespace coxq
