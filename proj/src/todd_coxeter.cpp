#include "coxq/todd_coxeter.hpp"

#include <deque>
#include <numeric>
#include <utility>

namespace coxq {

namespace {

// HLT-style enumeration with coincidence handling.  Generators are
// involutions, so the action table is kept symmetric (tab[c][s] = d implies
// tab[d][s] = c) and the relators s^2 never need to be traced.
class Enumerator {
 public:
  Enumerator(const BwGraph& g, const std::vector<Gen>& subgroup, std::uint64_t cap)
      : ngens_(g.size()), cap_(cap) {
    for (Gen a = 0; a < ngens_; ++a)
      for (Gen b = a + 1; b < ngens_; ++b) {
        int m = g.bond(a, b);
        if (m == kInfiniteBond) continue;
        Word r;
        for (int i = 0; i < m; ++i) {
          r.push_back(a);
          r.push_back(b);
        }
        relators_.push_back(std::move(r));
      }
    new_coset();
    for (Gen s : subgroup) set_edge(0, s, 0);
    process_coincidences();
  }

  CosetTable run() {
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      if (find(c) != c) continue;
      bool died = false;
      for (const Word& r : relators_) {
        scan_and_fill(c, r);
        process_coincidences();
        if (find(c) != c) {
          died = true;
          break;
        }
      }
      if (died) continue;
      for (Gen s = 0; s < ngens_; ++s)
        if (edge(c, s) < 0) {
          int q = new_coset();
          set_edge(c, s, q);
        }
    }
    return compress();
  }

 private:
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  int new_coset() {
    if (parent_.size() >= cap_)
      throw ResourceError("coset cap exceeded (" + std::to_string(cap_) + ")");
    parent_.push_back(static_cast<int>(parent_.size()));
    tab_.insert(tab_.end(), ngens_, -1);
    return static_cast<int>(parent_.size()) - 1;
  }

  int edge(int c, Gen s) {
    int t = tab_[c * ngens_ + s];
    return t < 0 ? -1 : find(t);
  }

  // Records c.s = d (both directions), queueing coincidences on conflict.
  void set_edge(int c, Gen s, int d) {
    c = find(c);
    d = find(d);
    int ec = edge(c, s);
    if (ec >= 0 && ec != d)
      coinc_.emplace_back(ec, d);
    else
      tab_[c * ngens_ + s] = d;
    int ed = edge(d, s);
    if (ed >= 0 && ed != c)
      coinc_.emplace_back(ed, c);
    else
      tab_[d * ngens_ + s] = c;
  }

  void process_coincidences() {
    while (!coinc_.empty()) {
      auto [x, y] = coinc_.front();
      coinc_.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);  // keep the older coset
      parent_[y] = x;
      for (Gen s = 0; s < ngens_; ++s) {
        int u = tab_[y * ngens_ + s];
        if (u < 0) continue;
        tab_[y * ngens_ + s] = -1;
        set_edge(x, s, find(u));
      }
    }
  }

  void scan_and_fill(int c, const Word& r) {
    const int len = static_cast<int>(r.size());
    int f = find(c), b = find(c);
    int i = 0, j = len;
    for (;;) {
      while (i < len && edge(f, r[i]) >= 0) f = edge(f, r[i++]);
      if (i == len) {
        if (f != b) coinc_.emplace_back(f, b);
        return;
      }
      while (j > i && edge(b, r[j - 1]) >= 0) b = edge(b, r[--j]);
      if (j == i) {
        if (f != b) coinc_.emplace_back(f, b);
        return;
      }
      if (j == i + 1) {
        set_edge(f, r[i], b);
        return;
      }
      int q = new_coset();
      set_edge(f, r[i], q);
      f = find(f);  // set_edge may have queued nothing; stay safe
      f = edge(f, r[i]);
      ++i;
      if (f < 0) return;  // a coincidence invalidated the trace; retried later
    }
  }

  CosetTable compress() {
    std::vector<int> index(parent_.size(), -1);
    int n = 0;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (find(c) == c) index[c] = n++;
    CosetTable out;
    out.ngens = ngens_;
    out.action.assign(static_cast<size_t>(n) * ngens_, -1);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      if (find(c) != c) continue;
      for (Gen s = 0; s < ngens_; ++s) {
        int d = edge(c, s);
        if (d < 0)
          throw ConsistencyError("coset enumeration left an undefined edge");
        out.action[static_cast<size_t>(index[c]) * ngens_ + s] = index[d];
      }
    }
    // Verify involutivity and all relators on the final table.
    for (int c = 0; c < n; ++c)
      for (Gen s = 0; s < ngens_; ++s)
        if (out.act(out.act(c, s), s) != c)
          throw ConsistencyError("coset table is not involutive");
    for (int c = 0; c < n; ++c)
      for (const Word& r : relators_) {
        int x = c;
        for (Gen s : r) x = out.act(x, s);
        if (x != c) throw ConsistencyError("coset table violates a relator");
      }
    return out;
  }

  int ngens_;
  std::uint64_t cap_;
  std::vector<Word> relators_;
  std::vector<int> tab_;     // parent_.size() x ngens_, -1 = undefined
  std::vector<int> parent_;  // union-find over cosets
  std::deque<std::pair<int, int>> coinc_;
};

}  // namespace

CosetTable enumerate_cosets(const BwGraph& g, const std::vector<Gen>& subgroup_gens,
                            std::uint64_t max_cosets) {
  return Enumerator(g, subgroup_gens, max_cosets).run();
}

}  // namespace coxq
