#include "coxq/chainlike.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coxq {

std::string BoundVal::to_string() const {
  switch (status) {
    case Status::Exact: return std::to_string(value);
    case Status::AtLeast: return ">=" + std::to_string(value);
    case Status::Unknown: return "?";
  }
  return "?";
}

std::string form_name(Form f) {
  switch (f) {
    case Form::I: return "I";
    case Form::II: return "II";
    case Form::III: return "III";
  }
  return "?";
}

namespace {
constexpr size_t kMaxAnalyzerElements = 60'000;
}

Analyzer::Analyzer(const Poset& p) : p_(&p) {
  const size_t n = p.size();
  if (n > kMaxAnalyzerElements)
    throw ResourceError("poset too large for chainlike analysis (" +
                        std::to_string(n) + " elements)");
  // Lower-set bitmaps, computed level by level.
  stride_ = (n + 63) / 64;
  below_.assign(stride_ * n, 0);
  for (size_t v = 0; v < n; ++v) {
    auto* row = below_.data() + v * stride_;
    row[v >> 6] |= std::uint64_t{1} << (v & 63);
    for (int u : p.downs(static_cast<int>(v))) {
      const auto* urow = below_.data() + static_cast<size_t>(u) * stride_;
      for (size_t i = 0; i < stride_; ++i) row[i] |= urow[i];
    }
  }
  chain_flag_.assign(n, 0);
  chain_flag_[0] = 1;  // the identity, vacuously
  for (size_t v = 1; v < n; ++v)
    chain_flag_[v] =
        p.downs(static_cast<int>(v)).size() == 1 && chain_flag_[p.downs(static_cast<int>(v))[0]];
  for (size_t v = 1; v < n; ++v)
    if (chain_flag_[v]) chainlikes_.push_back(static_cast<int>(v));
}

bool Analyzer::leq(int u, int v) const {
  return (below_[static_cast<size_t>(v) * stride_ + (u >> 6)] >>
          (u & 63)) & 1;
}

int Analyzer::atom_of(int v) const {
  if (!is_chainlike(v) || v == 0)
    throw std::invalid_argument("atom_of: not a chainlike element");
  while (p_->rank[v] > 1) v = parent(v);
  return v;
}

BoundVal Analyzer::L(int u, int v) const {
  const int start = std::max(p_->rank[u], p_->rank[v]);
  for (int l = start; l < p_->num_levels(); ++l) {
    auto [a, b] = p_->level_range(l);
    for (int w = a; w < b; ++w)
      if (leq(u, w) && leq(v, w)) return BoundVal::exact(l);
  }
  return BoundVal::unknown();  // only reachable on truncated posets
}

std::vector<int> Analyzer::min_upper_bounds(int u, int v) const {
  std::vector<int> out;
  BoundVal l = L(u, v);
  if (l.status != BoundVal::Status::Exact) return out;
  auto [a, b] = p_->level_range(static_cast<int>(l.value));
  for (int w = a; w < b; ++w)
    if (leq(u, w) && leq(v, w)) out.push_back(w);
  return out;
}

std::optional<bool> Analyzer::sim(int u, int v) const {
  BoundVal a = L(u, v), b = L(parent(u), v), c = L(u, parent(v));
  if (a.status != BoundVal::Status::Exact ||
      b.status != BoundVal::Status::Exact ||
      c.status != BoundVal::Status::Exact)
    return std::nullopt;
  return a.value == b.value && a.value == c.value;
}

std::vector<int> Analyzer::common_covers(const std::vector<int>& xs) const {
  std::vector<int> out;
  for (int w : p_->ups(xs[0])) {
    bool all = true;
    for (size_t i = 1; i < xs.size() && all; ++i) {
      const auto& d = p_->downs(w);
      all = std::find(d.begin(), d.end(), xs[i]) != d.end();
    }
    if (all) out.push_back(w);
  }
  return out;
}

// Shared iteration core: cur = M_i with i members >= 2 elements.
BoundVal Analyzer::m_iteration(std::vector<int> cur, int i) const {
  for (;;) {
    for (int z : cur)
      if (!p_->ups_complete(z)) return BoundVal::at_least(i + 1);
    std::vector<int> next = common_covers(cur);
    ++i;
    if (next.size() == 1) return BoundVal::exact(i);
    if (next.empty()) return BoundVal::unknown();
    cur = std::move(next);
  }
}

BoundVal Analyzer::M_shared_parent(int u, int v) const {
  if (u == v || parent(u) != parent(v))
    throw std::invalid_argument("M_shared_parent: elements must be distinct with equal parents");
  return m_iteration({u, v}, 1);
}

DetectResult Analyzer::detects(int u, int x) const {
  if (!is_chainlike(u) || !is_chainlike(x) || u == 0 || x == 0)
    throw std::invalid_argument("detects: arguments must be chainlike");
  const int up = parent(u), xp = parent(x);
  if (!(leq(xp, up) && xp != up) || leq(x, u))
    throw std::invalid_argument("detects: requires x' < u' and x not<= u");
  DetectResult r;
  std::vector<int> X1 = min_upper_bounds(u, x);
  std::vector<int> X0 = min_upper_bounds(up, x);
  if (X1.empty() || X0.empty()) return r;  // truncation hid the bounds
  r.known = true;
  if (X1.size() == X0.size()) return r;
  if (X1.size() != X0.size() + 1)
    throw ConsistencyError("detects: |X(u,x)| differs from |X(u',x)| by more than one");
  r.detects = true;
  std::set<int> x1(X1.begin(), X1.end());
  for (int w : X0) {
    std::vector<int> over;
    for (int z : p_->ups(w))
      if (x1.count(z)) over.push_back(z);
    if (over.size() == 2) {
      if (r.branching >= 0)
        throw ConsistencyError("detects: branching element is not unique");
      r.branching = w;
      r.branch_pair = {over[0], over[1]};
    }
  }
  if (r.branching < 0)
    throw ConsistencyError("detects: no branching element found");
  return r;
}

BoundVal Analyzer::M_detector(int u, int x) const {
  DetectResult d = detects(u, x);
  if (!d.known) return BoundVal::unknown();
  if (!d.detects) return BoundVal::exact(2);
  return m_iteration({d.branch_pair.first, d.branch_pair.second}, 2);
}

BoundVal Analyzer::N(int u, int v) const {
  if (u == v || parent(u) != parent(v))
    throw std::invalid_argument("N: elements must be distinct with equal parents");
  std::vector<int> cur = common_covers({u, v});
  if (cur.size() != 1)
    throw std::invalid_argument("N: requires a unique common cover (M = 2)");
  int i = 0;
  for (;;) {
    for (int z : cur)
      if (!p_->ups_complete(z)) return BoundVal::at_least(i + 1);
    std::vector<int> next;
    for (int z : cur)
      for (int w : p_->ups(z))
        if (is_semi_chainlike(w)) next.push_back(w);
    ++i;
    if (next.empty()) return BoundVal::exact(i);
    cur = std::move(next);
  }
}

std::vector<Basket> Analyzer::find_baskets() const {
  std::vector<Basket> out;
  auto grandparent = [&](int w) { return parent(parent(w)); };
  auto mutual = [&](int a, int b) {
    // b detected by a' (preconditions first; failures mean "no basket").
    int ap = parent(a);
    if (!(leq(parent(ap), parent(b)) && parent(ap) != parent(b))) return false;
    if (leq(ap, b)) return false;
    DetectResult d = detects(b, ap);
    return d.known && d.detects;
  };
  for (size_t i = 0; i < chainlikes_.size(); ++i) {
    int u = chainlikes_[i];
    if (p_->rank[u] < 2) continue;
    for (size_t j = i + 1; j < chainlikes_.size(); ++j) {
      int v = chainlikes_[j];
      if (p_->rank[v] < 2 || grandparent(u) != grandparent(v)) continue;
      if (mutual(u, v) && mutual(v, u)) out.push_back({u, v});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word-model form classification

Gen Analyzer::leftmost(int v) const {
  if (!p_->graph) throw std::invalid_argument("leftmost: poset has no graph");
  if (v == 0) throw std::invalid_argument("leftmost: identity");
  return p_->words[v][0];
}

namespace {

// Is `base` (read as s_k .. s_0 left to right) a simple chainlike word?
bool is_simple_word(const BwGraph& g, const Word& base) {
  const int n = static_cast<int>(base.size());
  if (n == 0) return false;
  if (!g.black(base[n - 1])) return false;
  for (int i = 0; i < n - 1; ++i)
    if (g.black(base[i])) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (base[i] == base[j]) return false;
      bool adjacent = (j == i + 1);
      if ((g.bond(base[i], base[j]) >= 3) != adjacent) return false;
    }
  return true;
}

}  // namespace

std::optional<FormInfo> Analyzer::classify_form(int v) const {
  if (!p_->graph) throw std::invalid_argument("classify_form: poset has no graph");
  if (!is_chainlike(v) || v == 0)
    throw std::invalid_argument("classify_form: not a chainlike element");
  const BwGraph& g = *p_->graph;
  const Word& w = p_->words[v];
  const int n = static_cast<int>(w.size());

  if (is_simple_word(g, w)) {
    FormInfo f;
    f.form = Form::I;
    f.base.assign(w.rbegin(), w.rend());  // base[j] = s_j
    return f;
  }

  // Form II: w = s_l s_{l+1} .. s_{k-1} | s_k s_{k-1} .. s_0.
  for (int bl = 2; bl < n; ++bl) {  // bl = base length = k + 1
    Word base(w.end() - bl, w.end());
    if (!is_simple_word(g, base)) continue;
    const int k = bl - 1;
    auto s = [&](int j) { return base[k - j]; };  // s_j
    const int plen = n - bl;                      // = k - l
    const int l = k - plen;
    if (l < 0 || l >= k) continue;
    bool match = true;
    for (int t = 0; t < plen && match; ++t) match = (w[t] == s(l + t));
    if (!match) continue;
    if (g.bond(s(k), s(k - 1)) < 4) continue;
    bool bonds_ok = true;
    for (int i = l; i < k - 1 && bonds_ok; ++i)
      bonds_ok = (g.bond(s(i), s(i + 1)) == 3);
    if (!bonds_ok) continue;
    FormInfo f;
    f.form = Form::II;
    f.base = Word(base.rbegin(), base.rend());
    f.l = l;
    return f;
  }

  // Form III: w = (alternating s_k / s_{k-1}, m terms, ending s_{k-1})
  //               s_{k-2} .. s_0.
  // The theorem states k >= 2; the k = 1 case (empty tail) genuinely occurs
  // for a black-white pair with bond >= 5 or infinity and is accepted here.
  if (n >= 4 && w[0] != w[1]) {
    const Gen a = w[0], b = w[1];
    int m = 2;
    while (m < n && w[m] == w[m % 2]) ++m;
    // The block has m terms; it must end with s_{k-1} and be followed by
    // s_{k-2} .. s_0.  The last block letter is w[m-1] = s_{k-1}, so
    // s_k = the other of {a, b}.
    const Gen sk1 = w[m - 1], sk = (sk1 == a) ? b : a;
    Word base;
    base.push_back(sk);
    base.push_back(sk1);
    base.insert(base.end(), w.begin() + m, w.end());
    const int bond = g.bond(sk, sk1);
    if (is_simple_word(g, base) && m >= 4 &&
        (bond == kInfiniteBond || m < bond)) {
      FormInfo f;
      f.form = Form::III;
      f.base = Word(base.rbegin(), base.rend());
      f.m = m;
      return f;
    }
  }
  return std::nullopt;
}

std::map<int, Form> Analyzer::classify_all_forms() const {
  std::map<int, Form> out;
  for (int v : chainlikes_) {
    auto f = classify_form(v);
    if (!f)
      throw ConsistencyError("unclassifiable chainlike element: " +
                             p_->labels[v]);
    out[v] = f->form;
  }
  return out;
}

}  // namespace coxq
