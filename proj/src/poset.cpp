#include "coxq/poset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "coxq/recognize.hpp"
#include "coxq/todd_coxeter.hpp"

namespace coxq {

namespace {

// Quotients larger than this are enumerated (and truncated) level by level
// instead of materializing the full coset table.
constexpr unsigned long long kDirectIndexCap = 1'000'000;

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

}  // namespace

// ---------------------------------------------------------------------------
// Poset basics

void Poset::finalize() {
  const int n = size();
  if (static_cast<int>(rank.size()) != n)
    throw ConsistencyError("poset: rank/label size mismatch");
  if (graph && static_cast<int>(words.size()) != n)
    throw ConsistencyError("poset: word/label size mismatch");
  if (n == 0) throw ConsistencyError("poset: empty");
  if (rank[0] != 0) throw ConsistencyError("poset: missing identity level");
  for (int i = 1; i < n; ++i) {
    if (rank[i] < rank[i - 1] || rank[i] > rank[i - 1] + 1)
      throw ConsistencyError("poset: elements not ordered by contiguous levels");
  }
  if (max_length < top_rank())
    throw ConsistencyError("poset: maxLength below top level");
  level_first_.assign(num_levels() + 1, 0);
  for (int i = 0; i < n; ++i) level_first_[rank[i] + 1] = i + 1;
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (static_cast<int>(seen.size()) != n)
      throw ConsistencyError("poset: duplicate element label");
  }
  up_.assign(n, {});
  down_.assign(n, {});
  std::set<std::pair<int, int>> seen_cover;
  for (auto [lo, hi] : covers) {
    if (lo < 0 || hi < 0 || lo >= n || hi >= n)
      throw ConsistencyError("poset: cover index out of range");
    if (rank[hi] != rank[lo] + 1)
      throw ConsistencyError("poset: cover does not join adjacent levels");
    if (!seen_cover.insert({lo, hi}).second)
      throw ConsistencyError("poset: duplicate cover");
    up_[lo].push_back(hi);
    down_[hi].push_back(lo);
  }
  for (auto& v : up_) std::sort(v.begin(), v.end());
  for (auto& v : down_) std::sort(v.begin(), v.end());
  // Every non-identity element must cover something (graded connectivity).
  for (int i = 1; i < n; ++i)
    if (down_[i].empty())
      throw ConsistencyError("poset: element with no lower cover: " + labels[i]);
}

std::pair<int, int> Poset::level_range(int l) const {
  if (l < 0 || l >= num_levels()) return {0, 0};
  return {level_first_[l], level_first_[l + 1]};
}

std::optional<int> Poset::find_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

int poset_length(const Poset& p) {
  std::vector<int> depth(p.size(), 0);
  int best = 0;
  for (int v = 0; v < p.size(); ++v) {  // indices are topologically sorted
    for (int u : p.downs(v)) depth[v] = std::max(depth[v], depth[u] + 1);
    best = std::max(best, depth[v]);
  }
  if (best != p.top_rank())
    throw ConsistencyError("poset: longest chain disagrees with grading");
  return best;
}

// ---------------------------------------------------------------------------
// Enumeration: finite path (coset table)

namespace {

Poset finish_poset(const BwGraph& g, std::vector<std::string> canon_by_level_flat,
                   std::vector<int> rank, std::vector<std::pair<int, int>> covers,
                   bool complete, int max_length) {
  Poset p;
  p.graph = g;
  p.complete = complete;
  p.max_length = max_length;
  p.rank = std::move(rank);
  for (auto& c : canon_by_level_flat) {
    Word w = unpack(c);
    p.labels.push_back(format_word(g, w));
    p.words.push_back(std::move(w));
  }
  p.covers = std::move(covers);
  std::sort(p.covers.begin(), p.covers.end(),
            [](auto a, auto b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
  p.finalize();
  return p;
}

Poset enumerate_finite(const BwGraph& g, unsigned long long index, int max_length) {
  const auto table = enumerate_cosets(g, g.white_gens(), index * 16 + 1024);
  const int n = table.size();
  if (static_cast<unsigned long long>(n) != index)
    throw ConsistencyError("coset enumeration found " + std::to_string(n) +
                           " cosets, expected " + std::to_string(index));
  // BFS depths = lengths of the minimal coset representatives.
  std::vector<int> depth(n, -1);
  std::deque<int> queue{0};
  depth[0] = 0;
  std::vector<int> order;  // cosets in BFS-depth order
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    order.push_back(c);
    for (Gen s = 0; s < g.size(); ++s) {
      int d = table.act(c, s);
      if (depth[d] < 0) {
        depth[d] = depth[c] + 1;
        queue.push_back(d);
      }
    }
  }
  // Lexicographically least reduced word per coset: the least generator that
  // decreases depth, prepended to the canonical word of its target.
  std::vector<std::string> canon(n);
  for (int c : order) {
    if (depth[c] == 0) continue;
    for (Gen s = 0; s < g.size(); ++s) {
      int p = table.act(c, s);
      if (depth[p] == depth[c] - 1) {
        canon[c] = static_cast<char>(s) + canon[p];
        break;
      }
    }
  }
  const bool complete = *std::max_element(depth.begin(), depth.end()) <= max_length;

  // Order elements by (depth, canonical word).
  std::vector<int> elems;
  for (int c = 0; c < n; ++c)
    if (depth[c] <= max_length) elems.push_back(c);
  std::sort(elems.begin(), elems.end(), [&](int a, int b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : canon[a] < canon[b];
  });
  std::vector<int> elem_of(n, -1);
  for (size_t i = 0; i < elems.size(); ++i) elem_of[elems[i]] = static_cast<int>(i);

  auto eval = [&](const std::string& w) {
    // The left-representative word a1..aL corresponds to applying aL..a1 to
    // the trivial coset in the right-action table.
    int c = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      c = table.act(c, static_cast<unsigned char>(*it));
    return c;
  };

  std::set<std::pair<int, int>> covers;
  std::vector<std::string> flat;
  std::vector<int> rank;
  for (size_t i = 0; i < elems.size(); ++i) {
    const int c = elems[i];
    const std::string& w = canon[c];
    if (eval(w) != c)
      throw ConsistencyError("canonical word does not evaluate to its coset");
    flat.push_back(w);
    rank.push_back(depth[c]);
    for (size_t k = 0; k < w.size(); ++k) {
      std::string v = w;
      v.erase(k, 1);
      int d = eval(v);
      if (depth[d] == static_cast<int>(v.size()))
        covers.insert({elem_of[d], static_cast<int>(i)});
    }
  }
  return finish_poset(g, std::move(flat), std::move(rank),
                      {covers.begin(), covers.end()}, complete, max_length);
}

// ---------------------------------------------------------------------------
// Enumeration: truncated path (braid-closure reduction, level by level)

struct ReduceCache {
  const BwGraph& g;
  std::uint64_t cap;
  std::unordered_map<std::string, std::pair<std::string, bool>> memo;

  // canonical packed word + minimal-representative flag
  const std::pair<std::string, bool>& reduce1(const std::string& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    auto r = reduce_with_coset_info(g, unpack(w), cap);
    return memo.emplace(w, std::make_pair(pack(r.element.canonical), r.min_rep))
        .first->second;
  }
};

Poset enumerate_truncated(const BwGraph& g, int max_length, std::uint64_t cap) {
  ReduceCache rc{g, cap, {}};
  std::vector<std::vector<std::string>> levels{{""}};
  bool complete = false;
  for (int l = 0; l < max_length; ++l) {
    std::set<std::string> next;
    for (const std::string& x : levels[l]) {
      for (Gen s = 0; s < g.size(); ++s) {
        const char c = static_cast<char>(s);
        for (const std::string& cand : {c + x, x + c}) {
          const auto& [canon, min_rep] = rc.reduce1(cand);
          if (static_cast<int>(canon.size()) == l + 1 && min_rep)
            next.insert(canon);
        }
      }
    }
    if (next.empty()) {
      complete = true;
      break;
    }
    levels.emplace_back(next.begin(), next.end());
  }

  std::vector<std::string> flat;
  std::vector<int> rank;
  std::unordered_map<std::string, int> index;
  for (size_t l = 0; l < levels.size(); ++l)
    for (const auto& w : levels[l]) {
      index[w] = static_cast<int>(flat.size());
      flat.push_back(w);
      rank.push_back(static_cast<int>(l));
    }
  std::set<std::pair<int, int>> covers;
  for (size_t i = 0; i < flat.size(); ++i) {
    const std::string& w = flat[i];
    for (size_t k = 0; k < w.size(); ++k) {
      std::string v = w;
      v.erase(k, 1);
      const auto& [canon, min_rep] = rc.reduce1(v);
      if (canon.size() != w.size() - 1 || !min_rep) continue;
      auto it = index.find(canon);
      if (it == index.end())
        throw ConsistencyError("cover target missing from enumeration");
      covers.insert({it->second, static_cast<int>(i)});
    }
  }
  return finish_poset(g, std::move(flat), std::move(rank),
                      {covers.begin(), covers.end()}, complete, max_length);
}

}  // namespace

Poset enumerate_quotient(const BwGraph& g, int max_length, std::uint64_t cap) {
  if (g.size() == 0) throw ParseError("enumerate: empty generator set");
  if (max_length < 0) throw ParseError("enumerate: negative max length");
  if (auto order = group_order(g)) {
    // group_order treats an empty subset as the full generator set, so the
    // all-black case (J empty, the quotient is the whole group) is special.
    const auto white = g.white_gens();
    const unsigned long long sub_order =
        white.empty() ? 1 : *group_order(g, white);
    const unsigned long long index = *order / sub_order;
    if (index <= kDirectIndexCap) return enumerate_finite(g, index, max_length);
  }
  return enumerate_truncated(g, max_length, cap);
}

// ---------------------------------------------------------------------------
// JSON

std::string save_poset_json(const Poset& p) {
  nlohmann::ordered_json j;
  j["levels"] = nlohmann::ordered_json::array();
  for (int l = 0; l < p.num_levels(); ++l) {
    auto [a, b] = p.level_range(l);
    nlohmann::ordered_json level = nlohmann::ordered_json::array();
    for (int i = a; i < b; ++i) level.push_back(p.labels[i]);
    j["levels"].push_back(std::move(level));
  }
  j["covers"] = nlohmann::ordered_json::array();
  for (auto [lo, hi] : p.covers) j["covers"].push_back({lo, hi});
  j["complete"] = p.complete;
  j["maxLength"] = p.max_length;
  if (p.graph) j["graph"] = format_bw_graph(*p.graph);
  return j.dump(2) + "\n";
}

Poset load_poset_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("poset: invalid JSON: ") + e.what());
  }
  Poset p;
  try {
    if (!j.at("levels").is_array() || j["levels"].empty())
      throw ParseError("poset: levels must be a non-empty array");
    int l = 0;
    for (const auto& level : j["levels"]) {
      if (!level.is_array() || level.empty())
        throw ParseError("poset: empty level " + std::to_string(l));
      for (const auto& label : level) {
        p.labels.push_back(label.get<std::string>());
        p.rank.push_back(l);
      }
      ++l;
    }
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2)
        throw ParseError("poset: covers must be [lower, upper] pairs");
      p.covers.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    p.complete = j.at("complete").get<bool>();
    p.max_length = j.at("maxLength").get<int>();
    if (j.contains("graph")) {
      p.graph = parse_bw_graph(j["graph"].get<std::string>());
      for (int i = 0; i < p.size(); ++i) {
        Word w = parse_word(*p.graph, p.labels[i]);
        if (static_cast<int>(w.size()) != p.rank[i])
          throw ParseError("poset: word length disagrees with level: " +
                           p.labels[i]);
        p.words.push_back(std::move(w));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("poset: schema error: ") + e.what());
  }
  try {
    p.finalize();
    poset_length(p);
  } catch (const ConsistencyError& e) {
    throw ParseError(std::string("poset: ") + e.what());
  }
  return p;
}

Poset product_poset(const Poset& a, const Poset& b, int max_length) {
  struct Item {
    int ia, ib, rank;
    std::string label;
  };
  std::vector<Item> items;
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < b.size(); ++k) {
      int r = a.rank[i] + b.rank[k];
      if (r > max_length) continue;
      items.push_back({i, k, r, a.labels[i] + "|" + b.labels[k]});
    }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return x.rank != y.rank ? x.rank < y.rank : x.label < y.label;
  });
  std::map<std::pair<int, int>, int> index;
  Poset p;
  for (size_t i = 0; i < items.size(); ++i) {
    index[{items[i].ia, items[i].ib}] = static_cast<int>(i);
    p.labels.push_back(items[i].label);
    p.rank.push_back(items[i].rank);
  }
  for (size_t i = 0; i < items.size(); ++i) {
    for (int ua : a.ups(items[i].ia)) {
      auto it = index.find({ua, items[i].ib});
      if (it != index.end()) p.covers.emplace_back(static_cast<int>(i), it->second);
    }
    for (int ub : b.ups(items[i].ib)) {
      auto it = index.find({items[i].ia, ub});
      if (it != index.end()) p.covers.emplace_back(static_cast<int>(i), it->second);
    }
  }
  std::sort(p.covers.begin(), p.covers.end(),
            [](auto x, auto y) { return x.second != y.second ? x.second < y.second : x.first < y.first; });
  p.max_length = max_length;
  p.complete = a.complete && b.complete && a.top_rank() + b.top_rank() <= max_length;
  p.finalize();
  return p;
}

}  // namespace coxq
