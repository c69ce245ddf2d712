// Graded Bruhat posets of parabolic quotients W^J, their enumeration, cover
// relations, and the JSON file format.
//
// Elements are indexed globally, level by level (level = Coxeter length),
// and within a level in lexicographic order of canonical words.  A poset
// may be "bare" (loaded from a file without the originating graph); all
// order-theoretic computations work on bare posets, while word-model
// operations require the graph.

#ifndef COXQ_POSET_HPP_
#define COXQ_POSET_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxq/coxeter.hpp"

namespace coxq {

inline constexpr int kDefaultMaxLength = 14;

class Poset {
 public:
  // --- data (filled by builders / load_poset_json; finalize() validates) ---
  std::vector<std::string> labels;           // canonical word per element
  std::vector<int> rank;                     // Coxeter length per element
  std::vector<std::pair<int, int>> covers;   // (lower, upper) element indices
  bool complete = false;
  int max_length = 0;
  std::optional<BwGraph> graph;
  std::vector<Word> words;                   // parallel to labels when graph set

  // Validates grading and builds the adjacency lists; throws ParseError /
  // ConsistencyError on malformed data.  Must be called after construction.
  void finalize();

  int size() const { return static_cast<int>(labels.size()); }
  int top_rank() const { return labels.empty() ? -1 : rank.back(); }
  int num_levels() const { return top_rank() + 1; }
  const std::vector<int>& ups(int v) const { return up_[v]; }
  const std::vector<int>& downs(int v) const { return down_[v]; }
  // Half-open index range [first, last) of elements of length l.
  std::pair<int, int> level_range(int l) const;
  std::optional<int> find_label(const std::string& label) const;

  // True when every element above `v` is known, i.e. the poset is complete
  // or rank(v) < max_length.  Upward structure at the truncation boundary
  // is unknown.
  bool ups_complete(int v) const {
    return complete || rank[v] < max_length;
  }

 private:
  std::vector<std::vector<int>> up_, down_;
  std::vector<int> level_first_;  // level_first_[l] = index of first element
};

// Enumerates the quotient poset W^J for the given bw-graph (J = white
// generators), graded by length, truncated at `max_length`.
//
// Recognized finite systems are enumerated exactly via coset enumeration on
// W_J\W; all other systems are enumerated level by level with braid-closure
// reduction (and are truncated, with complete=false, unless a level turns
// out empty).  Throws ResourceError when a cap is exceeded.
Poset enumerate_quotient(const BwGraph& g, int max_length = kDefaultMaxLength,
                         std::uint64_t closure_cap = kDefaultClosureCap);

// Length of the longest chain; verified against the grading.
int poset_length(const Poset& p);

// JSON serialization (deterministic byte-for-byte output).
std::string save_poset_json(const Poset& p);
Poset load_poset_json(std::string_view text);

// Graded product of two posets, truncated at `max_length`; element labels
// are "<a>|<b>".
Poset product_poset(const Poset& a, const Poset& b, int max_length);

}  // namespace coxq

#endif  // COXQ_POSET_HPP_
