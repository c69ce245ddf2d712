// Core types for Coxeter systems with a black/white generator partition:
// the Coxeter matrix, words in the generators, braid-closure based word
// reduction, and the minimal-coset-representative test.
//
// Conventions used throughout the library:
//  * Generators are identified by 0-based ids in the order they were
//    declared; canonical words are lexicographically least reduced words
//    under that id order.
//  * Bond values m(s,t) are >= 2 for s != t (m == 2 means "no edge"),
//    m(s,s) == 1, and kInfiniteBond encodes m(s,t) = infinity.
//  * White generators form the parabolic subset J; black generators are
//    S \ J and are the atoms of the quotient poset W^J.

#ifndef COXQ_COXETER_HPP_
#define COXQ_COXETER_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coxq {

// ---------------------------------------------------------------------------
// Error taxonomy (mapped to process exit codes by the CLI).

// Malformed input text / JSON.  CLI exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource cap (closure cap, coset cap, search budget) was
// exceeded.  CLI exit code 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed; indicates a bug or corrupted input that
// passed surface validation.  CLI exit code 4.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------

using Gen = int;                    // generator id, 0-based
using Word = std::vector<Gen>;      // word in the generators; {} = identity

inline constexpr int kInfiniteBond = std::numeric_limits<int>::max();

// Default cap on the number of words visited in one braid-closure BFS.
inline constexpr std::uint64_t kDefaultClosureCap = 2'000'000;

// A Coxeter graph whose nodes are partitioned into black (S \ J) and white
// (J) generators.  Stores the full Coxeter matrix.
class BwGraph {
 public:
  BwGraph() = default;
  explicit BwGraph(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Gen g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Gen> find(std::string_view name) const;

  int bond(Gen a, Gen b) const { return m_[a * size() + b]; }
  void set_bond(Gen a, Gen b, int m);

  bool black(Gen g) const { return black_[g] != 0; }
  void set_black(Gen g, bool b) { black_[g] = b ? 1 : 0; }

  std::vector<Gen> black_gens() const;
  std::vector<Gen> white_gens() const;  // the parabolic subset J
  bool any_black() const;

  bool operator==(const BwGraph&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> m_;       // row-major Coxeter matrix
  std::vector<char> black_;
};

// Subgraph of g induced by the given generators (order preserved).
BwGraph induced_subgraph(const BwGraph& g, const std::vector<Gen>& gens);

// Parses the plain-text graph format:
//
//   nodes: a b c
//   black: c
//   edges:
//   a b 3
//   b c inf
//
// '#' starts a comment.  Pairs without an edge line have m = 2.  Labels are
// integers >= 3 or "inf".  Throws ParseError on malformed input.
BwGraph parse_bw_graph(std::string_view text);

// Inverse of parse_bw_graph (canonical field order, one edge per line).
std::string format_bw_graph(const BwGraph& g);

// Renders a word using node names: concatenated when every node name is a
// single character, otherwise '.'-separated.  The identity is "".
std::string format_word(const BwGraph& g, const Word& w);

// Parses the output of format_word.  Throws ParseError on unknown names.
Word parse_word(const BwGraph& g, std::string_view text);

// ---------------------------------------------------------------------------
// Braid-closure machinery.
//
// Two words are connected by a braid move when an alternating segment
// s t s t ... of length m(s,t) (finite) is replaced by t s t s ....  The
// Word Property guarantees that the reduced words of an element form a
// single braid-move class, and that a non-reduced word can always reach a
// word with an adjacent equal pair (a nil move) by braid moves alone.

// All words reachable from `w` by braid moves, sorted lexicographically.
// Throws ResourceError when more than `cap` words are visited.
std::vector<Word> braid_closure(const BwGraph& g, const Word& w,
                                std::uint64_t cap = kDefaultClosureCap);

// A group element, represented by its canonical (lex-least reduced) word.
struct Element {
  Word canonical;
  int length() const { return static_cast<int>(canonical.size()); }
  bool operator==(const Element&) const = default;
};

// Reduces a word by interleaving braid moves and nil moves (deleting an
// adjacent equal pair), returning the canonical representative.
Element reduce(const BwGraph& g, const Word& w,
               std::uint64_t cap = kDefaultClosureCap);

// reduce(s . w).
Element multiply_left(const BwGraph& g, Gen s, const Element& w,
                      std::uint64_t cap = kDefaultClosureCap);

// True when no reduced word of `w` ends with a white generator, i.e. `w` is
// the minimal-length representative of its coset w * W_J.  Implemented by
// inspecting the full braid closure.
bool is_min_coset_rep(const BwGraph& g, const Element& w,
                      std::uint64_t cap = kDefaultClosureCap);

// One-pass variant used by the enumeration code: reduces `w` and reports
// the minimal-representative flag computed from the same closure run.
struct ReducedInfo {
  Element element;
  bool min_rep = false;
};
ReducedInfo reduce_with_coset_info(const BwGraph& g, const Word& w,
                                   std::uint64_t cap = kDefaultClosureCap);

}  // namespace coxq

#endif  // COXQ_COXETER_HPP_
