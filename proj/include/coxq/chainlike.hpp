// Chainlike elements of a quotient poset and the order-theoretic invariants
// built on them: the three chainlike forms, minimal common upper bounds (L
// and X), the equivalence u ~ v, the two M functions, the N chase, detector
// pairs, and baskets.
//
// All routines work on the bare cover structure except the form classifier,
// which needs the word model (poset.graph).  Values that can be cut off by a
// truncated enumeration are reported as BoundVal with an explicit status.

#ifndef COXQ_CHAINLIKE_HPP_
#define COXQ_CHAINLIKE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxq/poset.hpp"

namespace coxq {

struct BoundVal {
  enum class Status { Exact, AtLeast, Unknown };
  Status status = Status::Unknown;
  long long value = 0;

  static BoundVal exact(long long v) { return {Status::Exact, v}; }
  static BoundVal at_least(long long v) { return {Status::AtLeast, v}; }
  static BoundVal unknown() { return {}; }
  bool exact_eq(long long v) const {
    return status == Status::Exact && value == v;
  }
  // True when the value is known to be >= v (exact or lower bound).
  bool at_least_ge(long long v) const {
    return status != Status::Unknown && value >= v;
  }
  std::string to_string() const;
  bool operator==(const BoundVal&) const = default;
};

enum class Form { I, II, III };
std::string form_name(Form f);

struct FormInfo {
  Form form = Form::I;
  std::vector<Gen> base;  // the underlying simple word s_k .. s_0
  int l = -1;             // form II: index of the leading generator s_l
  int m = 0;              // form III: length of the alternating block
};

struct DetectResult {
  bool known = false;    // false when truncation hides the answer
  bool detects = false;
  int branching = -1;              // element of X(u', x) covered twice
  std::pair<int, int> branch_pair{-1, -1};  // its two covers inside X(u, x)
};

struct Basket {
  int u = -1, v = -1;  // chainlike elements with u'' = v'', mutual detection
};

class Analyzer {
 public:
  explicit Analyzer(const Poset& p);

  const Poset& poset() const { return *p_; }

  bool leq(int u, int v) const;  // Bruhat order (reflexive)
  bool is_chainlike(int v) const { return chain_flag_[v]; }
  bool is_semi_chainlike(int v) const { return v != 0 && p_->downs(v).size() == 1; }
  const std::vector<int>& chainlikes() const { return chainlikes_; }
  // Unique lower cover of a semi-chainlike element; -1 for the identity.
  int parent(int v) const { return v == 0 ? -1 : p_->downs(v)[0]; }
  // The unique atom below a chainlike element.
  int atom_of(int v) const;

  // Minimal length of a common upper bound, and the set X of common upper
  // bounds of that length.  Unknown when truncation hides every bound.
  BoundVal L(int u, int v) const;
  std::vector<int> min_upper_bounds(int u, int v) const;

  // u ~ v:  L(u,v) = L(u',v) = L(u,v').  nullopt under truncation.
  std::optional<bool> sim(int u, int v) const;

  // Shared-parent M: M_1 = {u,v}, M_i = common covers of M_{i-1}, value =
  // first i >= 2 with a singleton M_i.  Requires parent(u) == parent(v).
  BoundVal M_shared_parent(int u, int v) const;

  // Is u detected by x?  Requires u, x chainlike, x' < u', and x not< u.
  DetectResult detects(int u, int x) const;

  // Detector M: 2 when x does not detect u, otherwise the shared-cover
  // iteration seeded with the branch pair.
  BoundVal M_detector(int u, int x) const;

  // N chase: N_0 = the unique common cover of u and v (requires
  // parent(u) == parent(v) and M(u,v) = 2); N_i = semi-chainlike elements
  // whose parent lies in N_{i-1}; value = first i with N_i empty.
  BoundVal N(int u, int v) const;

  std::vector<Basket> find_baskets() const;

  // ---- word model (requires poset.graph) ----
  Gen leftmost(int v) const;
  std::optional<FormInfo> classify_form(int v) const;
  std::map<int, Form> classify_all_forms() const;  // throws on unclassifiable

 private:
  std::vector<int> common_covers(const std::vector<int>& xs) const;
  BoundVal m_iteration(std::vector<int> cur, int i) const;

  const Poset* p_;
  std::vector<char> chain_flag_;
  std::vector<int> chainlikes_;
  // Lower-set bitmap: below_[v * stride_ + (u >> 6)] bit (u & 63).
  std::vector<std::uint64_t> below_;
  size_t stride_ = 0;
};

}  // namespace coxq

#endif  // COXQ_CHAINLIKE_HPP_
