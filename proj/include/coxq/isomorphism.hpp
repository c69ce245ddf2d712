// Poset isomorphism search, poset automorphisms, the explicit classified
// bijections between quotient families, and the verdict table for pairs of
// bw-Coxeter graphs.

#ifndef COXQ_ISOMORPHISM_HPP_
#define COXQ_ISOMORPHISM_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxq/coxeter.hpp"
#include "coxq/poset.hpp"

namespace coxq {

inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

// Level-preserving, cover-preserving bijection p -> q (element indices), or
// nullopt.  Requires equal completeness flags and, when truncated, equal
// maxLength; the verdict then only covers the enumerated levels.  Throws
// ResourceError when the search budget is exhausted.
std::optional<std::vector<int>> are_isomorphic(
    const Poset& p, const Poset& q,
    std::uint64_t budget = kDefaultSearchBudget);

struct Automorphism {
  std::vector<int> map;
  bool moves_chainlike = false;
};

struct AutomorphismSet {
  std::vector<Automorphism> all;  // includes the identity
  bool search_complete = true;    // false when the budget cut the search
};

AutomorphismSet find_automorphisms(const Poset& p,
                                   std::uint64_t budget = kDefaultSearchBudget);

// Labeled colored graph isomorphism (exact bond and color equality).
bool graphs_isomorphic(const BwGraph& a, const BwGraph& b);

// ---------------------------------------------------------------------------
// Verdict table for a pair of bw-Coxeter graphs.

struct Verdict {
  // One of: I2n-A, Bn-A2n, Bn-I2, BnA-DA, H3-D6, trivial, graph-isomorphic,
  // not-isomorphic.
  std::string case_name;
  std::map<std::string, long long> parameters;
  // Element index pairs (a, b), present when a finite verification ran.
  std::optional<std::vector<std::pair<int, int>>> witness;
  std::string scope = "complete";
  bool isomorphic() const { return case_name != "not-isomorphic"; }
};

// Pattern-matches the pair against the exceptional table; when both
// quotients are finite with at most `verify_cap` elements, additionally
// verifies the verdict with are_isomorphic and throws ConsistencyError on
// disagreement.
Verdict classify_pair(const BwGraph& a, const BwGraph& b,
                      std::uint64_t verify_cap = 5000);

// Descriptor key such that two connected bw-graphs have isomorphic quotient
// posets exactly when their keys are equal (exposed for tests).
std::string quotient_descriptor(const BwGraph& g);

// ---------------------------------------------------------------------------
// Explicit classified bijections.

struct ExplicitIso {
  Poset b;               // quotient of B_n, black node "1" (the 4-end)
  Poset d;               // quotient of D_{n+1}, black node "t0" (short leg)
  std::vector<int> map;  // index in b -> index in d, cover-preserving
};

// The block normal-form bijection B_n quotient -> D_{n+1} quotient (n >= 3):
// s_i -> t_i for i > 1, s_1 slots alternate t_1/t_0 from the right.
ExplicitIso explicit_iso_B_to_D(int n);

struct BasketAutomorphism {
  Poset p;               // the quotient truncated at `bound`
  std::vector<int> map;  // the automorphism phi (an involution)
  int k = 0;             // spine parameter: generators s_0..s_2k
};

// phi for a graph matching the basket-case template: a 3-bond spine
// s_0(black)..s_2k with infinite bonds s_{k-1}-s_k-s_{k+1}, plus optional
// extra white nodes infinity-bonded to both s_{k-1} and s_{k+1}.  phi fixes
// w when w is not above u'' = s_k..s_0 and otherwise swaps s_{k+j} with
// s_{k-j} left of the rightmost k letters.  Throws std::invalid_argument on
// template mismatch.
BasketAutomorphism basket_automorphism(const BwGraph& g, int bound);

}  // namespace coxq

#endif  // COXQ_ISOMORPHISM_HPP_
