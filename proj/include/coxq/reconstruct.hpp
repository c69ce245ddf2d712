// Rebuilding the black-white Coxeter graph from a bare quotient poset, and
// splitting reducible quotients into factor subposets.
//
// The reconstruction walks the chainlike skeleton: nodes are ~-classes of
// simple (form I) chainlikes, edges come from parent crossings and from the
// M iteration, and labels >= 4 come from M or from counting the form-III
// tower above a form-II element.  On truncated posets labels degrade to
// honest lower bounds instead of guesses.

#ifndef COXQ_RECONSTRUCT_HPP_
#define COXQ_RECONSTRUCT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxq/chainlike.hpp"
#include "coxq/poset.hpp"

namespace coxq {

struct Reconstruction {
  // Nodes are named "c0", "c1", ... in order of the smallest element id of
  // the backing equivalence class.
  std::vector<std::string> names;
  std::vector<char> black;
  // Row-major bond matrix; Exact(2) means no edge, AtLeast(k) a
  // truncation-limited lower bound.
  std::vector<BoundVal> bonds;
  std::map<int, int> class_of;  // chainlike element -> node index
  std::vector<std::string> caveats;

  size_t size() const { return names.size(); }
  BoundVal bond(int i, int j) const { return bonds[i * size() + j]; }

  // Exact graph; nullopt when any bond is only a lower bound.
  std::optional<BwGraph> to_graph() const;
  std::string to_text() const;  // same layout as format_bw_graph, ">=k" allowed
  std::string to_dot() const;
};

// Construction for simply-laced systems: every chainlike is simple.
Reconstruction reconstruct_simply_laced(const Poset& p);

// General construction; `forms` must cover every chainlike element.
Reconstruction reconstruct(const Poset& p, const std::map<int, Form>& forms);

struct BlindResolution {
  std::vector<std::map<int, Form>> assignments;  // all verified candidates
  bool exceptional = false;                      // more than one candidate
};

// Enumerate form assignments consistent with the chainlike forest, keep
// those whose reconstructed graph regenerates a poset isomorphic to p.
BlindResolution resolve_forms_blind(const Poset& p);

struct Decomposition {
  std::vector<std::vector<int>> atom_components;  // element ids, per factor
  std::vector<Poset> factors;                     // same order as components
  int trivial_count = 0;  // all-white graph components (graph input only)
};

Decomposition decompose(const Poset& p);

}  // namespace coxq

#endif  // COXQ_RECONSTRUCT_HPP_
