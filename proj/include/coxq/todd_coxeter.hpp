// Todd-Coxeter coset enumeration for Coxeter presentations, specialized to
// involutive generators.  Enumerates the right cosets of the standard
// parabolic subgroup generated by `subgroup_gens`; the result is the
// Schreier graph of the coset action, used to build finite quotient posets
// without materializing braid closures of long words.

#ifndef COXQ_TODD_COXETER_HPP_
#define COXQ_TODD_COXETER_HPP_

#include <cstdint>
#include <vector>

#include "coxq/coxeter.hpp"

namespace coxq {

struct CosetTable {
  int ngens = 0;
  // action[c * ngens + s] = coset reached from c by generator s.
  std::vector<int> action;
  int size() const { return static_cast<int>(action.size()) / ngens; }
  int act(int coset, Gen s) const { return action[coset * ngens + s]; }
};

// Runs coset enumeration; throws ResourceError when more than `max_cosets`
// cosets would be defined (the index is infinite or the cap is too small).
CosetTable enumerate_cosets(const BwGraph& g, const std::vector<Gen>& subgroup_gens,
                            std::uint64_t max_cosets);

}  // namespace coxq

#endif  // COXQ_TODD_COXETER_HPP_
