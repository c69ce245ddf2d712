// Recognition of finite Coxeter systems: matches each connected component of
// a Coxeter graph against the finite catalog (A_n, B_n, D_n, E6/E7/E8, F4,
// H3, H4, I2(m)) and reports group orders.

#ifndef COXQ_RECOGNIZE_HPP_
#define COXQ_RECOGNIZE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "coxq/coxeter.hpp"

namespace coxq {

enum class Family { A, B, D, E, F, H, I2 };

struct ComponentType {
  Family family;
  int rank;                 // number of generators (E: 6/7/8, F: 4, H: 3/4)
  int m = 0;                // bond label for I2(m)
  std::vector<Gen> gens;    // generators of the component, ascending
  std::string to_string() const;
};

// Classifies the connected components of the subgraph induced by `subset`
// (all generators when empty).  Returns nullopt when any component is not of
// finite type.
std::optional<std::vector<ComponentType>> recognize_finite(
    const BwGraph& g, const std::vector<Gen>& subset = {});

// |W| for a finite component; throws ResourceError when the order does not
// fit in unsigned long long (never happens for the catalog at sane ranks).
unsigned long long component_order(const ComponentType& t);

// Product of component orders.  nullopt when not finite.
std::optional<unsigned long long> group_order(const BwGraph& g,
                                              const std::vector<Gen>& subset = {});

// Connected components (as sorted generator lists) of the subgraph induced
// by `subset` (edges = bonds >= 3).
std::vector<std::vector<Gen>> graph_components(const BwGraph& g,
                                               const std::vector<Gen>& subset);

}  // namespace coxq

#endif  // COXQ_RECOGNIZE_HPP_
