// DOT renderings: Coxeter graphs (black nodes filled, labels on bonds >= 4)
// and quotient posets as Hasse diagrams ranked by length.

#ifndef COXQ_DOT_HPP_
#define COXQ_DOT_HPP_

#include <string>

#include "coxq/coxeter.hpp"
#include "coxq/poset.hpp"

namespace coxq {

std::string graph_dot(const BwGraph& g);
std::string poset_dot(const Poset& p);

}  // namespace coxq

#endif  // COXQ_DOT_HPP_
