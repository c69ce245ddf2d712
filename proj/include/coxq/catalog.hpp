// Constructors for the finite irreducible Coxeter graphs with a caller-chosen
// black subset.  Node names are "1".."n"; the conventions are:
//   A_n: path 1-2-..-n, all bonds 3.
//   B_n: path with bond 4 on the edge 1-2.
//   D_n: path 1-..-(n-1) plus node n bonded to n-2 (n >= 4).
//   E_n: path 1-..-(n-1) plus node n bonded to 3 (n in 6..8).
//   F_4: path with bond 4 on the edge 2-3.
//   H_n: path with bond 5 on the edge 1-2 (n in 2..4).
//   I_2(m): nodes 1,2 with bond m (m >= 3 or infinity).

#ifndef COXQ_CATALOG_HPP_
#define COXQ_CATALOG_HPP_

#include <string>
#include <vector>

#include "coxq/coxeter.hpp"

namespace coxq {

BwGraph make_A(int n, const std::vector<std::string>& black);
BwGraph make_B(int n, const std::vector<std::string>& black);
BwGraph make_D(int n, const std::vector<std::string>& black);
BwGraph make_E(int n, const std::vector<std::string>& black);
BwGraph make_F4(const std::vector<std::string>& black);
BwGraph make_H(int n, const std::vector<std::string>& black);
BwGraph make_I2(int m, const std::vector<std::string>& black);

}  // namespace coxq

#endif  // COXQ_CATALOG_HPP_
